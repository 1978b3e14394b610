#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "geoproof/error.hpp"
#include "geoproof/formula.hpp"

using namespace geoproof;
using namespace geoproof::formula;

namespace {

Atom atom(const std::string& pred, const std::vector<std::string>& args) {
    Atom a;
    a.predicate = pred;
    for (const auto& name : args)
        a.args.push_back(is_variable_name(name) ? Term::var(name) : Term::constant(name));
    return a;
}

} // namespace

TEST_CASE("apply_substitution instantiates variables") {
    Substitution s;
    s.bindings["X"] = "a";
    CHECK(apply_substitution(atom("p", {"X"}), s) == atom("p", {"a"}));

    // identity on ground atoms
    CHECK(apply_substitution(atom("q", {"c"}), Substitution{}) == atom("q", {"c"}));

    Substitution abc;
    abc.bindings = {{"A", "a"}, {"B", "b"}, {"C", "c"}};
    CHECK(apply_substitution(atom("betS", {"A", "C", "B"}), abc) == atom("betS", {"a", "c", "b"}));
}

TEST_CASE("apply_substitution rejects unbound variables") {
    Substitution s;
    s.bindings["X"] = "a";
    CHECK_THROWS_AS(apply_substitution(atom("p", {"X", "Y"}), s), UnboundVariableError);
}

TEST_CASE("apply_substitution composes for disjoint domains") {
    std::mt19937 rng(7);
    const std::vector<std::string> vars = {"X", "Y", "Z", "W"};
    const std::vector<std::string> consts = {"a", "b", "c", "d"};
    for (int round = 0; round < 200; ++round) {
        Substitution s1, s2, combined;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            std::string value = consts[rng() % consts.size()];
            if (i < 2)
                s1.bindings[vars[i]] = value;
            else
                s2.bindings[vars[i]] = value;
            combined.bindings[vars[i]] = value;
        }
        Atom a;
        a.predicate = "p";
        for (int k = 0; k < 3; ++k) a.args.push_back(Term::var(vars[rng() % vars.size()]));

        Atom once = apply_substitution(a, combined);
        Atom lhs = a;
        for (Term& t : lhs.args) // apply s1 where bound, then s2
            if (t.is_var() && s1.bindings.count(t.name))
                t = Term::constant(s1.bindings.at(t.name));
        CHECK(apply_substitution(lhs, s2) == once);
    }
}

TEST_CASE("free_variables in first-occurrence order") {
    CHECK(free_variables(atom("betS", {"A", "C", "B"})) ==
          std::vector<std::string>{"A", "C", "B"});
    CHECK(free_variables(atom("p", {"a"})).empty());

    // the lemma_extension shape: premises then conclusion
    CoherentFormula f;
    f.name = "lemma_extension";
    f.universals = {"A", "B", "P", "Q"};
    f.existentials = {"X"};
    f.premises = {atom("neq", {"A", "B"}), atom("neq", {"P", "Q"})};
    Conjunction d;
    d.atoms = {atom("betS", {"A", "B", "X"}), atom("cong", {"B", "X", "P", "Q"})};
    f.disjuncts = {d};
    CHECK(free_variables(f) == std::vector<std::string>{"A", "B", "P", "Q", "X"});
}

TEST_CASE("rename_apart avoids the given names deterministically") {
    CoherentFormula f;
    f.name = "t";
    f.universals = {"X"};
    f.premises = {atom("p", {"X"})};
    f.disjuncts = {Conjunction{{atom("r", {"X"})}}};

    CoherentFormula renamed = rename_apart(f, {"X"});
    CHECK(renamed.universals == std::vector<std::string>{"X1"});
    CHECK(renamed.premises[0] == atom("p", {"X1"}));
    CHECK(renamed.disjuncts[0].atoms[0] == atom("r", {"X1"}));

    CHECK(rename_apart(f, {}) == f);

    // successive renames against cumulative names stay disjoint
    std::set<std::string> avoid = {"X"};
    CoherentFormula r1 = rename_apart(f, avoid);
    for (const auto& v : r1.universals) avoid.insert(v);
    CoherentFormula r2 = rename_apart(f, avoid);
    for (const auto& v : r2.universals) CHECK(r1.universals[0] != v);
}

TEST_CASE("signature declares eq/neq as complementary") {
    Signature sig;
    CHECK(sig.declared("eq"));
    CHECK(sig.declared("neq"));
    CHECK(sig.complement_of("eq") == "neq");
    CHECK(sig.complement_of("neq") == "eq");
    CHECK(sig.is_complement_pair("eq", "neq"));

    sig.declare("col", 3);
    sig.declare("ncol", 3);
    sig.register_complement("col", "ncol");
    CHECK(sig.complement_of("ncol") == "col");

    sig.declare("per", 3);
    CHECK_THROWS_AS(sig.declare("per", 2), NotCoherentError);
}

TEST_CASE("validate enforces the coherent-formula invariants") {
    CoherentFormula f;
    f.name = "bad";
    f.universals = {"A"};
    f.premises = {atom("p", {"B"})}; // B is not quantified
    CHECK_THROWS_AS(validate(f), NotCoherentError);

    CoherentFormula dup;
    dup.name = "dup";
    dup.universals = {"A", "A"};
    CHECK_THROWS_AS(validate(dup), NotCoherentError);

    CoherentFormula clash;
    clash.name = "clash";
    clash.universals = {"A"};
    clash.existentials = {"A"};
    CHECK_THROWS_AS(validate(clash), NotCoherentError);
}

TEST_CASE("theory rejects duplicate axiom names") {
    Theory t;
    CoherentFormula f;
    f.name = "ax";
    f.disjuncts = {Conjunction{{atom("p", {"a"})}}};
    t.add_axiom(f);
    CHECK_THROWS_AS(t.add_axiom(f), NotCoherentError);
    CHECK(t.find_axiom("ax") != nullptr);
    CHECK(t.origin("ax") == AxiomOrigin::User);
}

TEST_CASE("plain text rendering uses infix eq/neq") {
    CHECK(to_string(atom("eq", {"w1", "c"})) == "w1 = c");
    CHECK(to_string(atom("neq", {"w1", "c"})) == "w1 != c");
    CHECK(to_string(atom("betS", {"a", "c", "b"})) == "betS(a, c, b)");
}
