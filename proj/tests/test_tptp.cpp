#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "geoproof/error.hpp"
#include "geoproof/tptp.hpp"
#include "test_support.hpp"

using namespace geoproof;
using namespace geoproof::tptp;
using formula::Atom;
using formula::CoherentFormula;
using formula::Signature;
using formula::Term;

namespace {

AnnotatedFormula parse_one(const std::string& text) {
    auto entries = parse_tptp(text);
    REQUIRE(entries.size() == 1);
    return entries[0];
}

CoherentFormula coherentize_one(const std::string& text, Signature& sig) {
    auto out = coherentize(parse_one(text), sig);
    REQUIRE(out.size() == 1);
    return out[0];
}

} // namespace

TEST_CASE("parses the proposition 11 listing: 19 axioms plus the conjecture") {
    auto entries = parse_tptp(testutil::read_fixture("euclid_i11.tptp"));
    REQUIRE(entries.size() == 20);
    int axioms = 0, conjectures = 0;
    for (const auto& e : entries) (e.role == Role::Axiom ? axioms : conjectures)++;
    CHECK(axioms == 19);
    CHECK(conjectures == 1);
    CHECK(entries.front().name == "lemma_betweennotequal");
    CHECK(entries[1].name == "lemma_extension");
    CHECK(entries.back().name == "proposition_11");
    CHECK(entries.back().role == Role::Conjecture);
}

TEST_CASE("parses a minimal axiom") {
    auto f = parse_one("fof(a,axiom,(! [X] : (p(X) => r(X)))).");
    CHECK(f.name == "a");
    CHECK(f.role == Role::Axiom);
    CHECK(f.body->kind == FofNode::Kind::Forall);
    CHECK(f.body->children[0]->kind == FofNode::Kind::Implies);
}

TEST_CASE("rejects compound terms") {
    CHECK_THROWS_AS(parse_tptp("fof(a,axiom,(p(f(X))))."), FunctionSymbolsError);
    CHECK_THROWS_AS(parse_tptp("fof(a,axiom,(f(X) = Y))."), FunctionSymbolsError);
}

TEST_CASE("rejects unsupported roles and syntax errors") {
    CHECK_THROWS_AS(parse_tptp("fof(a,hypothesis,(p(X)))."), UnsupportedRoleError);
    try {
        parse_tptp("fof(a,axiom,\n  (p(X) &)).");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column > 1);
    }
}

TEST_CASE("comments and whitespace are ignored") {
    auto entries = parse_tptp("% leading comment\nfof(a, axiom, % inline\n (p(c))).\n% trailing");
    CHECK(entries.size() == 1);
}

TEST_CASE("coherentize hoists the mis-scoped existential of lemma_extension") {
    Signature sig;
    auto f = coherentize_one(
        "fof(lemma_extension,axiom, (! [A,B,P,Q] : (? [X] : (((A != B) & (P != Q)) => "
        "(betS(A,B,X) & cong(B,X,P,Q)))))).",
        sig);
    CHECK(f.universals == std::vector<std::string>{"A", "B", "P", "Q"});
    CHECK(f.existentials == std::vector<std::string>{"X"});
    REQUIRE(f.premises.size() == 2);
    CHECK(f.premises[0].predicate == "neq");
    CHECK(f.premises[1].predicate == "neq");
    REQUIRE(f.disjuncts.size() == 1);
    CHECK(f.disjuncts[0].atoms.size() == 2);
    CHECK(f.disjuncts[0].atoms[0].predicate == "betS");
}

TEST_CASE("coherentize pushes negation to a complement predicate") {
    Signature sig;
    sig.declare("col", 3); // as the fixture's file order would have established
    auto f = coherentize_one(
        "fof(deftriangle,axiom,(! [A,B,C] : (triangle(A,B,C) => (~(col(A,B,C)))))).", sig);
    REQUIRE(f.disjuncts.size() == 1);
    CHECK(f.disjuncts[0].atoms[0].predicate == "ncol");
    CHECK(sig.complement_of("col") == "ncol");
    CHECK(sig.complement_of("ncol") == "col");
    CHECK(sig.arity("ncol") == 3);
}

TEST_CASE("coherentize turns defcollinear into six single-atom disjuncts") {
    Signature sig;
    auto f = coherentize_one(
        "fof(defcollinear,axiom,(! [A,B,C] : (col(A,B,C) => ((A = B) | (A = C) | (B = C) | "
        "betS(B,A,C) | betS(A,B,C) | betS(A,C,B))))).",
        sig);
    REQUIRE(f.disjuncts.size() == 6);
    for (const auto& d : f.disjuncts) CHECK(d.atoms.size() == 1);
    CHECK(f.disjuncts[0].atoms[0].predicate == "eq");
    CHECK(f.disjuncts[3].atoms[0].predicate == "betS");
}

TEST_CASE("coherentize rejects non-coherent shapes") {
    Signature sig;
    CHECK_THROWS_AS(
        coherentize(parse_one("fof(a,axiom,(! [X] : (p(X) => (q(X) => r(X))))).") , sig),
        NotCoherentError); // nested implication
    CHECK_THROWS_AS(
        coherentize(parse_one("fof(a,axiom,(! [X] : ((p(X) | q(X)) => r(X)))).") , sig),
        NotCoherentError); // premise disjunction
    CHECK_THROWS_AS(
        coherentize(parse_one("fof(a,axiom,(~(! [X] : (p(X))))).") , sig),
        NotCoherentError); // negation over a quantifier
    CHECK_THROWS_AS(
        coherentize(parse_one("fof(a,axiom,(! [A,B] : (? [X] : (p(X) => q(A,B))))).") , sig),
        NotCoherentError); // hoisted existential used in the premise
}

TEST_CASE("neq is a first-class premise atom") {
    Signature sig;
    auto f = coherentize_one("fof(a,axiom,(! [A,B] : ((A != B) => p(A,B)))).", sig);
    REQUIRE(f.premises.size() == 1);
    CHECK(f.premises[0].predicate == "neq");
}

TEST_CASE("support axioms for the bare signature are exactly the equality kit") {
    Signature sig;
    auto axioms = generate_support_axioms(sig, SupportAxiomOptions{});
    std::set<std::string> names;
    for (const auto& ax : axioms) names.insert(ax.name);
    CHECK(names == std::set<std::string>{"eq_reflexive", "eq_symmetric", "neq_symmetric",
                                         "eq_neg_contradiction", "eq_excluded_middle"});
}

TEST_CASE("support axioms include eqsub per predicate and position") {
    Signature sig;
    sig.declare("col", 3);
    auto axioms = generate_support_axioms(sig, SupportAxiomOptions{});
    const CoherentFormula* eqsub3 = nullptr;
    for (const auto& ax : axioms)
        if (ax.name == "col_eqsub_3") eqsub3 = &ax;
    REQUIRE(eqsub3 != nullptr);
    // col(A,B,C) ∧ C=X ⇒ col(A,B,X)
    CHECK(eqsub3->universals == std::vector<std::string>{"A", "B", "C", "X"});
    REQUIRE(eqsub3->premises.size() == 2);
    CHECK(to_string(eqsub3->premises[0]) == "col(A, B, C)");
    CHECK(to_string(eqsub3->premises[1]) == "C = X");
    CHECK(to_string(eqsub3->disjuncts[0].atoms[0]) == "col(A, B, X)");
}

TEST_CASE("support axioms for the proposition 11 signature include eq_excluded_middle") {
    Signature sig;
    for (const auto& entry : parse_tptp(testutil::read_fixture("euclid_i11.tptp")))
        coherentize(entry, sig);
    auto axioms = generate_support_axioms(sig, SupportAxiomOptions{});
    bool found_em = false, found_col_contra = false;
    for (const auto& ax : axioms) {
        if (ax.name == "eq_excluded_middle") {
            found_em = true;
            CHECK(ax.premises.empty());
            CHECK(ax.disjuncts.size() == 2);
        }
        if (ax.name == "col_neg_contradiction") {
            found_col_contra = true;
            CHECK(ax.disjuncts.empty());
        }
    }
    CHECK(found_em);
    CHECK(found_col_contra);
    CHECK_THROWS_AS(generate_support_axioms(
                        sig, SupportAxiomOptions{{"no_such_predicate"}, true, true}),
                    UnknownPredicateError);
}

TEST_CASE("axiom names stay unique after support generation") {
    Signature sig;
    std::set<std::string> names;
    for (const auto& entry : parse_tptp(testutil::read_fixture("euclid_i11.tptp"))) {
        if (entry.role == Role::Conjecture) continue;
        for (auto& f : coherentize(entry, sig)) CHECK(names.insert(f.name).second);
    }
    for (const auto& f : generate_support_axioms(sig, SupportAxiomOptions{}))
        CHECK(names.insert(f.name).second);
}

TEST_CASE("coherentized output contains no negation or nesting") {
    Signature sig;
    for (const auto& entry : parse_tptp(testutil::read_fixture("euclid_i11.tptp"))) {
        for (const auto& f : coherentize(entry, sig)) {
            formula::validate(f);
            for (const auto& d : f.disjuncts) CHECK(!d.atoms.empty());
        }
    }
}

// ---------------------------------------------------------------------------
// Conservative-extension check: per universal instantiation, sweep every
// valuation of the occurring ground atoms (complements interpreted as
// complements, eq as identity); the FOF slice and its translation must agree.
// Truth over a finite domain depends only on the occurring ground atoms, so
// this covers every interpretation of domain size 1 and 2.
// ---------------------------------------------------------------------------

namespace {

struct SliceInterpretation final : FiniteInterpretation {
    std::map<Atom, bool>* truth = nullptr;
    const Signature* sig = nullptr;

    bool atom_true(const Atom& ground) const override {
        if (ground.predicate == Signature::kEq) return ground.args[0] == ground.args[1];
        if (ground.predicate == Signature::kNeq) return !(ground.args[0] == ground.args[1]);
        auto it = truth->find(ground);
        if (it != truth->end()) return it->second;
        // bar predicates read through their base
        for (const auto& [base, bar] : sig->complements) {
            if (bar != ground.predicate) continue;
            Atom positive = ground;
            positive.predicate = base;
            auto bit = truth->find(positive);
            return bit != truth->end() ? !bit->second : true;
        }
        return false;
    }
};

void collect_positive_atoms(const FofPtr& node, const Signature& sig,
                            std::map<std::string, int>& env, int domain, std::set<Atom>& out) {
    switch (node->kind) {
        case FofNode::Kind::Atom: {
            Atom ground = node->atom;
            for (Term& t : ground.args)
                if (t.is_var()) t = Term::constant(std::to_string(env.at(t.name)));
            if (ground.predicate == Signature::kEq || ground.predicate == Signature::kNeq)
                return;
            for (const auto& [base, bar] : sig.complements)
                if (bar == ground.predicate) ground.predicate = base;
            out.insert(ground);
            return;
        }
        case FofNode::Kind::Forall:
        case FofNode::Kind::Exists: {
            std::vector<int> assign(node->vars.size(), 0);
            while (true) {
                for (std::size_t i = 0; i < node->vars.size(); ++i)
                    env[node->vars[i]] = assign[i];
                collect_positive_atoms(node->children[0], sig, env, domain, out);
                std::size_t k = 0;
                while (k < assign.size()) {
                    if (++assign[k] < domain) break;
                    assign[k] = 0;
                    ++k;
                }
                if (k == assign.size()) break;
            }
            for (const auto& v : node->vars) env.erase(v);
            return;
        }
        default:
            for (const auto& c : node->children)
                collect_positive_atoms(c, sig, env, domain, out);
            return;
    }
}

// One universal assignment of a coherent formula: premises under the
// substitution, existentials swept over the domain.
bool eval_coherent_slice(const CoherentFormula& f, const SliceInterpretation& interp,
                         int domain, const formula::Substitution& subst) {
    for (const Atom& a : f.premises)
        if (!interp.atom_true(apply_substitution(a, subst))) return true;
    std::vector<int> exi(f.existentials.size(), 0);
    while (true) {
        formula::Substitution full = subst;
        for (std::size_t i = 0; i < f.existentials.size(); ++i)
            full.bindings[f.existentials[i]] = std::to_string(exi[i]);
        for (const auto& d : f.disjuncts) {
            bool all = true;
            for (const Atom& a : d.atoms)
                all = all && interp.atom_true(apply_substitution(a, full));
            if (all) return true;
        }
        std::size_t k = 0;
        while (k < exi.size()) {
            if (++exi[k] < domain) break;
            exi[k] = 0;
            ++k;
        }
        if (k == exi.size()) break;
    }
    return false;
}

// Both sides are universal closures over the same prefix, so slice-wise
// equivalence (over all valuations of the slice's own atoms) gives
// equivalence over every interpretation.
void check_conservative(const AnnotatedFormula& entry) {
    Signature sig;
    auto translated = coherentize(entry, sig);
    REQUIRE(translated.size() == 1);
    const CoherentFormula& cl = translated[0];

    FofPtr body = entry.body;
    std::vector<std::string> prefix;
    while (body->kind == FofNode::Kind::Forall) {
        prefix.insert(prefix.end(), body->vars.begin(), body->vars.end());
        body = body->children[0];
    }
    REQUIRE(prefix == cl.universals);

    for (int domain = 1; domain <= 2; ++domain) {
        std::vector<int> assign(prefix.size(), 0);
        while (true) {
            std::map<std::string, int> env;
            formula::Substitution subst;
            for (std::size_t i = 0; i < prefix.size(); ++i) {
                env[prefix[i]] = assign[i];
                subst.bindings[prefix[i]] = std::to_string(assign[i]);
            }

            std::set<Atom> atom_set;
            collect_positive_atoms(body, sig, env, domain, atom_set);
            std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
            REQUIRE(atoms.size() <= 16);

            for (std::uint64_t mask = 0; mask < (1ULL << atoms.size()); ++mask) {
                std::map<Atom, bool> truth;
                for (std::size_t i = 0; i < atoms.size(); ++i)
                    truth[atoms[i]] = (mask >> i) & 1;
                SliceInterpretation interp;
                interp.domain_size = domain;
                interp.truth = &truth;
                interp.sig = &sig;

                std::map<std::string, int> body_env = env;
                bool fof = eval_fof(body, interp, body_env);
                bool translated_slice = eval_coherent_slice(cl, interp, domain, subst);
                if (fof != translated_slice) {
                    CHECK_MESSAGE(fof == translated_slice, "disagreement for ", entry.name,
                                  " at domain ", domain, " mask ", mask);
                    return;
                }
            }

            std::size_t k = 0;
            while (k < assign.size()) {
                if (++assign[k] < domain) break;
                assign[k] = 0;
                ++k;
            }
            if (k == assign.size()) break;
        }
    }
    CHECK(true);
}

} // namespace

TEST_CASE("FOF truth agrees with the translation on every fixture axiom") {
    for (const auto& entry : parse_tptp(testutil::read_fixture("euclid_i11.tptp")))
        check_conservative(entry);
}

TEST_CASE("to_tptp round-trips through the parser") {
    Signature sig;
    auto f = coherentize_one(
        "fof(lemma_extension,axiom, (! [A,B,P,Q] : (? [X] : (((A != B) & (P != Q)) => "
        "(betS(A,B,X) & cong(B,X,P,Q)))))).",
        sig);
    std::string text = to_tptp(f, "axiom");
    Signature sig2;
    auto again = coherentize_one(text, sig2);
    CHECK(again == f);
}
