#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <random>

#include "geoproof/error.hpp"
#include "geoproof/pipeline.hpp"
#include "geoproof/prover.hpp"
#include "geoproof/tptp.hpp"
#include "test_support.hpp"

using namespace geoproof;
using namespace geoproof::prover;
using formula::Atom;
using formula::CoherentFormula;
using formula::Conjunction;
using formula::Term;
using formula::Theory;

namespace {

cli::LoadedProblem load(const std::string& fixture) {
    return cli::load_problem_text(testutil::read_fixture(fixture), "");
}

Atom ga(const std::string& pred, const std::vector<std::string>& args) {
    Atom a;
    a.predicate = pred;
    for (const auto& n : args)
        a.args.push_back(formula::is_variable_name(n) ? Term::var(n) : Term::constant(n));
    return a;
}

const ProofStep* find_mp(const std::vector<ProofStep>& steps, const std::string& axiom) {
    for (const auto& s : steps) {
        if (s.kind == ProofStep::Kind::MP && s.axiom == axiom) return &s;
        if (s.kind == ProofStep::Kind::CaseSplit)
            for (const auto& c : s.cases)
                if (const ProofStep* hit = find_mp(c.steps, axiom)) return hit;
    }
    return nullptr;
}

int count_splits(const std::vector<ProofStep>& steps) {
    int n = 0;
    for (const auto& s : steps) {
        if (s.kind == ProofStep::Kind::CaseSplit) {
            ++n;
            for (const auto& c : s.cases) n += count_splits(c.steps);
        }
    }
    return n;
}

} // namespace

TEST_CASE("skolemize introduces sequential constants and instantiates the goal") {
    // ∀X(p(X) ⇒ r(X)) → constant a, assumed p(a), goal r(a)
    CoherentFormula c;
    c.name = "t";
    c.universals = {"X"};
    c.premises = {ga("p", {"X"})};
    c.disjuncts = {Conjunction{{ga("r", {"X"})}}};
    auto [intro, goal] = skolemize_conjecture(c);
    CHECK(intro.constants == std::vector<std::string>{"a"});
    CHECK(intro.assumed == std::vector<Atom>{ga("p", {"a"})});
    CHECK(goal.existentials.empty());
    CHECK(goal.disjuncts[0].atoms == std::vector<Atom>{ga("r", {"a"})});
}

TEST_CASE("skolemize on proposition_11 yields a, b, c and an open goal") {
    auto problem = load("euclid_i11.tptp");
    auto [intro, goal] = skolemize_conjecture(problem.conjecture);
    CHECK(intro.constants == std::vector<std::string>{"a", "b", "c"});
    CHECK(intro.assumed == std::vector<Atom>{ga("betS", {"a", "c", "b"})});
    CHECK(goal.existentials == std::vector<std::string>{"X"});
    CHECK(goal.disjuncts[0].atoms[0] == ga("per", {"a", "c", "X"}));
}

TEST_CASE("skolemize keeps a premise-free conjecture empty") {
    CoherentFormula c;
    c.name = "t";
    c.existentials = {"X"};
    c.disjuncts = {Conjunction{{ga("q", {"X"})}}};
    auto [intro, goal] = skolemize_conjecture(c);
    CHECK(intro.constants.empty());
    CHECK(intro.assumed.empty());
    CHECK(goal.existentials == std::vector<std::string>{"X"});
}

TEST_CASE("applicable_instances matches premises and filters productive ones") {
    FactBase fb;
    fb.add(ga("p", {"a"}));

    CoherentFormula ax1;
    ax1.name = "ax1";
    ax1.universals = {"X"};
    ax1.premises = {ga("p", {"X"})};
    ax1.disjuncts = {Conjunction{{ga("r", {"X"})}}, Conjunction{{ga("q", {"X"})}}};
    auto instances = applicable_instances(fb, ax1);
    REQUIRE(instances.size() == 1);
    CHECK(instances[0].bindings.at("X") == "a");

    CoherentFormula ax2;
    ax2.name = "ax2";
    ax2.universals = {"X"};
    ax2.premises = {ga("q", {"X"})};
    CHECK(applicable_instances(fb, ax2).empty());

    // r(X) ⇒ r(X) ∨ s(X): the unseen s-disjunct keeps the instance productive
    FactBase fb2;
    fb2.add(ga("r", {"a"}));
    CoherentFormula ax3;
    ax3.name = "ax3";
    ax3.universals = {"X"};
    ax3.premises = {ga("r", {"X"})};
    ax3.disjuncts = {Conjunction{{ga("r", {"X"})}}, Conjunction{{ga("s", {"X"})}}};
    auto productive = applicable_instances(fb2, ax3);
    REQUIRE(productive.size() == 1);
    CHECK(productive[0].bindings.at("X") == "a");

    // once both disjuncts hold the instance is dropped
    fb2.add(ga("s", {"a"}));
    CHECK(applicable_instances(fb2, ax3).empty());
}

TEST_CASE("applicable_instances enumerates unbound universals over constants in order") {
    FactBase fb;
    fb.add(ga("p", {"a"}));
    fb.add(ga("p", {"b"}));
    CoherentFormula ax;
    ax.name = "ax";
    ax.universals = {"X", "Y"};
    ax.premises = {ga("p", {"X"})};
    ax.disjuncts = {Conjunction{{ga("q", {"X", "Y"})}}};
    auto instances = applicable_instances(fb, ax);
    REQUIRE(instances.size() == 4);
    CHECK(instances[0].bindings == std::map<std::string, std::string>{{"X", "a"}, {"Y", "a"}});
    CHECK(instances[1].bindings == std::map<std::string, std::string>{{"X", "a"}, {"Y", "b"}});
    CHECK(instances[2].bindings == std::map<std::string, std::string>{{"X", "b"}, {"Y", "a"}});
    CHECK(instances[3].bindings == std::map<std::string, std::string>{{"X", "b"}, {"Y", "b"}});
}

TEST_CASE("example 1 proof has the published structure") {
    auto problem = load("example1.tptp");
    auto start = std::chrono::steady_clock::now();
    auto result = prove(problem.theory, problem.conjecture, SearchLimits{});
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    CHECK(elapsed.count() < 1.0);

    REQUIRE(std::holds_alternative<Proof>(result));
    const Proof& proof = std::get<Proof>(result);

    // 1 MP before a 2-case split; case 1 by assumption, case 2 MP + contradiction
    REQUIRE(proof.steps.size() == 3);
    CHECK(proof.steps[0].kind == ProofStep::Kind::MP);
    CHECK(proof.steps[0].axiom == "ax1");
    CHECK(proof.steps[0].instantiation.bindings.at("X") == "a");
    REQUIRE(proof.steps[1].kind == ProofStep::Kind::CaseSplit);
    CHECK(proof.steps[1].from_step == 0);
    REQUIRE(proof.steps[1].cases.size() == 2);
    const auto& case1 = proof.steps[1].cases[0];
    REQUIRE(case1.steps.size() == 1);
    CHECK(case1.steps[0].kind == ProofStep::Kind::QedAssumption);
    const auto& case2 = proof.steps[1].cases[1];
    REQUIRE(case2.steps.size() == 2);
    CHECK(case2.steps[0].kind == ProofStep::Kind::MP);
    CHECK(case2.steps[0].axiom == "ax2");
    CHECK(case2.steps[1].kind == ProofStep::Kind::QedContradiction);
    CHECK(proof.steps[2].kind == ProofStep::Kind::QedCaseSplit);

    CHECK(proof.statistics.mp_count == 2);
    CHECK(is_valid(check_proof(problem.theory, problem.conjecture, proof)));
}

TEST_CASE("proposition 11 is proved with the published lemmas") {
    auto problem = load("euclid_i11.tptp");
    auto start = std::chrono::steady_clock::now();
    auto result = prove(problem.theory, problem.conjecture, SearchLimits{12, 60.0, 64});
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    MESSAGE("proposition_11 search took ", elapsed.count(), " s");
    CHECK(elapsed.count() < 60.0);

    REQUIRE(std::holds_alternative<Proof>(result));
    const Proof& proof = std::get<Proof>(result);
    CHECK(is_valid(check_proof(problem.theory, problem.conjecture, proof)));

    // witness naming follows the printed proof
    const ProofStep* ext = find_mp(proof.steps, "lemma_extension");
    REQUIRE(ext != nullptr);
    CHECK(ext->witnesses == std::vector<std::string>{"w"});
    CHECK(ext->instantiation.bindings ==
          std::map<std::string, std::string>{{"A", "a"}, {"B", "c"}, {"P", "a"}, {"Q", "c"}});
    const ProofStep* p01 = find_mp(proof.steps, "proposition_01");
    REQUIRE(p01 != nullptr);
    CHECK(p01->witnesses == std::vector<std::string>{"w1"});
    CHECK(p01->instantiation.bindings ==
          std::map<std::string, std::string>{{"A", "a"}, {"B", "w"}});
    CHECK(find_mp(proof.steps, "defrightangle2") != nullptr);

    // exactly one case split, on the pair {w1, c} via eq_excluded_middle
    CHECK(count_splits(proof.steps) == 1);
    const ProofStep* em = find_mp(proof.steps, "eq_excluded_middle");
    REQUIRE(em != nullptr);
    std::set<std::string> pair = {em->instantiation.bindings.at("A"),
                                  em->instantiation.bindings.at("B")};
    CHECK(pair == std::set<std::string>{"w1", "c"});
}

TEST_CASE("an empty theory leaves p(a) unprovable") {
    Theory t;
    CoherentFormula c;
    c.name = "c";
    c.disjuncts = {Conjunction{{ga("p", {"a"})}}};
    auto result = prove(t, c, SearchLimits{5, 10.0, 16});
    REQUIRE(std::holds_alternative<Unprovable>(result));
    CHECK(std::get<Unprovable>(result).reason == Unprovable::Reason::LimitExhausted);
}

TEST_CASE("check_proof rejects tampered proofs") {
    auto problem = load("example1.tptp");
    auto result = prove(problem.theory, problem.conjecture, SearchLimits{});
    REQUIRE(std::holds_alternative<Proof>(result));
    Proof proof = std::get<Proof>(result);

    SUBCASE("unknown constant in the instantiation") {
        proof.steps[0].instantiation.bindings["X"] = "zz";
        auto check = check_proof(problem.theory, problem.conjecture, proof);
        REQUIRE(std::holds_alternative<Invalid>(check));
    }
    SUBCASE("unknown axiom") {
        proof.steps[0].axiom = "nonsense";
        CHECK(!is_valid(check_proof(problem.theory, problem.conjecture, proof)));
    }
    SUBCASE("missing case") {
        proof.steps[1].cases.pop_back();
        CHECK(!is_valid(check_proof(problem.theory, problem.conjecture, proof)));
    }
    SUBCASE("contradiction without falsum") {
        proof.steps[1].cases[1].steps = {proof.steps[1].cases[1].steps[1]};
        CHECK(!is_valid(check_proof(problem.theory, problem.conjecture, proof)));
    }
    SUBCASE("concluded facts diverge from the instantiated axiom") {
        proof.steps[1].cases[1].steps[0].instantiation.bindings["X"] = "a";
        CHECK(!is_valid(check_proof(problem.theory, problem.conjecture, proof)));
    }
}

TEST_CASE("prove is deterministic") {
    auto problem = load("euclid_i11.tptp");
    auto r1 = prove(problem.theory, problem.conjecture, SearchLimits{12, 60.0, 64});
    auto r2 = prove(problem.theory, problem.conjecture, SearchLimits{12, 60.0, 64});
    REQUIRE(std::holds_alternative<Proof>(r1));
    REQUIRE(std::holds_alternative<Proof>(r2));
    CHECK(proof_to_json(std::get<Proof>(r1)) == proof_to_json(std::get<Proof>(r2)));
}

TEST_CASE("iterative deepening returns minimal-depth proofs") {
    auto problem = load("example1.tptp");
    auto result = prove(problem.theory, problem.conjecture, SearchLimits{});
    REQUIRE(std::holds_alternative<Proof>(result));
    int depth = std::get<Proof>(result).statistics.max_depth;
    CHECK(depth == 1); // the split is the only searched step; ax2 closes by saturation

    SearchLimits below{depth - 1, 10.0, 64};
    CHECK(std::holds_alternative<Unprovable>(prove(problem.theory, problem.conjecture, below)));
    SearchLimits exact{depth, 10.0, 64};
    CHECK(std::holds_alternative<Proof>(prove(problem.theory, problem.conjecture, exact)));
}

TEST_CASE("varignon first proof: seven MP steps, no splits, closed by assumption") {
    auto problem = load("varignon_first.tptp");
    auto result = prove(problem.theory, problem.conjecture, SearchLimits{12, 60.0, 64});
    REQUIRE(std::holds_alternative<Proof>(result));
    const Proof& proof = std::get<Proof>(result);
    CHECK(is_valid(check_proof(problem.theory, problem.conjecture, proof)));
    CHECK(proof.statistics.mp_count == 7);
    CHECK(count_splits(proof.steps) == 0);
    CHECK(proof.steps.back().kind == ProofStep::Kind::QedAssumption);
    CHECK(proof.statistics.max_depth == 0); // pure saturation
    CHECK(find_mp(proof.steps, "triangle_mid_par_strict") != nullptr);
    CHECK(find_mp(proof.steps, "triangle_mid_par_strict_flip") != nullptr);
    CHECK(find_mp(proof.steps, "triangle_mid_par_strict_flip2") != nullptr);
    CHECK(find_mp(proof.steps, "lemma_par_trans") != nullptr);
    CHECK(find_mp(proof.steps, "lemma_par_trans_flip") != nullptr);
    CHECK(find_mp(proof.steps, "lemma_par2_pg") != nullptr);
}

TEST_CASE("varignon second proof transcription replays as valid") {
    auto problem = load("varignon_second.tptp");
    const Theory& t = problem.theory;

    auto [intro, goal] = skolemize_conjecture(problem.conjecture);
    Proof proof;
    proof.conjecture_name = problem.conjecture.name;
    proof.intro = intro;
    proof.goal = goal;

    using testutil::mp;
    auto& s = proof.steps;
    // printed steps 1-2: the two midpoints
    s.push_back(mp(t, "lemma_midpoint_existence", {{"A", "a"}, {"B", "c"}}, {"w"}));
    s.push_back(mp(t, "lemma_midpoint_existence", {{"A", "d"}, {"B", "b"}}, {"w1"}));
    // printed steps 3+5 (one MP; the lemma concludes the conjunction)
    s.push_back(mp(t, "lemma_triangle_mid_par_cong_1",
                   {{"A", "d"}, {"B", "a"}, {"C", "c"}, {"P", "w"}, {"Q", "g"}, {"R", "h"}}));
    // orientation fix, then printed steps 4+13
    s.push_back(mp(t, "midpoint_symmetry", {{"A", "b"}, {"I", "f"}, {"B", "c"}}));
    s.push_back(mp(t, "lemma_triangle_mid_par_cong_1",
                   {{"A", "b"}, {"B", "a"}, {"C", "c"}, {"P", "w"}, {"Q", "f"}, {"R", "e"}}));
    // orientation fixes, then printed steps 6+7
    s.push_back(mp(t, "midpoint_symmetry", {{"A", "d"}, {"I", "w1"}, {"B", "b"}}));
    s.push_back(mp(t, "midpoint_symmetry", {{"A", "a"}, {"I", "h"}, {"B", "d"}}));
    s.push_back(mp(t, "midpoint_symmetry", {{"A", "a"}, {"I", "e"}, {"B", "b"}}));
    s.push_back(mp(t, "lemma_triangle_mid_par_cong_1",
                   {{"A", "a"}, {"B", "b"}, {"C", "d"}, {"P", "w1"}, {"Q", "h"}, {"R", "e"}}));
    // printed step 8
    s.push_back(mp(t, "lemma_congruencetransitive",
                   {{"A", "h"}, {"B", "e"}, {"C", "b"}, {"D", "w1"}, {"E", "h"}, {"F", "e"}}));
    // cong flips, then printed step 9
    s.push_back(mp(t, "lemma_congruenceflip",
                   {{"A", "a"}, {"B", "w"}, {"C", "g"}, {"D", "h"}}));
    s.push_back(mp(t, "lemma_congruenceflip",
                   {{"A", "a"}, {"B", "w"}, {"C", "f"}, {"D", "e"}}));
    s.push_back(mp(t, "lemma_congruencetransitive",
                   {{"A", "g"}, {"B", "h"}, {"C", "w"}, {"D", "a"}, {"E", "e"}, {"F", "f"}}));
    // orientation fix, then printed steps 10+12
    s.push_back(mp(t, "midpoint_symmetry", {{"A", "c"}, {"I", "g"}, {"B", "d"}}));
    s.push_back(mp(t, "lemma_triangle_mid_par_cong_1",
                   {{"A", "c"}, {"B", "b"}, {"C", "d"}, {"P", "w1"}, {"Q", "g"}, {"R", "f"}}));
    // cong flips, then printed step 11
    s.push_back(mp(t, "lemma_congruenceflip",
                   {{"A", "b"}, {"B", "w1"}, {"C", "h"}, {"D", "e"}}));
    s.push_back(mp(t, "lemma_congruenceflip",
                   {{"A", "b"}, {"B", "w1"}, {"C", "g"}, {"D", "f"}}));
    s.push_back(mp(t, "lemma_congruencetransitive",
                   {{"A", "f"}, {"B", "g"}, {"C", "b"}, {"D", "w1"}, {"E", "e"}, {"F", "h"}}));
    // tP flips, then printed steps 14 and 15
    s.push_back(mp(t, "lemma_tP_flip", {{"A", "c"}, {"B", "a"}, {"C", "e"}, {"D", "f"}}));
    s.push_back(mp(t, "lemma_tP_trans",
                   {{"A", "g"}, {"B", "h"}, {"C", "a"}, {"D", "c"}, {"E", "f"}, {"F", "e"}}));
    s.push_back(mp(t, "lemma_tP_flip", {{"A", "d"}, {"B", "b"}, {"C", "f"}, {"D", "g"}}));
    s.push_back(mp(t, "lemma_tP_flip", {{"A", "d"}, {"B", "b"}, {"C", "e"}, {"D", "h"}}));
    s.push_back(mp(t, "lemma_tP_trans_flip",
                   {{"A", "f"}, {"B", "g"}, {"C", "b"}, {"D", "d"}, {"E", "e"}, {"F", "h"}}));
    // printed step 16
    s.push_back(mp(t, "lemma_par_par_cong_cong_parallelogram",
                   {{"A", "e"}, {"B", "f"}, {"C", "g"}, {"D", "h"}}));
    s.push_back(testutil::qed_assumption(0));

    auto check = check_proof(t, problem.conjecture, proof);
    if (!is_valid(check)) {
        const auto& inv = std::get<Invalid>(check);
        MESSAGE("invalid at step ", inv.step_index, ": ", inv.reason);
    }
    CHECK(is_valid(check));
}

TEST_CASE("proof json round-trips") {
    auto problem = load("example1.tptp");
    auto result = prove(problem.theory, problem.conjecture, SearchLimits{});
    REQUIRE(std::holds_alternative<Proof>(result));
    const Proof& proof = std::get<Proof>(result);
    std::string text = proof_to_json(proof);
    Proof back = proof_from_json(text);
    CHECK(proof_to_json(back) == text);
    CHECK(is_valid(check_proof(problem.theory, problem.conjecture, back)));
}

TEST_CASE("rename_apart preserves provability on the fixtures") {
    auto problem = load("example1.tptp");
    CoherentFormula renamed = formula::rename_apart(problem.conjecture, {"X"});
    CHECK(renamed.universals != problem.conjecture.universals);
    auto r1 = prove(problem.theory, problem.conjecture, SearchLimits{});
    auto r2 = prove(problem.theory, renamed, SearchLimits{});
    CHECK(std::holds_alternative<Proof>(r1) == std::holds_alternative<Proof>(r2));
}

// ---------------------------------------------------------------------------
// Soundness against brute-force model enumeration on random small theories.
// ---------------------------------------------------------------------------

namespace {

struct RandomCase {
    Theory theory;
    CoherentFormula conjecture;
};

RandomCase random_case(std::mt19937& rng) {
    RandomCase out;
    const std::vector<std::string> preds = {"p", "q", "r"};
    const std::vector<std::size_t> arities = {1, 2, 1};
    for (std::size_t i = 0; i < preds.size(); ++i)
        out.theory.signature.declare(preds[i], arities[i]);

    auto random_atom = [&](const std::vector<std::string>& vars) {
        std::size_t pi = rng() % preds.size();
        Atom a;
        a.predicate = preds[pi];
        for (std::size_t k = 0; k < arities[pi]; ++k) {
            if (!vars.empty() && rng() % 3 != 0) {
                a.args.push_back(Term::var(vars[rng() % vars.size()]));
            } else {
                a.args.push_back(Term::constant(std::string(1, char('a' + rng() % 2))));
            }
        }
        return a;
    };

    int axiom_count = 1 + rng() % 6;
    for (int i = 0; i < axiom_count; ++i) {
        CoherentFormula ax;
        ax.name = "rax" + std::to_string(i);
        std::vector<std::string> vars;
        int var_count = rng() % 3;
        for (int v = 0; v < var_count; ++v) vars.push_back(std::string(1, char('X' + v)));
        ax.universals = vars;
        int premise_count = rng() % 3;
        for (int p = 0; p < premise_count; ++p) ax.premises.push_back(random_atom(vars));
        std::vector<std::string> cvars = vars;
        if (rng() % 5 == 0) {
            ax.existentials.push_back("W");
            cvars.push_back("W");
        }
        int disjunct_count = rng() % 3; // may be 0: falsum
        for (int d = 0; d < disjunct_count; ++d) {
            Conjunction cj;
            int atoms = 1 + rng() % 2;
            for (int k = 0; k < atoms; ++k) cj.atoms.push_back(random_atom(cvars));
            ax.disjuncts.push_back(cj);
        }
        try {
            formula::validate(ax);
        } catch (const Error&) {
            continue;
        }
        if (out.theory.find_axiom(ax.name)) continue;
        out.theory.add_axiom(ax);
    }

    CoherentFormula c;
    c.name = "rconj";
    std::vector<std::string> vars;
    int var_count = rng() % 2;
    for (int v = 0; v < var_count; ++v) vars.push_back(std::string(1, char('X' + v)));
    c.universals = vars;
    int premise_count = rng() % 2;
    for (int p = 0; p < premise_count; ++p) c.premises.push_back(random_atom(vars));
    std::vector<std::string> cvars = vars;
    if (rng() % 4 == 0) {
        c.existentials.push_back("W");
        cvars.push_back("W");
    }
    int disjunct_count = 1 + rng() % 2;
    for (int d = 0; d < disjunct_count; ++d) {
        Conjunction cj;
        cj.atoms.push_back(random_atom(cvars));
        c.disjuncts.push_back(cj);
    }
    out.conjecture = c;
    try {
        formula::validate(out.conjecture);
    } catch (const Error&) {
        return random_case(rng);
    }
    return out;
}

// Sweep all interpretations over domains of size <= 3; true when a model of
// the axioms defeats the conjecture.
bool countermodel_exists(const RandomCase& rc) {
    std::vector<std::string> constants;
    auto note_constants = [&constants](const CoherentFormula& f) {
        auto scan = [&constants](const Atom& a) {
            for (const Term& t : a.args)
                if (!t.is_var() &&
                    std::find(constants.begin(), constants.end(), t.name) == constants.end())
                    constants.push_back(t.name);
        };
        for (const Atom& a : f.premises) scan(a);
        for (const Conjunction& d : f.disjuncts)
            for (const Atom& a : d.atoms) scan(a);
    };
    for (const auto& ax : rc.theory.axioms) note_constants(ax);
    note_constants(rc.conjecture);

    for (int domain = 1; domain <= 3; ++domain) {
        int bits_p = domain, bits_q = domain * domain, bits_r = domain;
        int total_bits = bits_p + bits_q + bits_r;
        std::vector<int> const_assign(constants.size(), 0);
        while (true) {
            for (std::uint64_t mask = 0; mask < (1ULL << total_bits); ++mask) {
                auto atom_true = [&](const Atom& ground, const std::map<std::string, int>& env) {
                    auto value = [&](const Term& t) {
                        if (t.is_var()) return env.at(t.name);
                        for (std::size_t i = 0; i < constants.size(); ++i)
                            if (constants[i] == t.name) return const_assign[i];
                        return 0;
                    };
                    if (ground.predicate == "p")
                        return ((mask >> value(ground.args[0])) & 1) != 0;
                    if (ground.predicate == "q")
                        return ((mask >> (bits_p + value(ground.args[0]) * domain +
                                          value(ground.args[1]))) &
                                1) != 0;
                    return ((mask >> (bits_p + bits_q + value(ground.args[0]))) & 1) != 0;
                };

                auto formula_true = [&](const CoherentFormula& f) {
                    std::vector<int> uni(f.universals.size(), 0);
                    while (true) {
                        std::map<std::string, int> env;
                        for (std::size_t i = 0; i < f.universals.size(); ++i)
                            env[f.universals[i]] = uni[i];
                        bool premises = true;
                        for (const Atom& a : f.premises) premises = premises && atom_true(a, env);
                        if (premises) {
                            bool concl = false;
                            std::vector<int> exi(f.existentials.size(), 0);
                            while (true) {
                                std::map<std::string, int> full = env;
                                for (std::size_t i = 0; i < f.existentials.size(); ++i)
                                    full[f.existentials[i]] = exi[i];
                                for (const auto& d : f.disjuncts) {
                                    bool all = true;
                                    for (const Atom& a : d.atoms) all = all && atom_true(a, full);
                                    if (all) concl = true;
                                }
                                std::size_t k = 0;
                                while (k < exi.size()) {
                                    if (++exi[k] < domain) break;
                                    exi[k] = 0;
                                    ++k;
                                }
                                if (k == exi.size() || concl) break;
                            }
                            if (!concl) return false;
                        }
                        std::size_t k = 0;
                        while (k < uni.size()) {
                            if (++uni[k] < domain) break;
                            uni[k] = 0;
                            ++k;
                        }
                        if (k == uni.size()) break;
                    }
                    return true;
                };

                bool axioms_hold = true;
                for (const auto& ax : rc.theory.axioms)
                    axioms_hold = axioms_hold && formula_true(ax);
                if (!axioms_hold) continue;
                if (!formula_true(rc.conjecture)) return true;
            }
            std::size_t k = 0;
            while (k < const_assign.size()) {
                if (++const_assign[k] < domain) break;
                const_assign[k] = 0;
                ++k;
            }
            if (k == const_assign.size()) break;
        }
    }
    return false;
}

} // namespace

TEST_CASE("random theories: found proofs are sound and check out") {
    std::mt19937 rng(0xC0FFEE);
    int proved = 0;
    for (int round = 0; round < 120; ++round) {
        RandomCase rc = random_case(rng);
        auto result = prove(rc.theory, rc.conjecture, SearchLimits{4, 2.0, 12});
        if (!std::holds_alternative<Proof>(result)) continue;
        ++proved;
        const Proof& proof = std::get<Proof>(result);
        CHECK(is_valid(check_proof(rc.theory, rc.conjecture, proof)));
        CHECK(!countermodel_exists(rc));
    }
    MESSAGE("proved ", proved, " of 120 random cases");
    CHECK(proved > 10);
}
