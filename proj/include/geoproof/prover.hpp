#ifndef GEOPROOF_PROVER_HPP
#define GEOPROOF_PROVER_HPP

#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "geoproof/formula.hpp"

namespace geoproof::prover {

// Ground facts, indexed by predicate; constants kept in creation order
// (the order drives every deterministic enumeration in the search).
class FactBase {
public:
    bool contains(const formula::Atom& fact) const;
    // Returns false if the fact was already present. Registers unseen constants.
    bool add(const formula::Atom& fact);
    std::size_t ensure_constant(const std::string& name);
    bool has_constant(const std::string& name) const { return index_.count(name) != 0; }

    const std::vector<std::string>& constants() const { return constants_; }
    // Creation index; constants().size() for unknown names.
    std::size_t index_of(const std::string& name) const;
    const std::vector<formula::Atom>& with_predicate(const std::string& pred) const;
    std::size_t fact_count() const { return trail_.size(); }
    std::size_t constant_count() const { return constants_.size(); }

    // Backtracking support: marks are (fact trail size, constant count).
    struct Mark {
        std::size_t facts;
        std::size_t constants;
    };
    Mark mark() const { return {trail_.size(), constants_.size()}; }
    void rewind(const Mark& m);

private:
    struct AtomHash {
        std::size_t operator()(const formula::Atom& a) const;
    };

    std::vector<std::string> constants_;
    std::map<std::string, std::size_t> index_;
    std::unordered_set<formula::Atom, AtomHash> facts_;
    std::map<std::string, std::vector<formula::Atom>> by_predicate_;
    std::vector<formula::Atom> trail_;
};

struct ProofStep;

struct CaseBranch {
    formula::Conjunction facts;
    std::vector<ProofStep> steps;
};

struct ProofStep {
    enum class Kind { MP, CaseSplit, QedAssumption, QedContradiction, QedCaseSplit };
    Kind kind = Kind::MP;

    // MP
    std::string axiom;
    formula::Substitution instantiation;
    std::vector<std::string> witnesses;
    std::vector<formula::Conjunction> concluded;

    // CaseSplit
    int from_step = -1; // index of the source MP within the enclosing step list
    std::vector<CaseBranch> cases;

    // QedAssumption
    int goal_disjunct = -1;
    formula::Substitution goal_substitution;
};

struct IntroStep {
    std::vector<std::string> constants;
    std::vector<formula::Atom> assumed;
};

struct Goal {
    std::vector<std::string> existentials;
    std::vector<formula::Conjunction> disjuncts;
};

struct ProofStatistics {
    int mp_count = 0;  // total MP steps in the returned proof
    int max_depth = 0; // deepening metric: max interesting (witness/split) MPs on a branch
};

struct Proof {
    std::string conjecture_name;
    IntroStep intro;
    Goal goal;
    std::vector<ProofStep> steps;
    ProofStatistics statistics;
};

struct SearchLimits {
    int max_mp_steps = 12;
    double timeout_seconds = 60.0;
    int max_constants = 64;
};

struct Unprovable {
    enum class Reason { LimitExhausted, Timeout };
    Reason reason = Reason::LimitExhausted;
};

using ProveResult = std::variant<Proof, Unprovable>;

// Fresh constants for the conjecture's universals (a, b, c, ... skipping taken
// names), instantiated premises, and the goal with existentials left open.
std::pair<IntroStep, Goal> skolemize_conjecture(const formula::CoherentFormula& c,
                                                const std::set<std::string>& avoid = {});

// Every substitution of ax's universals by fb constants whose instantiated
// premises all hold, lexicographic over constant creation indices, filtered
// to productive instances.
std::vector<formula::Substitution> applicable_instances(const FactBase& fb,
                                                        const formula::CoherentFormula& ax);

// An axiom is applied by saturation (rather than as a searched step) when it
// introduces no witnesses and cannot branch.
bool is_closure_axiom(const formula::CoherentFormula& ax);

ProveResult prove(const formula::Theory& t, const formula::CoherentFormula& c,
                  const SearchLimits& lim);

struct Valid {};
struct Invalid {
    int step_index = -1;
    std::string reason;
};
using CheckResult = std::variant<Valid, Invalid>;

CheckResult check_proof(const formula::Theory& t, const formula::CoherentFormula& c,
                        const Proof& p);

bool is_valid(const CheckResult& r);

// Proof interchange (JSON text): field names documented in the README.
std::string proof_to_json(const Proof& p);
Proof proof_from_json(const std::string& text);

} // namespace geoproof::prover

#endif
