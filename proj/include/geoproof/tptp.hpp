#ifndef GEOPROOF_TPTP_HPP
#define GEOPROOF_TPTP_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "geoproof/formula.hpp"

namespace geoproof::tptp {

// Connective tree for the parsed FOF subset. True/False cover $true/$false.
struct FofNode;
using FofPtr = std::shared_ptr<const FofNode>;

struct FofNode {
    enum class Kind { Forall, Exists, Implies, And, Or, Not, Atom, True, False };
    Kind kind;
    std::vector<std::string> vars;      // Forall/Exists
    std::vector<FofPtr> children;       // connectives
    formula::Atom atom;                 // Atom ('=' parses as eq, '!=' as neq)
};

FofPtr make_atom(formula::Atom a);
FofPtr make_node(FofNode::Kind kind, std::vector<FofPtr> children,
                 std::vector<std::string> vars = {});

enum class Role { Axiom, Conjecture };

struct AnnotatedFormula {
    std::string name;
    Role role = Role::Axiom;
    FofPtr body;
};

struct SupportAxiomOptions {
    std::set<std::string> excluded_middle_for{formula::Signature::kEq};
    bool substitution_axioms = true;
    bool symmetry_for_neq = true;
};

std::vector<AnnotatedFormula> parse_tptp(std::string_view text);

// FOL -> CL: hoists mis-scoped existentials into the conclusion, pushes
// negation to atoms (registering complement predicates in `sig`), and
// normalizes the conclusion to a disjunction of conjunctions.
std::vector<formula::CoherentFormula> coherentize(const AnnotatedFormula& f,
                                                  formula::Signature& sig);

std::vector<formula::CoherentFormula> generate_support_axioms(const formula::Signature& sig,
                                                              const SupportAxiomOptions& opts);

// Serialize back to the fof(...) entry syntax, one entry per line group.
std::string to_tptp(const formula::CoherentFormula& f, const std::string& role);

// Brute-force FOF evaluation over a finite interpretation; the independent
// oracle for translation tests. Atom truth is supplied by the caller.
struct FiniteInterpretation {
    int domain_size = 1;
    // ground atom (constant args are domain element ids rendered as strings) -> truth
    virtual bool atom_true(const formula::Atom& ground) const = 0;
    virtual ~FiniteInterpretation() = default;
};

bool eval_fof(const FofPtr& node, const FiniteInterpretation& interp,
              std::map<std::string, int>& env);

} // namespace geoproof::tptp

#endif
