#ifndef GEOPROOF_FORMULA_HPP
#define GEOPROOF_FORMULA_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace geoproof::formula {

// Terms are variables or constants; there are no compound terms.
// TPTP convention: uppercase-initial identifiers are variables.
struct Term {
    enum class Kind { Variable, Constant };
    Kind kind = Kind::Constant;
    std::string name;

    static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
    bool is_var() const { return kind == Kind::Variable; }

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind == b.kind && a.name == b.name;
    }
    friend auto operator<=>(const Term& a, const Term& b) = default;
};

bool is_variable_name(const std::string& name);

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

struct Conjunction {
    std::vector<Atom> atoms;

    friend bool operator==(const Conjunction&, const Conjunction&) = default;
};

// ∀ universals (premises ⇒ ∃ existentials (disjunct_0 ∨ … ∨ disjunct_{m-1}))
// Empty premises encode ⊤; empty disjuncts encode ⊥.
struct CoherentFormula {
    std::string name;
    std::vector<std::string> universals;
    std::vector<Atom> premises;
    std::vector<std::string> existentials;
    std::vector<Conjunction> disjuncts;

    friend bool operator==(const CoherentFormula&, const CoherentFormula&) = default;
};

struct Substitution {
    std::map<std::string, std::string> bindings; // variable name -> constant name

    bool bound(const std::string& var) const { return bindings.count(var) != 0; }
    friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct Signature {
    static constexpr const char* kEq = "eq";
    static constexpr const char* kNeq = "neq";

    Signature();

    std::map<std::string, std::size_t> predicates;
    // Stored base -> bar; lookup resolves either direction.
    std::map<std::string, std::string> complements;

    void declare(const std::string& pred, std::size_t arity);
    bool declared(const std::string& pred) const { return predicates.count(pred) != 0; }
    std::size_t arity(const std::string& pred) const;

    void register_complement(const std::string& base, const std::string& bar);
    std::optional<std::string> complement_of(const std::string& pred) const;
    bool is_complement_pair(const std::string& a, const std::string& b) const;
};

enum class AxiomOrigin { User, Support, ExcludedMiddle };

struct Theory {
    Signature signature;
    std::vector<CoherentFormula> axioms;
    std::map<std::string, AxiomOrigin> origins; // absent entry = User

    const CoherentFormula* find_axiom(const std::string& name) const;
    AxiomOrigin origin(const std::string& name) const;
    bool generated(const std::string& name) const { return origin(name) != AxiomOrigin::User; }
    void add_axiom(CoherentFormula f, AxiomOrigin origin = AxiomOrigin::User);
};

// ---- operations ----

Atom apply_substitution(const Atom& a, const Substitution& s);
Conjunction apply_substitution(const Conjunction& c, const Substitution& s);

std::vector<std::string> free_variables(const Atom& a);
std::vector<std::string> free_variables(const Conjunction& c);
std::vector<std::string> free_variables(const CoherentFormula& f);

CoherentFormula rename_apart(const CoherentFormula& f, const std::set<std::string>& avoid);

// Structural sanity for hand-built and translated formulas (the type invariants).
void validate(const CoherentFormula& f);

// Plain-ASCII rendering used by diagnostics and tests; eq/neq print infix.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Conjunction& c);
std::string to_string(const CoherentFormula& f);

} // namespace geoproof::formula

#endif
