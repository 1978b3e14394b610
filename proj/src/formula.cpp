#include "geoproof/formula.hpp"

#include <algorithm>
#include <cassert>

#include "geoproof/error.hpp"

namespace geoproof::formula {

bool is_variable_name(const std::string& name) {
    return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

Signature::Signature() {
    declare(kEq, 2);
    declare(kNeq, 2);
    complements[kEq] = kNeq;
}

void Signature::declare(const std::string& pred, std::size_t ar) {
    auto it = predicates.find(pred);
    if (it == predicates.end()) {
        predicates[pred] = ar;
    } else if (it->second != ar) {
        throw NotCoherentError("predicate " + pred + " used with arities " +
                               std::to_string(it->second) + " and " + std::to_string(ar));
    }
}

std::size_t Signature::arity(const std::string& pred) const {
    auto it = predicates.find(pred);
    if (it == predicates.end()) throw UnknownPredicateError(pred);
    return it->second;
}

void Signature::register_complement(const std::string& base, const std::string& bar) {
    auto existing = complement_of(base);
    if (existing) {
        if (*existing != bar)
            throw NotCoherentError("conflicting complement for " + base);
        return;
    }
    if (complement_of(bar))
        throw NotCoherentError("conflicting complement for " + bar);
    if (arity(base) != arity(bar))
        throw NotCoherentError("complement pair " + base + "/" + bar + " differs in arity");
    complements[base] = bar;
}

std::optional<std::string> Signature::complement_of(const std::string& pred) const {
    auto it = complements.find(pred);
    if (it != complements.end()) return it->second;
    for (const auto& [base, bar] : complements)
        if (bar == pred) return base;
    return std::nullopt;
}

bool Signature::is_complement_pair(const std::string& a, const std::string& b) const {
    auto c = complement_of(a);
    return c && *c == b;
}

const CoherentFormula* Theory::find_axiom(const std::string& name) const {
    for (const auto& ax : axioms)
        if (ax.name == name) return &ax;
    return nullptr;
}

AxiomOrigin Theory::origin(const std::string& name) const {
    auto it = origins.find(name);
    return it == origins.end() ? AxiomOrigin::User : it->second;
}

void Theory::add_axiom(CoherentFormula f, AxiomOrigin origin) {
    if (find_axiom(f.name))
        throw NotCoherentError("duplicate axiom name: " + f.name);
    if (origin != AxiomOrigin::User) origins[f.name] = origin;
    axioms.push_back(std::move(f));
}

Atom apply_substitution(const Atom& a, const Substitution& s) {
    Atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) {
        if (t.is_var()) {
            auto it = s.bindings.find(t.name);
            if (it == s.bindings.end()) throw UnboundVariableError(t.name);
            out.args.push_back(Term::constant(it->second));
        } else {
            out.args.push_back(t);
        }
    }
    return out;
}

Conjunction apply_substitution(const Conjunction& c, const Substitution& s) {
    Conjunction out;
    out.atoms.reserve(c.atoms.size());
    for (const Atom& a : c.atoms) out.atoms.push_back(apply_substitution(a, s));
    return out;
}

namespace {
void collect_vars(const Atom& a, std::vector<std::string>& order, std::set<std::string>& seen) {
    for (const Term& t : a.args)
        if (t.is_var() && seen.insert(t.name).second) order.push_back(t.name);
}
} // namespace

std::vector<std::string> free_variables(const Atom& a) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_vars(a, order, seen);
    return order;
}

std::vector<std::string> free_variables(const Conjunction& c) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const Atom& a : c.atoms) collect_vars(a, order, seen);
    return order;
}

std::vector<std::string> free_variables(const CoherentFormula& f) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (const Atom& a : f.premises) collect_vars(a, order, seen);
    for (const Conjunction& d : f.disjuncts)
        for (const Atom& a : d.atoms) collect_vars(a, order, seen);
    return order;
}

CoherentFormula rename_apart(const CoherentFormula& f, const std::set<std::string>& avoid) {
    std::set<std::string> taken = avoid;
    std::map<std::string, std::string> renaming;

    auto fresh_name = [&taken](const std::string& base) {
        if (taken.count(base) == 0) return base;
        for (int i = 1;; ++i) {
            std::string candidate = base + std::to_string(i);
            if (taken.count(candidate) == 0) return candidate;
        }
    };

    CoherentFormula out = f;
    auto rename_list = [&](std::vector<std::string>& vars) {
        for (std::string& v : vars) {
            std::string nv = fresh_name(v);
            renaming[v] = nv;
            taken.insert(nv);
            v = nv;
        }
    };
    rename_list(out.universals);
    rename_list(out.existentials);

    auto rename_atom = [&renaming](Atom& a) {
        for (Term& t : a.args)
            if (t.is_var()) {
                auto it = renaming.find(t.name);
                if (it != renaming.end()) t.name = it->second;
            }
    };
    for (Atom& a : out.premises) rename_atom(a);
    for (Conjunction& d : out.disjuncts)
        for (Atom& a : d.atoms) rename_atom(a);
    return out;
}

void validate(const CoherentFormula& f) {
    std::set<std::string> uni(f.universals.begin(), f.universals.end());
    std::set<std::string> exi(f.existentials.begin(), f.existentials.end());
    if (uni.size() != f.universals.size())
        throw NotCoherentError(f.name + ": duplicate universal variable");
    if (exi.size() != f.existentials.size())
        throw NotCoherentError(f.name + ": duplicate existential variable");
    for (const auto& v : f.existentials)
        if (uni.count(v))
            throw NotCoherentError(f.name + ": variable " + v + " both universal and existential");
    for (const Atom& a : f.premises)
        for (const Term& t : a.args)
            if (t.is_var() && !uni.count(t.name))
                throw NotCoherentError(f.name + ": premise variable " + t.name + " not universal");
    for (const Conjunction& d : f.disjuncts) {
        if (d.atoms.empty())
            throw NotCoherentError(f.name + ": empty conjunction in conclusion");
        for (const Atom& a : d.atoms)
            for (const Term& t : a.args)
                if (t.is_var() && !uni.count(t.name) && !exi.count(t.name))
                    throw NotCoherentError(f.name + ": conclusion variable " + t.name +
                                           " is not quantified");
    }
}

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
    if (a.args.size() == 2 && (a.predicate == Signature::kEq || a.predicate == Signature::kNeq)) {
        const char* op = a.predicate == Signature::kEq ? " = " : " != ";
        return to_string(a.args[0]) + op + to_string(a.args[1]);
    }
    std::string out = a.predicate + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(a.args[i]);
    }
    return out + ")";
}

std::string to_string(const Conjunction& c) {
    std::string out;
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        if (i) out += " /\\ ";
        out += to_string(c.atoms[i]);
    }
    return out;
}

std::string to_string(const CoherentFormula& f) {
    std::string out;
    if (!f.universals.empty()) {
        out += "! [";
        for (std::size_t i = 0; i < f.universals.size(); ++i) {
            if (i) out += ",";
            out += f.universals[i];
        }
        out += "] : ";
    }
    if (f.premises.empty()) {
        out += "T";
    } else {
        for (std::size_t i = 0; i < f.premises.size(); ++i) {
            if (i) out += " /\\ ";
            out += to_string(f.premises[i]);
        }
    }
    out += " => ";
    if (!f.existentials.empty()) {
        out += "? [";
        for (std::size_t i = 0; i < f.existentials.size(); ++i) {
            if (i) out += ",";
            out += f.existentials[i];
        }
        out += "] : ";
    }
    if (f.disjuncts.empty()) {
        out += "_|_";
    } else {
        for (std::size_t i = 0; i < f.disjuncts.size(); ++i) {
            if (i) out += " \\/ ";
            bool paren = f.disjuncts.size() > 1 && f.disjuncts[i].atoms.size() > 1;
            if (paren) out += "(";
            out += to_string(f.disjuncts[i]);
            if (paren) out += ")";
        }
    }
    return out;
}

} // namespace geoproof::formula
