#include "geoproof/proofdoc.hpp"

#include <map>
#include <set>

#include "geoproof/error.hpp"

namespace geoproof::proofdoc {

using formula::Atom;
using formula::CoherentFormula;
using formula::Conjunction;
using formula::Signature;
using formula::Term;
using formula::Theory;
using prover::CaseBranch;
using prover::Proof;
using prover::ProofStep;

bool is_simple_axiom(const CoherentFormula& ax) {
    return ax.premises.size() == 1 && ax.existentials.empty() && ax.disjuncts.size() == 1;
}

namespace {

struct Style {
    std::string conj;
    std::string disj;
    std::string bottom;
    std::string maps_to;
    std::string neq;
    std::string eq;
    std::string exists_open;  // before variable list
    std::string exists_close; // after variable list

    static Style plain() { return {" /\\ ", " \\/ ", "_|_", " -> ", " != ", " = ", "? [", "] : "}; }
    static Style latexish() {
        return {" \\wedge ", " \\vee ", "\\bot", " \\mapsto ", " \\neq ", " = ", "\\exists ", ".\\ "};
    }
};

struct Renderer {
    const Theory& theory;
    const Proof& proof;
    RenderOptions opts;
    Style style;

    int line_number = 1;
    std::string out;
    // ground fact -> citation text (a visible step's conclusion, an intro
    // fact, or a case hypothesis)
    std::map<Atom, std::string> citation;

    std::string atom_text(const Atom& a) const {
        if (a.args.size() == 2 &&
            (a.predicate == Signature::kEq || a.predicate == Signature::kNeq)) {
            const std::string& op = a.predicate == Signature::kEq ? style.eq : style.neq;
            return a.args[0].name + op + a.args[1].name;
        }
        std::string s = a.predicate + "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) s += ", ";
            s += a.args[i].name;
        }
        return s + ")";
    }

    std::string conjunction_text(const Conjunction& c) const {
        std::string s;
        for (std::size_t i = 0; i < c.atoms.size(); ++i) {
            if (i) s += style.conj;
            s += atom_text(c.atoms[i]);
        }
        return s;
    }

    std::string disjunction_text(const std::vector<Conjunction>& ds) const {
        if (ds.empty()) return style.bottom;
        std::string s;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            if (i) s += style.disj;
            bool paren = ds.size() > 1 && ds[i].atoms.size() > 1;
            s += paren ? "(" + conjunction_text(ds[i]) + ")" : conjunction_text(ds[i]);
        }
        return s;
    }

    std::string goal_text() const {
        std::string s;
        if (!proof.goal.existentials.empty()) {
            s += style.exists_open;
            for (std::size_t i = 0; i < proof.goal.existentials.size(); ++i) {
                if (i) s += ",";
                s += proof.goal.existentials[i];
            }
            s += style.exists_close;
        }
        s += disjunction_text(proof.goal.disjuncts);
        return s;
    }

    void emit(int indent, const std::string& text) {
        out += std::string(indent, ' ') + std::to_string(line_number++) + ". " + text + "\n";
    }

    std::string cite(const Atom& fact) const {
        auto it = citation.find(fact);
        return it == citation.end() ? atom_text(fact) : it->second;
    }

    void header() {
        if (!proof.intro.constants.empty()) {
            out += "Consider arbitrary ";
            for (std::size_t i = 0; i < proof.intro.constants.size(); ++i) {
                if (i) out += ", ";
                out += proof.intro.constants[i];
            }
            if (!proof.intro.assumed.empty()) {
                out += " such that: ";
                for (std::size_t i = 0; i < proof.intro.assumed.size(); ++i) {
                    if (i) out += ", ";
                    out += atom_text(proof.intro.assumed[i]);
                }
            }
            out += ". ";
        }
        out += "It should be proved that " + goal_text() + ".\n";
        for (const Atom& a : proof.intro.assumed) citation.emplace(a, atom_text(a));
    }

    bool hidden(const ProofStep& step) const {
        if (!opts.hide_simple_axioms || step.kind != ProofStep::Kind::MP) return false;
        const CoherentFormula* ax = theory.find_axiom(step.axiom);
        return ax && is_simple_axiom(*ax);
    }

    std::string mp_sources(const ProofStep& step, const CoherentFormula& ax) const {
        std::string s;
        for (std::size_t i = 0; i < ax.premises.size(); ++i) {
            if (i) s += ", ";
            s += cite(apply_substitution(ax.premises[i], step.instantiation));
        }
        return s;
    }

    std::string instantiation_text(const ProofStep& step, const CoherentFormula& ax) const {
        std::string s;
        for (std::size_t i = 0; i < ax.universals.size(); ++i) {
            if (i) s += ", ";
            const std::string& v = ax.universals[i];
            s += v + style.maps_to + step.instantiation.bindings.at(v);
        }
        return s;
    }

    void render_mp(const ProofStep& step, int indent) {
        const CoherentFormula* ax = theory.find_axiom(step.axiom);
        if (!ax) throw Error("render: unknown axiom " + step.axiom);

        std::string facts = disjunction_text(step.concluded);
        std::string line;
        if (!step.witnesses.empty()) {
            std::string ws;
            for (std::size_t i = 0; i < step.witnesses.size(); ++i) {
                if (i) ws += ", ";
                ws += step.witnesses[i];
            }
            line = "Let " + ws + " be such that " + facts;
        } else {
            line = facts;
        }
        line += " (by MP";
        if (!ax->premises.empty()) line += ", from " + mp_sources(step, *ax);
        line += " using axiom " + step.axiom;
        if (!ax->universals.empty()) line += "; instantiation: " + instantiation_text(step, *ax);
        line += ")";
        emit(indent, line);

        if (step.concluded.size() == 1)
            for (const Atom& a : step.concluded[0].atoms) citation[a] = facts;
    }

    void attribute_hidden(const ProofStep& step, const CoherentFormula& ax) {
        // Simple axioms have one premise; conclusions inherit its citation.
        Atom premise = apply_substitution(ax.premises[0], step.instantiation);
        std::string source = cite(premise);
        for (const Conjunction& d : step.concluded)
            for (const Atom& a : d.atoms) citation[a] = source;
    }

    void render_steps(const std::vector<ProofStep>& steps, int indent) {
        for (const ProofStep& step : steps) {
            switch (step.kind) {
                case ProofStep::Kind::MP: {
                    if (hidden(step)) {
                        const CoherentFormula* ax = theory.find_axiom(step.axiom);
                        attribute_hidden(step, *ax);
                    } else {
                        render_mp(step, indent);
                    }
                    break;
                }
                case ProofStep::Kind::CaseSplit: {
                    for (const CaseBranch& branch : step.cases) {
                        emit(indent, "Case " + conjunction_text(branch.facts) + ":");
                        auto saved = citation;
                        for (const Atom& a : branch.facts.atoms) citation[a] = atom_text(a);
                        render_steps(branch.steps, indent + 1);
                        citation = std::move(saved);
                    }
                    break;
                }
                case ProofStep::Kind::QedAssumption:
                    emit(indent, "Proved by assumption! (by QEDas)");
                    break;
                case ProofStep::Kind::QedContradiction:
                    emit(indent, "Contradiction! (by QEDefq)");
                    break;
                case ProofStep::Kind::QedCaseSplit: {
                    // cite the case hypotheses of the split this leaf closes
                    std::string by;
                    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
                        if (it->kind == ProofStep::Kind::CaseSplit) {
                            for (std::size_t i = 0; i < it->cases.size(); ++i) {
                                if (i) by += ", ";
                                by += conjunction_text(it->cases[i].facts);
                            }
                            break;
                        }
                    }
                    emit(indent, "Proved by case split! (by QEDcs, by " + by + ")");
                    break;
                }
            }
        }
    }
};

} // namespace

std::string render_text(const Proof& p, const Theory& t, const RenderOptions& opts) {
    Renderer r{t, p, opts,
               opts.format == RenderOptions::Format::Plain ? Style::plain() : Style::latexish()};
    r.header();
    r.render_steps(p.steps, 0);
    return r.out;
}

namespace {

void collect_used(const std::vector<ProofStep>& steps, const Theory& t, bool include_simple,
                  std::vector<std::string>& order, std::set<std::string>& seen) {
    for (const ProofStep& step : steps) {
        if (step.kind == ProofStep::Kind::MP) {
            bool include = true;
            if (!include_simple) {
                const CoherentFormula* ax = t.find_axiom(step.axiom);
                if (t.generated(step.axiom) || (ax && is_simple_axiom(*ax))) include = false;
            }
            if (include && seen.insert(step.axiom).second) order.push_back(step.axiom);
        }
        if (step.kind == ProofStep::Kind::CaseSplit)
            for (const CaseBranch& branch : step.cases)
                collect_used(branch.steps, t, include_simple, order, seen);
    }
}

} // namespace

std::vector<std::string> used_axioms(const Proof& p, const Theory& t, bool include_simple) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    collect_used(p.steps, t, include_simple, order, seen);
    return order;
}

} // namespace geoproof::proofdoc
