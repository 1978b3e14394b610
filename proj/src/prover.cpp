#include "geoproof/prover.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <functional>

#include "geoproof/error.hpp"
#include "json.hpp"

namespace geoproof::prover {

using formula::Atom;
using formula::CoherentFormula;
using formula::Conjunction;
using formula::Substitution;
using formula::Term;
using formula::Theory;

// ---------------------------------------------------------------- FactBase

std::size_t FactBase::AtomHash::operator()(const Atom& a) const {
    std::size_t h = std::hash<std::string>{}(a.predicate);
    for (const Term& t : a.args) {
        h ^= std::hash<std::string>{}(t.name) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

bool FactBase::contains(const Atom& fact) const { return facts_.count(fact) != 0; }

bool FactBase::add(const Atom& fact) {
    if (!facts_.insert(fact).second) return false;
    for (const Term& t : fact.args) ensure_constant(t.name);
    by_predicate_[fact.predicate].push_back(fact);
    trail_.push_back(fact);
    return true;
}

std::size_t FactBase::ensure_constant(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    std::size_t idx = constants_.size();
    constants_.push_back(name);
    index_[name] = idx;
    return idx;
}

std::size_t FactBase::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? constants_.size() : it->second;
}

const std::vector<Atom>& FactBase::with_predicate(const std::string& pred) const {
    static const std::vector<Atom> empty;
    auto it = by_predicate_.find(pred);
    return it == by_predicate_.end() ? empty : it->second;
}

void FactBase::rewind(const Mark& m) {
    while (trail_.size() > m.facts) {
        const Atom& fact = trail_.back();
        facts_.erase(fact);
        auto& vec = by_predicate_[fact.predicate];
        vec.pop_back();
        trail_.pop_back();
    }
    while (constants_.size() > m.constants) {
        index_.erase(constants_.back());
        constants_.pop_back();
    }
}

// ---------------------------------------------------------------- skolemize

namespace {

void collect_constants(const CoherentFormula& f, std::set<std::string>& out) {
    auto scan = [&out](const Atom& a) {
        for (const Term& t : a.args)
            if (!t.is_var()) out.insert(t.name);
    };
    for (const Atom& a : f.premises) scan(a);
    for (const Conjunction& d : f.disjuncts)
        for (const Atom& a : d.atoms) scan(a);
}

// a, b, ..., z, a1, b1, ... skipping names in `taken`.
std::string next_sequential_name(std::set<std::string>& taken) {
    for (int round = 0;; ++round) {
        for (char c = 'a'; c <= 'z'; ++c) {
            std::string candidate(1, c);
            if (round > 0) candidate += std::to_string(round);
            if (taken.insert(candidate).second) return candidate;
        }
    }
}

std::string next_witness_name(std::set<std::string>& taken) {
    for (int i = 0;; ++i) {
        std::string candidate = i == 0 ? "w" : "w" + std::to_string(i);
        if (taken.insert(candidate).second) return candidate;
    }
}

} // namespace

std::pair<IntroStep, Goal> skolemize_conjecture(const CoherentFormula& c,
                                                const std::set<std::string>& avoid) {
    std::set<std::string> taken = avoid;
    collect_constants(c, taken);

    IntroStep intro;
    Substitution subst;
    for (const std::string& v : c.universals) {
        std::string name = next_sequential_name(taken);
        intro.constants.push_back(name);
        subst.bindings[v] = name;
    }
    for (const Atom& a : c.premises) intro.assumed.push_back(apply_substitution(a, subst));

    Goal goal;
    goal.existentials = c.existentials;
    for (const Conjunction& d : c.disjuncts) {
        Conjunction inst;
        for (const Atom& a : d.atoms) {
            Atom mapped = a;
            for (Term& t : mapped.args) {
                if (!t.is_var()) continue;
                auto it = subst.bindings.find(t.name);
                if (it != subst.bindings.end()) t = Term::constant(it->second);
            }
            inst.atoms.push_back(std::move(mapped));
        }
        goal.disjuncts.push_back(std::move(inst));
    }
    return {intro, goal};
}

// ------------------------------------------------------ instance enumeration

bool is_closure_axiom(const CoherentFormula& ax) {
    return ax.existentials.empty() && ax.disjuncts.size() <= 1;
}

namespace {

bool match_term(const Term& pattern, const Term& fact_term,
                std::map<std::string, std::string>& bind) {
    if (!pattern.is_var()) return pattern.name == fact_term.name;
    auto it = bind.find(pattern.name);
    if (it != bind.end()) return it->second == fact_term.name;
    bind[pattern.name] = fact_term.name;
    return true;
}

void match_premises(const FactBase& fb, const CoherentFormula& ax, std::size_t premise_index,
                    std::map<std::string, std::string>& bind,
                    std::vector<std::map<std::string, std::string>>& out) {
    if (premise_index == ax.premises.size()) {
        out.push_back(bind);
        return;
    }
    const Atom& premise = ax.premises[premise_index];
    for (const Atom& fact : fb.with_predicate(premise.predicate)) {
        if (fact.args.size() != premise.args.size()) continue;
        auto saved = bind;
        bool ok = true;
        for (std::size_t i = 0; i < premise.args.size() && ok; ++i)
            ok = match_term(premise.args[i], fact.args[i], bind);
        if (ok) match_premises(fb, ax, premise_index + 1, bind, out);
        bind = std::move(saved);
    }
}

bool instance_productive(const FactBase& fb, const CoherentFormula& ax, const Substitution& s) {
    if (ax.disjuncts.empty()) return true;       // concludes falsum
    if (!ax.existentials.empty()) return true;   // witnesses are fresh
    for (const Conjunction& d : ax.disjuncts) {
        for (const Atom& a : d.atoms) {
            if (!fb.contains(apply_substitution(a, s))) return true;
        }
    }
    return false;
}

} // namespace

std::vector<Substitution> applicable_instances(const FactBase& fb, const CoherentFormula& ax) {
    std::vector<std::map<std::string, std::string>> partial;
    {
        std::map<std::string, std::string> bind;
        match_premises(fb, ax, 0, bind, partial);
    }

    // Universals not fixed by premise matching range over every constant.
    std::vector<std::string> unbound_template;
    std::vector<Substitution> complete;
    for (auto& bind : partial) {
        std::vector<std::string> unbound;
        for (const std::string& v : ax.universals)
            if (!bind.count(v)) unbound.push_back(v);
        std::function<void(std::size_t)> expand = [&](std::size_t i) {
            if (i == unbound.size()) {
                complete.push_back(Substitution{std::map<std::string, std::string>(bind)});
                return;
            }
            for (const std::string& c : fb.constants()) {
                bind[unbound[i]] = c;
                expand(i + 1);
            }
            bind.erase(unbound[i]);
        };
        expand(0);
    }

    // Order lexicographically over constant creation indices in universal order.
    std::sort(complete.begin(), complete.end(), [&](const Substitution& a, const Substitution& b) {
        for (const std::string& v : ax.universals) {
            std::size_t ia = fb.index_of(a.bindings.at(v));
            std::size_t ib = fb.index_of(b.bindings.at(v));
            if (ia != ib) return ia < ib;
        }
        return false;
    });
    complete.erase(std::unique(complete.begin(), complete.end()), complete.end());

    std::vector<Substitution> out;
    for (const Substitution& s : complete)
        if (instance_productive(fb, ax, s)) out.push_back(s);
    return out;
}

// ---------------------------------------------------------------- search

namespace {

struct Searcher {
    const Theory& theory;
    const Goal& goal;
    SearchLimits limits;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    FactBase fb;
    std::set<std::string> used_names; // for witness freshness

    std::vector<const CoherentFormula*> closure_axioms;
    std::vector<const CoherentFormula*> milestone_axioms; // excluded-middle last

    bool check_time() {
        if (timed_out) return false;
        if (std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return false;
        }
        return true;
    }

    // Saturate closure axioms semi-naively: only axioms with a premise
    // predicate among the newly added facts (or any premise-free axiom when
    // constants appeared) can gain instances, assuming the inherited fact
    // base was already a fixpoint. Returns true if falsum was derived.
    bool saturate(std::vector<ProofStep>& steps, std::set<std::string> dirty,
                  bool new_constants) {
        while (!dirty.empty() || new_constants) {
            std::set<std::string> next_dirty;
            for (const CoherentFormula* ax : closure_axioms) {
                bool relevant = new_constants && ax->premises.empty();
                for (const Atom& p : ax->premises)
                    if (dirty.count(p.predicate)) relevant = true;
                if (!relevant) continue;
                for (const Substitution& s : applicable_instances(fb, *ax)) {
                    ProofStep step;
                    step.kind = ProofStep::Kind::MP;
                    step.axiom = ax->name;
                    step.instantiation = s;
                    bool added = false;
                    for (const Conjunction& d : ax->disjuncts) {
                        Conjunction ground = apply_substitution(d, s);
                        for (const Atom& a : ground.atoms) {
                            if (fb.add(a)) {
                                added = true;
                                next_dirty.insert(a.predicate);
                            }
                        }
                        step.concluded.push_back(std::move(ground));
                    }
                    if (ax->disjuncts.empty()) {
                        steps.push_back(std::move(step));
                        return true; // falsum
                    }
                    if (added) steps.push_back(std::move(step));
                }
                if (!check_time()) return false;
            }
            dirty = std::move(next_dirty);
            new_constants = false;
        }
        return false;
    }

    std::set<std::string> all_predicates() const {
        std::set<std::string> out;
        for (const CoherentFormula* ax : closure_axioms)
            for (const Atom& p : ax->premises) out.insert(p.predicate);
        return out;
    }

    // Smallest goal substitution in enumeration order, disjuncts first.
    bool match_goal(int& disjunct_out, Substitution& subst_out) {
        for (std::size_t d = 0; d < goal.disjuncts.size(); ++d) {
            Substitution s;
            if (match_goal_disjunct(goal.disjuncts[d], 0, s)) {
                disjunct_out = static_cast<int>(d);
                subst_out = s;
                return true;
            }
        }
        return false;
    }

    bool match_goal_disjunct(const Conjunction& disjunct, std::size_t var_index, Substitution& s) {
        if (var_index == goal.existentials.size()) {
            for (const Atom& a : disjunct.atoms)
                if (!fb.contains(apply_substitution(a, s))) return false;
            return true;
        }
        const std::string& v = goal.existentials[var_index];
        for (const std::string& c : fb.constants()) {
            s.bindings[v] = c;
            if (match_goal_disjunct(disjunct, var_index + 1, s)) return true;
        }
        s.bindings.erase(v);
        return false;
    }

    // Depth-first proof of the current branch with at most `budget` more
    // interesting (witness/split) MP steps. Appends to `steps`; on failure the
    // caller rewinds. Returns true if the branch closed.
    bool close_branch(int budget, std::vector<ProofStep>& steps, std::set<std::string> dirty,
                      bool new_constants) {
        if (!check_time()) return false;
        if (saturate(steps, std::move(dirty), new_constants)) {
            ProofStep qed;
            qed.kind = ProofStep::Kind::QedContradiction;
            steps.push_back(qed);
            return true;
        }
        if (timed_out) return false;

        {
            int disjunct = -1;
            Substitution s;
            if (match_goal(disjunct, s)) {
                ProofStep qed;
                qed.kind = ProofStep::Kind::QedAssumption;
                qed.goal_disjunct = disjunct;
                qed.goal_substitution = s;
                steps.push_back(qed);
                return true;
            }
        }

        if (budget <= 0) return false;

        for (const CoherentFormula* ax : milestone_axioms) {
            for (const Substitution& s : applicable_instances(fb, *ax)) {
                if (!check_time()) return false;
                if (!ax->existentials.empty() &&
                    fb.constant_count() + ax->existentials.size() >
                        static_cast<std::size_t>(limits.max_constants))
                    continue;

                FactBase::Mark mark = fb.mark();
                std::size_t steps_before = steps.size();
                std::vector<std::string> created_names;

                ProofStep step;
                step.kind = ProofStep::Kind::MP;
                step.axiom = ax->name;
                step.instantiation = s;
                Substitution full = s;
                for (const std::string& e : ax->existentials) {
                    std::string w = next_witness_name(used_names);
                    created_names.push_back(w);
                    step.witnesses.push_back(w);
                    full.bindings[e] = w;
                    fb.ensure_constant(w);
                }
                for (const Conjunction& d : ax->disjuncts)
                    step.concluded.push_back(apply_substitution(d, full));

                // A split with a case already contained in the facts is never
                // part of a depth-minimal proof: that case's subproof would
                // close this branch directly, without the split.
                if (step.concluded.size() >= 2) {
                    bool contained_case = false;
                    for (const Conjunction& d : step.concluded) {
                        bool all = true;
                        for (const Atom& a : d.atoms) all = all && fb.contains(a);
                        if (all) contained_case = true;
                    }
                    if (contained_case) {
                        fb.rewind(mark);
                        for (const std::string& n : created_names) used_names.erase(n);
                        continue;
                    }
                }

                bool ok = false;
                bool grew = !step.witnesses.empty();
                if (step.concluded.empty()) {
                    // falsum conclusion (possibly with vacuous witnesses)
                    steps.push_back(std::move(step));
                    ProofStep qed;
                    qed.kind = ProofStep::Kind::QedContradiction;
                    steps.push_back(qed);
                    ok = true;
                } else if (step.concluded.size() == 1) {
                    std::set<std::string> delta;
                    for (const Atom& a : step.concluded[0].atoms) {
                        fb.add(a);
                        delta.insert(a.predicate);
                    }
                    steps.push_back(std::move(step));
                    ok = close_branch(budget - 1, steps, std::move(delta), grew);
                } else {
                    std::vector<Conjunction> concluded = step.concluded;
                    steps.push_back(std::move(step));
                    int mp_index = static_cast<int>(steps.size()) - 1;
                    ProofStep split;
                    split.kind = ProofStep::Kind::CaseSplit;
                    split.from_step = mp_index;
                    ok = true;
                    for (const Conjunction& case_facts : concluded) {
                        FactBase::Mark case_mark = fb.mark();
                        CaseBranch branch;
                        branch.facts = case_facts;
                        std::set<std::string> delta;
                        for (const Atom& a : case_facts.atoms) {
                            fb.add(a);
                            delta.insert(a.predicate);
                        }
                        if (!close_branch(budget - 1, branch.steps, std::move(delta), grew)) {
                            ok = false;
                            fb.rewind(case_mark);
                            break;
                        }
                        fb.rewind(case_mark);
                        split.cases.push_back(std::move(branch));
                    }
                    if (ok) {
                        steps.push_back(std::move(split));
                        ProofStep qed;
                        qed.kind = ProofStep::Kind::QedCaseSplit;
                        steps.push_back(qed);
                    }
                }

                if (ok) return true;
                fb.rewind(mark);
                steps.resize(steps_before);
                for (const std::string& n : created_names) used_names.erase(n);
                if (timed_out) return false;
            }
        }
        return false;
    }
};

// ------------------------------------------------------------- dead steps

// Backwards mark-and-sweep: keep only steps whose conclusions feed the leaf
// requirements (goal match / falsum / case-split sources), transitively.
// Saturation records every fired instance; most are irrelevant to the proof.
struct Pruner {
    const Theory& theory;
    const Goal& goal;

    struct BranchNeeds {
        std::set<Atom> facts;
        bool bottom = false;
    };

    BranchNeeds prune_branch(std::vector<ProofStep>& steps) {
        std::set<Atom> needed;
        bool want_bottom = false;
        std::set<int> keep_indices;

        for (int i = static_cast<int>(steps.size()) - 1; i >= 0; --i) {
            ProofStep& step = steps[i];
            switch (step.kind) {
                case ProofStep::Kind::QedCaseSplit:
                    keep_indices.insert(i);
                    break;
                case ProofStep::Kind::QedAssumption: {
                    keep_indices.insert(i);
                    const Conjunction& d = goal.disjuncts[step.goal_disjunct];
                    for (const Atom& a : d.atoms) {
                        Atom ground = a;
                        for (Term& term : ground.args)
                            if (term.is_var())
                                term = Term::constant(
                                    step.goal_substitution.bindings.at(term.name));
                        needed.insert(std::move(ground));
                    }
                    break;
                }
                case ProofStep::Kind::QedContradiction:
                    keep_indices.insert(i);
                    want_bottom = true;
                    break;
                case ProofStep::Kind::CaseSplit: {
                    keep_indices.insert(i);
                    keep_indices.insert(step.from_step);
                    for (CaseBranch& branch : step.cases) {
                        BranchNeeds sub = prune_branch(branch.steps);
                        for (const Atom& a : branch.facts.atoms) sub.facts.erase(a);
                        needed.insert(sub.facts.begin(), sub.facts.end());
                        want_bottom |= sub.bottom;
                    }
                    break;
                }
                case ProofStep::Kind::MP: {
                    bool keep = keep_indices.count(i) != 0; // case-split source
                    if (!keep && want_bottom && step.concluded.empty()) {
                        keep = true;
                        want_bottom = false;
                    }
                    if (!keep && step.concluded.size() == 1) {
                        for (const Atom& a : step.concluded[0].atoms)
                            if (needed.count(a)) keep = true;
                    }
                    if (keep) {
                        keep_indices.insert(i);
                        for (const Conjunction& d : step.concluded)
                            for (const Atom& a : d.atoms) needed.erase(a);
                        const CoherentFormula* ax = theory.find_axiom(step.axiom);
                        if (ax)
                            for (const Atom& a : ax->premises)
                                needed.insert(apply_substitution(a, step.instantiation));
                    }
                    break;
                }
            }
        }

        std::vector<ProofStep> kept;
        std::vector<int> new_index(steps.size(), -1);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (keep_indices.count(static_cast<int>(i))) {
                new_index[i] = static_cast<int>(kept.size());
                kept.push_back(std::move(steps[i]));
            }
        }
        for (ProofStep& s : kept)
            if (s.kind == ProofStep::Kind::CaseSplit) s.from_step = new_index[s.from_step];
        steps = std::move(kept);
        return {std::move(needed), want_bottom};
    }
};

int count_mp(const std::vector<ProofStep>& steps) {
    int n = 0;
    for (const ProofStep& s : steps) {
        if (s.kind == ProofStep::Kind::MP) ++n;
        if (s.kind == ProofStep::Kind::CaseSplit)
            for (const CaseBranch& c : s.cases) n += count_mp(c.steps);
    }
    return n;
}

int milestone_depth(const Theory& t, const std::vector<ProofStep>& steps) {
    int before_split = 0;
    int best = 0;
    for (const ProofStep& s : steps) {
        if (s.kind == ProofStep::Kind::MP) {
            const CoherentFormula* ax = t.find_axiom(s.axiom);
            if (ax && !is_closure_axiom(*ax)) ++before_split;
        }
        if (s.kind == ProofStep::Kind::CaseSplit) {
            for (const CaseBranch& c : s.cases)
                best = std::max(best, milestone_depth(t, c.steps));
        }
    }
    return before_split + best;
}

} // namespace

ProveResult prove(const Theory& t, const CoherentFormula& c, const SearchLimits& lim) {
    std::set<std::string> avoid;
    for (const CoherentFormula& ax : t.axioms) collect_constants(ax, avoid);
    auto [intro, goal] = skolemize_conjecture(c, avoid);

    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(lim.timeout_seconds));

    for (int depth = 0; depth <= lim.max_mp_steps; ++depth) {
        Searcher searcher{t, goal, lim, deadline};
        for (const CoherentFormula& ax : t.axioms) {
            if (is_closure_axiom(ax)) {
                searcher.closure_axioms.push_back(&ax);
            } else if (t.origin(ax.name) == formula::AxiomOrigin::ExcludedMiddle) {
                // appended after the loop
            } else {
                searcher.milestone_axioms.push_back(&ax);
            }
        }
        for (const CoherentFormula& ax : t.axioms)
            if (!is_closure_axiom(ax) && t.origin(ax.name) == formula::AxiomOrigin::ExcludedMiddle)
                searcher.milestone_axioms.push_back(&ax);

        for (const std::string& name : intro.constants) {
            searcher.used_names.insert(name);
            searcher.fb.ensure_constant(name);
        }
        for (const std::string& name : avoid) searcher.used_names.insert(name);
        for (const Atom& a : intro.assumed) searcher.fb.add(a);
        // goal constants participate in matching and freshness
        for (const Conjunction& d : goal.disjuncts)
            for (const Atom& a : d.atoms)
                for (const Term& term : a.args)
                    if (!term.is_var()) {
                        searcher.fb.ensure_constant(term.name);
                        searcher.used_names.insert(term.name);
                    }

        std::vector<ProofStep> steps;
        bool closed = searcher.close_branch(depth, steps, searcher.all_predicates(), true);
        if (searcher.timed_out) return Unprovable{Unprovable::Reason::Timeout};
        if (!closed) continue;

        Proof proof;
        proof.conjecture_name = c.name;
        proof.intro = intro;
        proof.goal = goal;
        proof.steps = std::move(steps);

        Pruner pruner{t, proof.goal};
        pruner.prune_branch(proof.steps);

        proof.statistics.mp_count = count_mp(proof.steps);
        proof.statistics.max_depth = milestone_depth(t, proof.steps);
        return proof;
    }
    return Unprovable{Unprovable::Reason::LimitExhausted};
}

// ---------------------------------------------------------------- checking

namespace {

struct Checker {
    const Theory& theory;
    const Goal& goal;
    FactBase fb;
    std::set<std::string> used_names;
    int step_counter = 0;
    Invalid failure;
    bool failed = false;

    bool fail(int index, const std::string& reason) {
        if (!failed) failure = Invalid{index, reason};
        failed = true;
        return false;
    }

    // Returns true when the branch replays and closes.
    bool walk(const std::vector<ProofStep>& steps, bool bottom) {
        if (steps.empty()) return fail(step_counter, "branch does not end in a qed step");
        std::map<int, const ProofStep*> local_mps; // index in this list -> MP
        for (std::size_t i = 0; i < steps.size(); ++i) {
            const ProofStep& step = steps[i];
            int index = step_counter++;
            bool last = i + 1 == steps.size();
            switch (step.kind) {
                case ProofStep::Kind::MP: {
                    if (!replay_mp(step, index)) return false;
                    local_mps[static_cast<int>(i)] = &step;
                    if (step.concluded.empty()) bottom = true;
                    break;
                }
                case ProofStep::Kind::CaseSplit: {
                    auto it = local_mps.find(step.from_step);
                    if (it == local_mps.end())
                        return fail(index, "case split source is not an earlier MP in the branch");
                    const ProofStep& src = *it->second;
                    if (src.concluded.size() < 2)
                        return fail(index, "case split source is not disjunctive");
                    if (step.cases.size() != src.concluded.size())
                        return fail(index, "case split does not cover all disjuncts");
                    for (std::size_t k = 0; k < step.cases.size(); ++k) {
                        if (!(step.cases[k].facts == src.concluded[k]))
                            return fail(index, "case facts differ from disjunct " +
                                                   std::to_string(k));
                        FactBase::Mark m = fb.mark();
                        for (const Atom& a : step.cases[k].facts.atoms) fb.add(a);
                        if (!walk(step.cases[k].steps, bottom)) return false;
                        fb.rewind(m);
                    }
                    break;
                }
                case ProofStep::Kind::QedAssumption: {
                    if (!last) return fail(index, "steps after a qed leaf");
                    if (step.goal_disjunct < 0 ||
                        step.goal_disjunct >= static_cast<int>(goal.disjuncts.size()))
                        return fail(index, "goal disjunct index out of range");
                    std::set<std::string> dom;
                    for (const auto& [v, c] : step.goal_substitution.bindings) {
                        dom.insert(v);
                        if (!fb.has_constant(c))
                            return fail(index, "goal substitution uses unknown constant " + c);
                    }
                    std::set<std::string> expected(goal.existentials.begin(),
                                                   goal.existentials.end());
                    if (dom != expected)
                        return fail(index, "goal substitution does not bind the existentials");
                    const Conjunction& d = goal.disjuncts[step.goal_disjunct];
                    for (const Atom& a : d.atoms) {
                        Atom ground = a;
                        for (Term& term : ground.args)
                            if (term.is_var())
                                term = Term::constant(
                                    step.goal_substitution.bindings.at(term.name));
                        if (!fb.contains(ground))
                            return fail(index, "goal fact not derived: " + to_string(ground));
                    }
                    return true;
                }
                case ProofStep::Kind::QedContradiction: {
                    if (!last) return fail(index, "steps after a qed leaf");
                    if (!bottom) return fail(index, "no contradiction derived in this branch");
                    return true;
                }
                case ProofStep::Kind::QedCaseSplit: {
                    if (!last) return fail(index, "steps after a qed leaf");
                    if (i == 0 || steps[i - 1].kind != ProofStep::Kind::CaseSplit)
                        return fail(index, "QedCaseSplit does not follow a case split");
                    return true;
                }
            }
        }
        return fail(step_counter, "branch does not end in a qed step");
    }

    bool replay_mp(const ProofStep& step, int index) {
        const CoherentFormula* ax = theory.find_axiom(step.axiom);
        if (!ax) return fail(index, "unknown axiom " + step.axiom);

        std::set<std::string> dom;
        for (const auto& [v, c] : step.instantiation.bindings) {
            dom.insert(v);
            if (!fb.has_constant(c))
                return fail(index, "instantiation uses unknown constant " + c);
        }
        std::set<std::string> expected(ax->universals.begin(), ax->universals.end());
        if (dom != expected)
            return fail(index, "instantiation does not bind exactly the universals");

        for (const Atom& a : ax->premises) {
            Atom ground = apply_substitution(a, step.instantiation);
            if (!fb.contains(ground))
                return fail(index, "premise not available: " + to_string(ground));
        }

        if (step.witnesses.size() != ax->existentials.size())
            return fail(index, "witness count differs from existential count");
        Substitution full = step.instantiation;
        for (std::size_t i = 0; i < step.witnesses.size(); ++i) {
            const std::string& w = step.witnesses[i];
            if (!used_names.insert(w).second)
                return fail(index, "witness " + w + " is not fresh");
            fb.ensure_constant(w);
            full.bindings[ax->existentials[i]] = w;
        }

        std::vector<Conjunction> expected_concluded;
        for (const Conjunction& d : ax->disjuncts)
            expected_concluded.push_back(apply_substitution(d, full));
        if (!(expected_concluded == step.concluded))
            return fail(index, "concluded facts differ from the instantiated axiom");

        if (step.concluded.size() == 1)
            for (const Atom& a : step.concluded[0].atoms) fb.add(a);
        return true;
    }
};

} // namespace

CheckResult check_proof(const Theory& t, const CoherentFormula& c, const Proof& p) {
    std::set<std::string> avoid;
    for (const CoherentFormula& ax : t.axioms) collect_constants(ax, avoid);
    auto [intro, goal] = skolemize_conjecture(c, avoid);

    if (!(intro.constants == p.intro.constants) || !(intro.assumed == p.intro.assumed))
        return Invalid{0, "intro does not match the skolemized conjecture"};
    if (!(goal.existentials == p.goal.existentials))
        return Invalid{0, "goal existentials do not match the conjecture"};
    bool goal_match = goal.disjuncts.size() == p.goal.disjuncts.size();
    for (std::size_t i = 0; goal_match && i < goal.disjuncts.size(); ++i)
        goal_match = goal.disjuncts[i] == p.goal.disjuncts[i];
    if (!goal_match) return Invalid{0, "goal does not match the conjecture"};

    Checker checker{t, goal};
    for (const std::string& name : intro.constants) {
        checker.used_names.insert(name);
        checker.fb.ensure_constant(name);
    }
    for (const std::string& name : avoid) checker.used_names.insert(name);
    for (const Atom& a : intro.assumed) checker.fb.add(a);
    for (const Conjunction& d : goal.disjuncts)
        for (const Atom& a : d.atoms)
            for (const Term& term : a.args)
                if (!term.is_var()) {
                    checker.fb.ensure_constant(term.name);
                    checker.used_names.insert(term.name);
                }

    if (checker.walk(p.steps, false)) return Valid{};
    return checker.failure;
}

bool is_valid(const CheckResult& r) { return std::holds_alternative<Valid>(r); }

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

json atom_to_json(const Atom& a) {
    json j;
    j["predicate"] = a.predicate;
    j["args"] = json::array();
    for (const Term& t : a.args) j["args"].push_back(t.name);
    return j;
}

Atom atom_from_json(const json& j) {
    Atom a;
    a.predicate = j.at("predicate").get<std::string>();
    for (const auto& arg : j.at("args")) {
        std::string name = arg.get<std::string>();
        a.args.push_back(formula::is_variable_name(name) ? Term::var(name)
                                                         : Term::constant(name));
    }
    return a;
}

json conjunction_to_json(const Conjunction& c) {
    json j = json::array();
    for (const Atom& a : c.atoms) j.push_back(atom_to_json(a));
    return j;
}

Conjunction conjunction_from_json(const json& j) {
    Conjunction c;
    for (const auto& a : j) c.atoms.push_back(atom_from_json(a));
    return c;
}

json steps_to_json(const std::vector<ProofStep>& steps);

json step_to_json(const ProofStep& s) {
    json j;
    switch (s.kind) {
        case ProofStep::Kind::MP: {
            j["kind"] = "mp";
            j["axiom"] = s.axiom;
            j["instantiation"] = json::object();
            for (const auto& [v, c] : s.instantiation.bindings) j["instantiation"][v] = c;
            j["witnesses"] = s.witnesses;
            j["concluded"] = json::array();
            for (const Conjunction& d : s.concluded) j["concluded"].push_back(conjunction_to_json(d));
            break;
        }
        case ProofStep::Kind::CaseSplit: {
            j["kind"] = "case_split";
            j["from"] = s.from_step;
            j["cases"] = json::array();
            for (const CaseBranch& c : s.cases) {
                json jc;
                jc["facts"] = conjunction_to_json(c.facts);
                jc["steps"] = steps_to_json(c.steps);
                j["cases"].push_back(jc);
            }
            break;
        }
        case ProofStep::Kind::QedAssumption: {
            j["kind"] = "qed_assumption";
            j["disjunct"] = s.goal_disjunct;
            j["substitution"] = json::object();
            for (const auto& [v, c] : s.goal_substitution.bindings) j["substitution"][v] = c;
            break;
        }
        case ProofStep::Kind::QedContradiction:
            j["kind"] = "qed_contradiction";
            break;
        case ProofStep::Kind::QedCaseSplit:
            j["kind"] = "qed_case_split";
            break;
    }
    return j;
}

json steps_to_json(const std::vector<ProofStep>& steps) {
    json j = json::array();
    for (const ProofStep& s : steps) j.push_back(step_to_json(s));
    return j;
}

std::vector<ProofStep> steps_from_json(const json& j);

ProofStep step_from_json(const json& j) {
    ProofStep s;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "mp") {
        s.kind = ProofStep::Kind::MP;
        s.axiom = j.at("axiom").get<std::string>();
        for (const auto& [v, c] : j.at("instantiation").items())
            s.instantiation.bindings[v] = c.get<std::string>();
        for (const auto& w : j.at("witnesses")) s.witnesses.push_back(w.get<std::string>());
        for (const auto& d : j.at("concluded")) s.concluded.push_back(conjunction_from_json(d));
    } else if (kind == "case_split") {
        s.kind = ProofStep::Kind::CaseSplit;
        s.from_step = j.at("from").get<int>();
        for (const auto& c : j.at("cases")) {
            CaseBranch branch;
            branch.facts = conjunction_from_json(c.at("facts"));
            branch.steps = steps_from_json(c.at("steps"));
            s.cases.push_back(std::move(branch));
        }
    } else if (kind == "qed_assumption") {
        s.kind = ProofStep::Kind::QedAssumption;
        s.goal_disjunct = j.at("disjunct").get<int>();
        for (const auto& [v, c] : j.at("substitution").items())
            s.goal_substitution.bindings[v] = c.get<std::string>();
    } else if (kind == "qed_contradiction") {
        s.kind = ProofStep::Kind::QedContradiction;
    } else if (kind == "qed_case_split") {
        s.kind = ProofStep::Kind::QedCaseSplit;
    } else {
        throw Error("unknown proof step kind: " + kind);
    }
    return s;
}

std::vector<ProofStep> steps_from_json(const json& j) {
    std::vector<ProofStep> out;
    for (const auto& s : j) out.push_back(step_from_json(s));
    return out;
}

} // namespace

std::string proof_to_json(const Proof& p) {
    json j;
    j["conjecture"] = p.conjecture_name;
    j["intro"]["kind"] = "intro";
    j["intro"]["constants"] = p.intro.constants;
    j["intro"]["assumed"] = json::array();
    for (const Atom& a : p.intro.assumed) j["intro"]["assumed"].push_back(atom_to_json(a));
    j["goal"]["existentials"] = p.goal.existentials;
    j["goal"]["disjuncts"] = json::array();
    for (const Conjunction& d : p.goal.disjuncts)
        j["goal"]["disjuncts"].push_back(conjunction_to_json(d));
    j["steps"] = steps_to_json(p.steps);
    j["statistics"]["mp_count"] = p.statistics.mp_count;
    j["statistics"]["max_depth"] = p.statistics.max_depth;
    return j.dump(2) + "\n";
}

Proof proof_from_json(const std::string& text) {
    json j = json::parse(text);
    Proof p;
    p.conjecture_name = j.at("conjecture").get<std::string>();
    for (const auto& c : j.at("intro").at("constants"))
        p.intro.constants.push_back(c.get<std::string>());
    for (const auto& a : j.at("intro").at("assumed")) p.intro.assumed.push_back(atom_from_json(a));
    for (const auto& e : j.at("goal").at("existentials"))
        p.goal.existentials.push_back(e.get<std::string>());
    for (const auto& d : j.at("goal").at("disjuncts"))
        p.goal.disjuncts.push_back(conjunction_from_json(d));
    p.steps = steps_from_json(j.at("steps"));
    p.statistics.mp_count = j.at("statistics").at("mp_count").get<int>();
    p.statistics.max_depth = j.at("statistics").at("max_depth").get<int>();
    return p;
}

} // namespace geoproof::prover
