#include "geoproof/illustrate.hpp"

#include <algorithm>

#include "geoproof/error.hpp"

namespace geoproof::illustrate {

using formula::Atom;
using formula::CoherentFormula;
using formula::Signature;
using formula::Term;
using formula::Theory;
using gcl::Command;
using gcl::Procedure;
using interp::GeoModel;
using interp::GeoPoint;
using interp::InterpRegistry;
using prover::CaseBranch;
using prover::Proof;
using prover::ProofStep;

// ---------------------------------------------------------- branch selection

namespace {

bool subtree_contradictory(const std::vector<ProofStep>& steps) {
    if (steps.empty()) return false;
    const ProofStep& last = steps.back();
    switch (last.kind) {
        case ProofStep::Kind::QedContradiction:
            return true;
        case ProofStep::Kind::QedAssumption:
            return false;
        case ProofStep::Kind::QedCaseSplit: {
            // find the split this leaf closes
            for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
                if (it->kind != ProofStep::Kind::CaseSplit) continue;
                for (const CaseBranch& c : it->cases)
                    if (!subtree_contradictory(c.steps)) return false;
                return true;
            }
            return false;
        }
        default:
            return false;
    }
}

std::optional<bool> eval_case_atom(const Atom& a, const GeoModel& model) {
    for (const Term& t : a.args)
        if (model.points.count(t.name) == 0) return std::nullopt;
    auto pt = [&model](std::size_t i, const Atom& atom) { return model.points.at(atom.args[i].name); };
    if (a.predicate == Signature::kEq && a.args.size() == 2)
        return interp::points_coincide(pt(0, a), pt(1, a), model.tol_branch);
    if (a.predicate == Signature::kNeq && a.args.size() == 2)
        return !interp::points_coincide(pt(0, a), pt(1, a), model.tol_branch);
    if (a.predicate == "col" && a.args.size() == 3)
        return interp::collinear(pt(0, a), pt(1, a), pt(2, a), model.tol_branch);
    if (a.predicate == "ncol" && a.args.size() == 3)
        return !interp::collinear(pt(0, a), pt(1, a), pt(2, a), model.tol_branch);
    if (a.predicate == "betS" && a.args.size() == 3)
        return interp::between_strict(pt(0, a), pt(1, a), pt(2, a), model.tol_branch);
    return std::nullopt;
}

bool negative_case(const formula::Conjunction& facts, const Signature& sig) {
    for (const Atom& a : facts.atoms) {
        if (a.predicate == Signature::kNeq) continue;
        // bars: predicates registered as the complement of some base
        bool is_bar = false;
        for (const auto& [base, bar] : sig.complements)
            if (bar == a.predicate) is_bar = true;
        if (!is_bar) return false;
    }
    return !facts.atoms.empty();
}

} // namespace

std::optional<std::size_t> select_branch(const ProofStep& split, const GeoModel& model,
                                         const BranchPolicy& policy, const Signature& sig) {
    if (split.kind != ProofStep::Kind::CaseSplit)
        throw Error("select_branch expects a case split");

    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < split.cases.size(); ++i)
        if (!subtree_contradictory(split.cases[i].steps)) open.push_back(i);
    if (open.empty()) return std::nullopt;

    std::vector<std::size_t> matched;
    bool any_evaluable = false;
    for (std::size_t i : open) {
        bool evaluable = true;
        bool holds = true;
        for (const Atom& a : split.cases[i].facts.atoms) {
            auto v = eval_case_atom(a, model);
            if (!v) {
                evaluable = false;
                break;
            }
            holds = holds && *v;
        }
        if (evaluable) {
            any_evaluable = true;
            if (holds) matched.push_back(i);
        }
    }
    if (matched.size() > 1) {
        std::string detail = "cases";
        for (std::size_t i : matched) detail += " " + std::to_string(i + 1);
        throw AmbiguousBranchError(detail + " all hold in the model");
    }
    if (matched.size() == 1) return matched[0];
    (void)any_evaluable;

    if (policy.fallback == BranchPolicy::Fallback::PreferComplement)
        for (std::size_t i : open)
            if (negative_case(split.cases[i].facts, sig)) return i;
    return open.front();
}

// ---------------------------------------------------------------- compile

namespace {

struct Compiler {
    const Theory& theory;
    InterpRegistry registry; // working copy; recursively compiled lemmas land here
    BranchPolicy policy;
    CompileOptions opts;

    GeoModel model;
    std::vector<std::string> include_order; // procedure names, first use
    std::map<std::string, std::string> generated_files;
    std::optional<std::size_t> outermost_branch;
    formula::Substitution closing_substitution;
    bool closed_by_assumption = false;

    void record_called(const std::string& proc_name) {
        if (std::find(include_order.begin(), include_order.end(), proc_name) ==
            include_order.end())
            include_order.push_back(proc_name);
    }

    // Ensure the axiom has an interpretation; recursively compile a proof
    // into a procedure when the registry lacks one.
    void ensure_interpretation(const std::string& axiom, int depth) {
        if (registry.find(axiom)) return;
        if (depth > opts.max_recursion_depth)
            throw MissingInterpretationError(axiom + " (recursion depth exceeded)");
        const CoherentFormula* ax = theory.find_axiom(axiom);
        if (!ax) throw MissingInterpretationError(axiom);

        Theory reduced;
        reduced.signature = theory.signature;
        reduced.origins = theory.origins;
        for (const CoherentFormula& a : theory.axioms)
            if (a.name != axiom) reduced.axioms.push_back(a);

        auto result = prover::prove(reduced, *ax, opts.lemma_limits);
        if (!std::holds_alternative<Proof>(result)) throw MissingInterpretationError(axiom);
        const Proof& lemma_proof = std::get<Proof>(result);

        Procedure proc;
        proc.name = axiom;
        proc.params = lemma_proof.intro.constants;

        formula::Substitution goal_subst;
        std::vector<Command> body;
        compile_lemma_steps(lemma_proof.steps, body, goal_subst, depth);
        if (!closed_by_assumption_flag_)
            throw MissingInterpretationError(axiom + " (lemma proof has no assumption leaf)");
        closed_by_assumption_flag_ = false;

        for (const std::string& e : ax->existentials) {
            auto it = goal_subst.bindings.find(e);
            if (it == goal_subst.bindings.end())
                throw MissingInterpretationError(axiom + " (goal witness for " + e +
                                                 " not found)");
            proc.params.push_back(it->second);
        }
        proc.body = std::move(body);
        generated_files[axiom] = gcl::print_gcl(proc);

        interp::InterpProcedure entry;
        entry.axiom = axiom;
        entry.inputs = ax->universals;
        entry.outputs = ax->existentials;
        entry.procedure_name = axiom;
        registry.add(entry, proc);
    }

    bool closed_by_assumption_flag_ = false;

    // Straight-line lemma compilation: case splits inside recursively
    // compiled lemmas are out of reach (no model exists to pick a branch
    // once per call site).
    void compile_lemma_steps(const std::vector<ProofStep>& steps, std::vector<Command>& body,
                             formula::Substitution& goal_subst, int depth) {
        for (const ProofStep& step : steps) {
            switch (step.kind) {
                case ProofStep::Kind::MP: {
                    if (step.witnesses.empty() && !registry.find(step.axiom)) break;
                    ensure_interpretation(step.axiom, depth + 1);
                    body.push_back(call_command(step));
                    break;
                }
                case ProofStep::Kind::CaseSplit:
                    throw MissingInterpretationError(
                        "case split inside a recursively compiled lemma");
                case ProofStep::Kind::QedAssumption:
                    goal_subst = step.goal_substitution;
                    closed_by_assumption_flag_ = true;
                    break;
                case ProofStep::Kind::QedContradiction:
                    throw MissingInterpretationError(
                        "contradictory lemma proof cannot become a construction");
                case ProofStep::Kind::QedCaseSplit:
                    break;
            }
        }
    }

    Command call_command(const ProofStep& step) {
        const interp::InterpProcedure* entry = registry.find(step.axiom);
        const CoherentFormula* ax = theory.find_axiom(step.axiom);
        Command cmd;
        cmd.kind = Command::Kind::Call;
        cmd.args.push_back(entry->procedure_name);
        for (const std::string& v : entry->inputs)
            cmd.args.push_back(step.instantiation.bindings.at(v));
        for (const std::string& e : entry->outputs) {
            auto pos = std::find(ax->existentials.begin(), ax->existentials.end(), e);
            std::size_t idx = pos - ax->existentials.begin();
            cmd.args.push_back(step.witnesses.at(idx));
        }
        record_called(entry->procedure_name);
        return cmd;
    }

    void emit_layer(std::vector<Command>& body, int layer) {
        Command cmd;
        cmd.kind = Command::Kind::Layer;
        cmd.numbers.push_back(layer);
        body.push_back(cmd);
    }

    std::vector<std::string> walk_witnesses; // selected-path witnesses, creation order

    void walk(const std::vector<ProofStep>& steps, std::vector<Command>& body, int depth) {
        for (const ProofStep& step : steps) {
            switch (step.kind) {
                case ProofStep::Kind::MP: {
                    bool interesting = registry.find(step.axiom) || !step.witnesses.empty();
                    if (!interesting) break;
                    ensure_interpretation(step.axiom, depth);
                    emit_layer(body, model.next_layer);
                    body.push_back(call_command(step));
                    model = interp::apply_step(model, step, registry, theory);
                    if (!step.witnesses.empty()) {
                        emit_layer(body, model.next_layer);
                        for (const std::string& w : step.witnesses) {
                            walk_witnesses.push_back(w);
                            Command mark;
                            mark.kind = Command::Kind::MarkT;
                            mark.args.push_back(w);
                            body.push_back(mark);
                            interp::DrawOp op;
                            op.kind = interp::DrawOp::Kind::MarkPoint;
                            op.a = {w, model.points.at(w)};
                            op.style = interp::DrawOp::MarkStyle::Label;
                            op.placement = interp::DrawOp::Placement::Above;
                            op.layer = model.next_layer;
                            model.ops.push_back(op);
                        }
                        model.next_layer++;
                    }
                    break;
                }
                case ProofStep::Kind::CaseSplit: {
                    auto choice = select_branch(step, model, policy, theory.signature);
                    if (!choice)
                        throw AllContradictoryError("every case of the split ends in falsum");
                    if (!outermost_branch) outermost_branch = *choice;
                    Command comment;
                    comment.kind = Command::Kind::Comment;
                    comment.text =
                        "% --- Illustration for branch " + std::to_string(*choice + 1);
                    body.push_back(comment);
                    walk(step.cases[*choice].steps, body, depth);
                    break;
                }
                case ProofStep::Kind::QedAssumption:
                    closing_substitution = step.goal_substitution;
                    closed_by_assumption = true;
                    break;
                case ProofStep::Kind::QedContradiction:
                    throw AllContradictoryError("the premises are contradictory");
                case ProofStep::Kind::QedCaseSplit:
                    break;
            }
        }
    }
};

} // namespace

GCLDocument compile(const Proof& p, const Theory& t, const GeoModel& premise_model,
                    const InterpRegistry& reg, const BranchPolicy& policy,
                    const CompileOptions& opts) {
    Compiler compiler{t, reg, policy, opts};
    compiler.registry.validate_against(t);
    compiler.model = premise_model;

    std::vector<Command> body;
    compiler.walk(p.steps, body, 0);

    GCLDocument doc;
    doc.final_model = compiler.model;
    doc.selected_branch = compiler.outermost_branch;

    doc.theorem.name = p.conjecture_name;
    doc.theorem.params = p.intro.constants;
    if (compiler.closed_by_assumption) {
        std::set<std::string> goal_bound;
        for (const auto& [v, c] : compiler.closing_substitution.bindings) goal_bound.insert(c);
        for (const std::string& w : compiler.walk_witnesses)
            if (goal_bound.count(w) == 0) doc.theorem.params.push_back(w);
    }
    doc.theorem.body = std::move(body);

    doc.exists_name = p.conjecture_name + "_exists";

    doc.main.includes.push_back(doc.theorem.name + ".gcl");
    doc.main.includes.push_back(doc.exists_name + ".gcl");
    for (const std::string& proc : compiler.include_order)
        doc.main.includes.push_back(proc + ".gcl");

    doc.main.exists_call.kind = Command::Kind::Call;
    doc.main.exists_call.args.push_back(doc.exists_name);
    for (const std::string& c : p.intro.constants) doc.main.exists_call.args.push_back(c);

    doc.main.theorem_call.kind = Command::Kind::Call;
    doc.main.theorem_call.args.push_back(doc.theorem.name);
    for (const std::string& c : doc.theorem.params) doc.main.theorem_call.args.push_back(c);

    for (const std::string& proc_name : compiler.include_order) {
        auto generated = compiler.generated_files.find(proc_name);
        if (generated != compiler.generated_files.end()) {
            doc.procedure_files[proc_name] = generated->second;
        } else {
            const Procedure* proc = compiler.registry.procedure(proc_name);
            if (proc) doc.procedure_files[proc_name] = gcl::print_gcl(*proc);
        }
    }

    if (opts.animate) assign_layers(doc, doc.final_model);
    return doc;
}

void assign_layers(GCLDocument& doc, const GeoModel& model) {
    int max_layer = -1;
    for (const interp::DrawOp& op : model.ops) max_layer = std::max(max_layer, op.layer);
    doc.main.animation.clear();
    if (max_layer < 0) return;
    int frames = max_layer + 2; // layers 0..max plus the all-black final frame

    auto cmd = [](Command::Kind kind) {
        Command c;
        c.kind = kind;
        return c;
    };
    Command frames_cmd = cmd(Command::Kind::AnimationFrames);
    frames_cmd.numbers = {double(frames), 1.0};
    doc.main.animation.push_back(frames_cmd);

    Command a0 = cmd(Command::Kind::Point);
    a0.args = {"A0"};
    a0.numbers = {0, 0};
    doc.main.animation.push_back(a0);

    Command a1 = cmd(Command::Kind::Point);
    a1.args = {"A1"};
    a1.numbers = {1, 0, double(frames), 0};
    doc.main.animation.push_back(a1);

    Command dist = cmd(Command::Kind::Distance);
    dist.args = {"dA", "A0", "A1"};
    doc.main.animation.push_back(dist);

    Command hide = cmd(Command::Kind::HideLayersFrom);
    hide.args = {"dA"};
    doc.main.animation.push_back(hide);
}

std::string GCLDocument::theorem_text() const { return gcl::print_gcl(theorem); }

std::string GCLDocument::main_text() const {
    gcl::GCLProgram program;
    auto push_cmd = [&program](const Command& c) {
        gcl::Item item;
        item.kind = gcl::Item::Kind::Command;
        item.command = c;
        program.items.push_back(std::move(item));
    };
    Command header;
    header.kind = Command::Kind::Comment;
    header.text = "% ----- Proof illustration -----";
    push_cmd(header);

    std::string out = gcl::print_gcl(program);
    for (const std::string& inc : main.includes) out += "include " + inc + "\n";
    gcl::GCLProgram tail;
    auto push_tail = [&tail](const Command& c) {
        gcl::Item item;
        item.kind = gcl::Item::Kind::Command;
        item.command = c;
        tail.items.push_back(std::move(item));
    };
    Command sep;
    sep.kind = Command::Kind::Comment;
    sep.text = "%-----";
    push_tail(sep);
    push_tail(main.exists_call);
    push_tail(main.theorem_call);
    for (const Command& c : main.animation) push_tail(c);
    out += gcl::print_gcl(tail);
    return out;
}

std::map<std::string, std::string> GCLDocument::files() const {
    std::map<std::string, std::string> out;
    out[theorem.name + ".gcl"] = theorem_text();
    out[exists_name + ".gcl"] = exists_text;
    out["main_" + theorem.name + ".gcl"] = main_text();
    for (const auto& [proc, text] : procedure_files) out[proc + ".gcl"] = text;
    return out;
}

// --------------------------------------------------- premise model via proof

interp::GeoModel realize_premises_from_proof(const Proof& exists_proof, const Theory& t,
                                             const InterpRegistry& reg,
                                             const std::vector<std::string>& constants,
                                             const std::vector<Atom>& premise_atoms,
                                             std::uint64_t seed, const BranchPolicy& policy) {
    GeoModel model;
    model.rng = interp::Rng(seed);
    model.next_layer = 0; // the whole construction is the layer-0 initial sketch

    formula::Substitution goal_subst;
    bool closed = false;

    std::function<void(const std::vector<ProofStep>&)> walk =
        [&](const std::vector<ProofStep>& steps) {
            for (const ProofStep& step : steps) {
                switch (step.kind) {
                    case ProofStep::Kind::MP: {
                        if (step.witnesses.empty() && !reg.find(step.axiom)) break;
                        GeoModel next = interp::apply_step(model, step, reg, t);
                        next.next_layer = 0;
                        for (interp::DrawOp& op : next.ops) op.layer = 0;
                        model = std::move(next);
                        break;
                    }
                    case ProofStep::Kind::CaseSplit: {
                        auto choice = select_branch(step, model, policy, t.signature);
                        if (!choice)
                            throw AllContradictoryError(
                                "existence proof splits into falsum only");
                        walk(step.cases[*choice].steps);
                        break;
                    }
                    case ProofStep::Kind::QedAssumption:
                        goal_subst = step.goal_substitution;
                        closed = true;
                        break;
                    case ProofStep::Kind::QedContradiction:
                        throw AllContradictoryError("existence premises are contradictory");
                    case ProofStep::Kind::QedCaseSplit:
                        break;
                }
            }
        };
    walk(exists_proof.steps);
    if (!closed)
        throw DegenerateModelError("existence proof does not end in an assumption leaf");

    // rename goal witnesses to the main conjecture's premise constants, in
    // existential order (the existence conjecture mirrors the universals)
    if (exists_proof.goal.existentials.size() != constants.size())
        throw DegenerateModelError("existence goal arity differs from the premise constants");
    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < constants.size(); ++i) {
        const std::string& var = exists_proof.goal.existentials[i];
        auto it = goal_subst.bindings.find(var);
        if (it == goal_subst.bindings.end())
            throw DegenerateModelError("existence goal does not bind " + var);
        rename[it->second] = constants[i];
    }

    GeoModel out;
    out.rng = model.rng;
    out.next_layer = 1;
    out.tol_branch = model.tol_branch;
    out.tol_check = model.tol_check;
    for (const auto& [name, at] : model.points) {
        auto it = rename.find(name);
        out.points[it == rename.end() ? name : it->second] = at;
    }
    auto rename_point = [&rename](interp::NamedPoint& p) {
        auto it = rename.find(p.name);
        if (it != rename.end()) p.name = it->second;
    };
    for (interp::DrawOp op : model.ops) {
        rename_point(op.a);
        rename_point(op.b);
        rename_point(op.c);
        out.ops.push_back(std::move(op));
    }
    interp::verify_nondegeneracy(out, constants, premise_atoms);
    return out;
}

} // namespace geoproof::illustrate
