#include "geoproof/interp.hpp"

#include <algorithm>
#include <sstream>

#include "geoproof/error.hpp"

namespace geoproof::interp {

using formula::Atom;
using formula::CoherentFormula;
using formula::Conjunction;
using formula::Signature;
using formula::Term;
using formula::Theory;

namespace {

// The built-in interpretations, expressed in the GCL dialect. proposition_01
// picks the second circle intersection; its first stays in a scratch name.
const char* kBuiltinLibrary = R"(
procedure lemma_extension { A B P Q X } {
  extend X A B P Q
  drawsegment A X
}
procedure proposition_01 { A B X } {
  circle c1 A B
  drawcircle c1
  circle c2 B A
  drawcircle c2
  intersec2 X2 X c1 c2
  cmark X
}
procedure defrightangle2 { A B C X } {
  rightanglemark B A C
}
procedure lemma_midpoint_existence { A B X } {
  drawsegment A B
  midpoint X A B
  cmark X
}
procedure triangle_mid_par_strict { A B C P Q } {
  drawsegment Q P
}
procedure triangle_mid_par_strict_flip { A B C P Q } {
  drawsegment Q P
}
procedure triangle_mid_par_strict_flip2 { A B C P Q } {
  drawsegment Q P
}
procedure lemma_par_trans { A B C D E F } {
  tickmark A B
  tickmark E F
}
procedure lemma_par_trans_flip { A B C D E F } {
  tickmark A B
  tickmark E F
}
procedure lemma_par2_pg { A B C D } {
  drawsegment A B
  drawsegment B C
  drawsegment C D
  drawsegment D A
}
)";

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

void InterpRegistry::add(InterpProcedure entry, gcl::Procedure procedure) {
    procedures_[procedure.name] = std::move(procedure);
    entries_[entry.axiom] = std::move(entry);
}

const InterpProcedure* InterpRegistry::find(const std::string& axiom) const {
    auto it = entries_.find(axiom);
    return it == entries_.end() ? nullptr : &it->second;
}

const gcl::Procedure* InterpRegistry::procedure(const std::string& name) const {
    auto it = procedures_.find(name);
    return it == procedures_.end() ? nullptr : &it->second;
}

InterpRegistry InterpRegistry::builtin() {
    InterpRegistry reg;
    gcl::GCLProgram library = gcl::parse_gcl(kBuiltinLibrary);
    for (const gcl::Item& item : library.items) {
        if (item.kind != gcl::Item::Kind::Proc) continue;
        reg.procedures_[item.procedure.name] = item.procedure;
    }
    auto entry = [&reg](const std::string& axiom, std::vector<std::string> inputs,
                        std::vector<std::string> outputs) {
        reg.entries_[axiom] = InterpProcedure{axiom, std::move(inputs), std::move(outputs), axiom};
    };
    entry("lemma_extension", {"A", "B", "P", "Q"}, {"X"});
    entry("proposition_01", {"A", "B"}, {"X"});
    entry("defrightangle2", {"A", "B", "C", "X"}, {});
    entry("lemma_midpoint_existence", {"A", "B"}, {"X"});
    entry("triangle_mid_par_strict", {"A", "B", "C", "P", "Q"}, {});
    entry("triangle_mid_par_strict_flip", {"A", "B", "C", "P", "Q"}, {});
    entry("triangle_mid_par_strict_flip2", {"A", "B", "C", "P", "Q"}, {});
    entry("lemma_par_trans", {"A", "B", "C", "D", "E", "F"}, {});
    entry("lemma_par_trans_flip", {"A", "B", "C", "D", "E", "F"}, {});
    entry("lemma_par2_pg", {"A", "B", "C", "D"}, {});
    return reg;
}

void InterpRegistry::load_manifest(const std::string& text, const gcl::FileResolver& resolver) {
    std::istringstream input(text);
    std::string line;
    int line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        std::string trimmed;
        for (char c : line) {
            if (c == '%') break;
            trimmed += c;
        }
        std::istringstream words(trimmed);
        std::string head;
        if (!(words >> head)) continue;

        if (head == "gcl") {
            std::string file;
            if (!(words >> file))
                throw GclParseError(line_number, "manifest: gcl directive without a file");
            if (!resolver) throw GclParseError(line_number, "manifest: no resolver for gcl files");
            auto content = resolver(file);
            if (!content)
                throw GclParseError(line_number, "manifest: cannot resolve gcl file " + file);
            gcl::GCLProgram library = gcl::parse_gcl(*content, resolver);
            for (const gcl::Item& item : library.items)
                if (item.kind == gcl::Item::Kind::Proc)
                    procedures_[item.procedure.name] = item.procedure;
            continue;
        }
        if (head != "interp")
            throw GclParseError(line_number, "manifest: expected 'interp' or 'gcl', got " + head);

        // interp <axiom> inputs(...) outputs(...) = <proc>
        InterpProcedure entry;
        std::string tok;
        if (!(words >> entry.axiom))
            throw GclParseError(line_number, "manifest: interp without an axiom name");
        while (words >> tok) {
            if (tok.rfind("inputs(", 0) == 0 && tok.back() == ')') {
                entry.inputs = split_csv(tok.substr(7, tok.size() - 8));
            } else if (tok.rfind("outputs(", 0) == 0 && tok.back() == ')') {
                entry.outputs = split_csv(tok.substr(8, tok.size() - 9));
            } else if (tok == "=") {
                if (!(words >> entry.procedure_name))
                    throw GclParseError(line_number, "manifest: '=' without a procedure name");
            } else {
                throw GclParseError(line_number, "manifest: unexpected token " + tok);
            }
        }
        if (entry.procedure_name.empty())
            throw GclParseError(line_number, "manifest: interp line without '= <procedure>'");
        entries_[entry.axiom] = std::move(entry);
    }
}

void InterpRegistry::validate_against(const Theory& t) const {
    for (const auto& [axiom_name, entry] : entries_) {
        const CoherentFormula* ax = t.find_axiom(axiom_name);
        if (!ax) continue; // registry may carry interpretations for other theories
        if (entry.outputs.size() != ax->existentials.size())
            throw MissingInterpretationError(axiom_name + " (outputs mismatch its existentials)");
        for (const std::string& v : entry.inputs)
            if (std::find(ax->universals.begin(), ax->universals.end(), v) == ax->universals.end())
                throw MissingInterpretationError(axiom_name + " (input " + v +
                                                 " is not a universal)");
        const gcl::Procedure* proc = procedure(entry.procedure_name);
        if (!proc) throw MissingInterpretationError(axiom_name + " (no procedure " +
                                                    entry.procedure_name + ")");
        if (proc->params.size() != entry.inputs.size() + entry.outputs.size())
            throw MissingInterpretationError(axiom_name + " (procedure arity mismatch)");
    }
}

// ---------------------------------------------------------------- apply_step

namespace {

gcl::Scene scene_from_model(const GeoModel& model) {
    gcl::Scene scene;
    scene.rng = model.rng;
    scene.tol_branch = model.tol_branch;
    scene.tol_check = model.tol_check;
    for (const auto& [name, at] : model.points) {
        gcl::SceneObject obj;
        obj.kind = gcl::SceneObject::Kind::Point;
        obj.a = {name, at};
        scene.objects[name] = obj;
    }
    return scene;
}

} // namespace

GeoModel apply_step(const GeoModel& model, const prover::ProofStep& step,
                    const InterpRegistry& reg, const Theory& t) {
    if (step.kind != prover::ProofStep::Kind::MP)
        throw Error("apply_step expects an MP step");
    const InterpProcedure* entry = reg.find(step.axiom);
    if (!entry) {
        if (!step.witnesses.empty()) throw MissingInterpretationError(step.axiom);
        return model;
    }
    const gcl::Procedure* proc = reg.procedure(entry->procedure_name);
    if (!proc) throw MissingInterpretationError(step.axiom);

    const CoherentFormula* ax = t.find_axiom(step.axiom);
    if (!ax) throw MissingInterpretationError(step.axiom + " (axiom not in theory)");

    std::vector<std::string> args;
    for (const std::string& v : entry->inputs) {
        auto it = step.instantiation.bindings.find(v);
        if (it == step.instantiation.bindings.end())
            throw MissingInterpretationError(step.axiom + " (input " + v + " unbound)");
        args.push_back(it->second);
    }
    for (const std::string& e : entry->outputs) {
        auto pos = std::find(ax->existentials.begin(), ax->existentials.end(), e);
        if (pos == ax->existentials.end())
            throw MissingInterpretationError(step.axiom + " (output " + e +
                                             " is not an existential)");
        std::size_t idx = pos - ax->existentials.begin();
        if (idx >= step.witnesses.size())
            throw MissingInterpretationError(step.axiom + " (missing witness)");
        args.push_back(step.witnesses[idx]);
    }
    for (const std::string& name : args)
        if (model.points.count(name) == 0 &&
            std::find(step.witnesses.begin(), step.witnesses.end(), name) ==
                step.witnesses.end())
            throw Error("apply_step: point " + name + " is not mapped in the model");

    gcl::Scene scene = scene_from_model(model);
    try {
        gcl::execute_call(scene, reg.procedures(), entry->procedure_name, args,
                          model.next_layer);
    } catch (const Error& e) {
        throw Error("applying " + step.axiom + ": " + e.what());
    }

    GeoModel out = model;
    out.rng = scene.rng;
    for (const auto& [name, obj] : scene.objects)
        if (obj.kind == gcl::SceneObject::Kind::Point && out.points.count(name) == 0)
            out.points[name] = obj.a.at;
    for (const std::string& w : step.witnesses)
        if (out.points.count(w) == 0)
            throw MissingInterpretationError(step.axiom + " (procedure did not assign witness " +
                                             w + ")");
    for (const auto& [name, at] : model.points) {
        auto it = out.points.find(name);
        if (it == out.points.end() || !(it->second == at))
            throw Error("apply_step: procedure mutated existing point " + name);
    }
    out.ops.insert(out.ops.end(), scene.draws.begin(), scene.draws.end());
    out.next_layer = model.next_layer + 1;
    return out;
}

// ------------------------------------------------------ premises conjecture

formula::CoherentFormula premises_conjecture(const CoherentFormula& c,
                                             const NondegeneracyOptions& opts) {
    CoherentFormula out;
    out.name = c.name + "_exists";
    out.existentials = c.universals;

    Conjunction body;
    body.atoms = c.premises;

    auto has_neq = [&body](const std::string& x, const std::string& y) {
        for (const Atom& a : body.atoms) {
            if (a.predicate != Signature::kNeq) continue;
            if ((a.args[0].name == x && a.args[1].name == y) ||
                (a.args[0].name == y && a.args[1].name == x))
                return true;
        }
        return false;
    };
    if (opts.pairwise_neq) {
        for (std::size_t i = 0; i < c.universals.size(); ++i)
            for (std::size_t j = i + 1; j < c.universals.size(); ++j)
                if (!has_neq(c.universals[i], c.universals[j]))
                    body.atoms.push_back(Atom{Signature::kNeq,
                                              {Term::var(c.universals[i]),
                                               Term::var(c.universals[j])}});
    }
    for (const auto& triple : opts.ncol_triples)
        body.atoms.push_back(Atom{"ncol",
                                  {Term::var(triple[0]), Term::var(triple[1]),
                                   Term::var(triple[2])}});

    out.disjuncts.push_back(std::move(body));
    formula::validate(out);
    return out;
}

// -------------------------------------------------------------- realization

void verify_nondegeneracy(const GeoModel& model, const std::vector<std::string>& constants,
                          const std::vector<Atom>& premise_atoms) {
    for (const std::string& name : constants)
        if (model.points.count(name) == 0)
            throw DegenerateModelError("premise constant " + name + " has no coordinates");
    for (std::size_t i = 0; i < constants.size(); ++i)
        for (std::size_t j = i + 1; j < constants.size(); ++j) {
            GeoPoint p = model.points.at(constants[i]);
            GeoPoint q = model.points.at(constants[j]);
            if (points_coincide(p, q, model.tol_branch))
                throw DegenerateModelError(constants[i] + " and " + constants[j] + " coincide");
        }
    for (const Atom& a : premise_atoms) {
        bool is_ncol = a.predicate.rfind("ncol", 0) == 0 && a.args.size() == 3;
        if (!is_ncol) continue;
        GeoPoint p = model.points.at(a.args[0].name);
        GeoPoint q = model.points.at(a.args[1].name);
        GeoPoint r = model.points.at(a.args[2].name);
        if (collinear(p, q, r, model.tol_branch))
            throw DegenerateModelError("requested non-collinearity degenerates: " +
                                       to_string(a));
    }
}

GeoModel realize_premises(const gcl::GCLProgram& exists_program,
                          const std::string& procedure_name,
                          const std::vector<std::string>& constants,
                          const std::vector<Atom>& premise_atoms, std::uint64_t seed) {
    gcl::Scene scene;
    scene.rng = Rng(seed);

    std::map<std::string, gcl::Procedure> library;
    std::function<void(const std::vector<gcl::Item>&)> collect =
        [&](const std::vector<gcl::Item>& items) {
            for (const gcl::Item& item : items) {
                if (item.kind == gcl::Item::Kind::Proc)
                    library[item.procedure.name] = item.procedure;
                if (item.kind == gcl::Item::Kind::Include) collect(item.included);
            }
        };
    collect(exists_program.items);
    if (library.count(procedure_name) == 0)
        throw MissingInterpretationError("existence procedure " + procedure_name);
    if (library.at(procedure_name).params.size() != constants.size())
        throw DegenerateModelError(procedure_name + " arity differs from the premise constants");

    gcl::execute_call(scene, library, procedure_name, constants, 0);

    GeoModel model;
    model.rng = scene.rng;
    for (const auto& [name, obj] : scene.objects)
        if (obj.kind == gcl::SceneObject::Kind::Point) model.points[name] = obj.a.at;
    model.ops = scene.draws;
    model.next_layer = 1;
    verify_nondegeneracy(model, constants, premise_atoms);
    return model;
}

} // namespace geoproof::interp
