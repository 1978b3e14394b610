#ifndef GEOPROOF_ILLUSTRATE_HPP
#define GEOPROOF_ILLUSTRATE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoproof/formula.hpp"
#include "geoproof/gcl.hpp"
#include "geoproof/geometry.hpp"
#include "geoproof/interp.hpp"
#include "geoproof/prover.hpp"

namespace geoproof::illustrate {

struct BranchPolicy {
    enum class Fallback { PreferComplement, FirstOpen };
    Fallback fallback = Fallback::PreferComplement;
};

// Case index of the split branch the illustration follows (0-based), nullopt
// when every case subtree ends in contradiction. Model evaluation first,
// fallback policy when no case fact is numerically decidable.
std::optional<std::size_t> select_branch(const prover::ProofStep& split,
                                         const interp::GeoModel& model,
                                         const BranchPolicy& policy,
                                         const formula::Signature& sig);

struct MainFile {
    std::vector<std::string> includes; // file names, emission order
    gcl::Command exists_call;
    gcl::Command theorem_call;
    std::vector<gcl::Command> animation; // empty without --animate / zero layers
};

struct GCLDocument {
    gcl::Procedure theorem;                        // <name>.gcl
    std::string exists_name;                       // procedure name
    std::string exists_text;                       // <name>_exists.gcl
    MainFile main;                                 // main_<name>.gcl
    std::map<std::string, std::string> procedure_files; // <proc>.gcl -> text
    interp::GeoModel final_model;
    std::optional<std::size_t> selected_branch;    // of the outermost split

    std::string theorem_text() const;
    std::string main_text() const;
    // name -> content for every emitted .gcl file
    std::map<std::string, std::string> files() const;
};

struct CompileOptions {
    bool animate = true;
    prover::SearchLimits lemma_limits;  // for recursively compiled lemmas
    int max_recursion_depth = 8;
};

GCLDocument compile(const prover::Proof& p, const formula::Theory& t,
                    const interp::GeoModel& premise_model, const interp::InterpRegistry& reg,
                    const BranchPolicy& policy = {}, const CompileOptions& opts = {});

// Appends the animation header (frame count = layer count + 1) to doc.main.
void assign_layers(GCLDocument& doc, const interp::GeoModel& model);

// The automatic path of premise realization: walk a proof of the existence
// conjecture, then rename its goal witnesses to the premise constants.
interp::GeoModel realize_premises_from_proof(const prover::Proof& exists_proof,
                                             const formula::Theory& t,
                                             const interp::InterpRegistry& reg,
                                             const std::vector<std::string>& constants,
                                             const std::vector<formula::Atom>& premise_atoms,
                                             std::uint64_t seed,
                                             const BranchPolicy& policy = {});

} // namespace geoproof::illustrate

#endif
