#ifndef GEOPROOF_PIPELINE_HPP
#define GEOPROOF_PIPELINE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geoproof/formula.hpp"
#include "geoproof/illustrate.hpp"
#include "geoproof/interp.hpp"
#include "geoproof/prover.hpp"

namespace geoproof::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUnprovable = 2;
inline constexpr int kExitIllustration = 3;

struct PipelineConfig {
    std::string input_path;
    std::string conjecture;                 // empty: the sole conjecture entry
    std::vector<std::string> manifests;     // interpretation manifest paths
    std::string exists_gcl;                 // hand-written existence procedure
    std::uint64_t seed = 0;
    prover::SearchLimits limits{12, 60.0, 64};
    illustrate::BranchPolicy policy;
    std::string out_dir;                    // empty: $GEOPROOF_OUT or "."
    bool animate = false;
    bool hide_simple = true;
    std::set<std::string> emit = {"gcl", "svg", "proof-text", "proof-json"};
};

struct LoadedProblem {
    formula::Theory theory;
    formula::CoherentFormula conjecture;
};

// Parse + coherentize + support axioms. Throws geoproof errors on bad input.
LoadedProblem load_problem(const std::string& path, const std::string& conjecture_name);
LoadedProblem load_problem_text(const std::string& text, const std::string& conjecture_name);

std::string resolve_out_dir(const PipelineConfig& config);

// Subcommands; diagnostics go to `log` (one line per message).
int cmd_prove(const PipelineConfig& config, std::string& log);
int cmd_illustrate(const PipelineConfig& config, std::string& log);
int cmd_render(const std::string& gcl_path, bool frames, const std::string& out_dir,
               double scale, std::string& log);

// temp-file + rename
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace geoproof::cli

#endif
