#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "geoproof/pipeline.hpp"

using geoproof::cli::PipelineConfig;

namespace {

void add_common(CLI::App* cmd, PipelineConfig& config, std::string& emit_csv) {
    cmd->add_option("input", config.input_path, "TPTP problem file")->required();
    cmd->add_option("--conjecture", config.conjecture, "conjecture name (default: the sole one)");
    cmd->add_option("--out", config.out_dir, "output directory (default: $GEOPROOF_OUT or .)");
    cmd->add_option("--max-mp", config.limits.max_mp_steps, "iterative-deepening ceiling");
    cmd->add_option("--timeout", config.limits.timeout_seconds, "prover timeout in seconds");
    cmd->add_option("--max-constants", config.limits.max_constants, "constant-creation cap");
    cmd->add_option("--emit", emit_csv, "comma list of gcl,svg,proof-text,proof-json");
    cmd->add_flag("--hide-simple,!--no-hide-simple", config.hide_simple,
                  "hide simple-axiom steps in proof text");
}

void apply_emit(PipelineConfig& config, const std::string& emit_csv) {
    if (emit_csv.empty()) return;
    config.emit.clear();
    std::string cur;
    for (char c : emit_csv + ",") {
        if (c == ',') {
            if (!cur.empty()) config.emit.insert(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-logic geometry proofs and their illustrations"};
    app.require_subcommand(1);

    PipelineConfig config;
    std::string emit_csv;
    std::string fallback = "prefer-complement";

    CLI::App* prove = app.add_subcommand("prove", "parse, translate and prove a conjecture");
    add_common(prove, config, emit_csv);

    CLI::App* illustrate =
        app.add_subcommand("illustrate", "prove and compile the proof into GCL + SVG");
    add_common(illustrate, config, emit_csv);
    illustrate->add_option("--manifest", config.manifests,
                           "interpretation manifest file (repeatable)");
    illustrate->add_option("--exists-gcl", config.exists_gcl,
                           "hand-written existence construction");
    illustrate->add_option("--seed", config.seed, "randomization seed");
    illustrate->add_flag("--animate", config.animate, "emit animation frames");
    illustrate->add_option("--branch-fallback", fallback,
                           "prefer-complement or first-open");

    std::string render_input;
    std::string render_out;
    bool render_frames = false;
    double render_scale = 10.0;
    CLI::App* render = app.add_subcommand("render", "evaluate a GCL file and render SVG");
    render->add_option("input", render_input, "GCL file")->required();
    render->add_option("--out", render_out, "output directory");
    render->add_flag("--frames", render_frames, "render every animation frame");
    render->add_option("--scale", render_scale, "pixels per scene unit");

    CLI11_PARSE(app, argc, argv);
    apply_emit(config, emit_csv);
    config.policy.fallback = fallback == "first-open"
                                 ? geoproof::illustrate::BranchPolicy::Fallback::FirstOpen
                                 : geoproof::illustrate::BranchPolicy::Fallback::PreferComplement;

    std::string log;
    int code = 0;
    if (prove->parsed()) {
        code = geoproof::cli::cmd_prove(config, log);
    } else if (illustrate->parsed()) {
        code = geoproof::cli::cmd_illustrate(config, log);
    } else if (render->parsed()) {
        code = geoproof::cli::cmd_render(render_input, render_frames, render_out, render_scale,
                                         log);
    }
    std::fputs(log.c_str(), code == 0 ? stdout : stderr);
    return code;
}
