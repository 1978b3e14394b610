#include "geoproof/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geoproof/error.hpp"
#include "geoproof/gcl.hpp"
#include "geoproof/proofdoc.hpp"
#include "geoproof/tptp.hpp"

namespace geoproof::cli {

namespace fs = std::filesystem;
using formula::CoherentFormula;
using formula::Theory;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

gcl::FileResolver directory_resolver(const fs::path& dir) {
    return [dir](const std::string& name) -> std::optional<std::string> {
        fs::path p = dir / name;
        std::ifstream in(p, std::ios::binary);
        if (!in) return std::nullopt;
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
}

} // namespace

void write_file_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

LoadedProblem load_problem_text(const std::string& text, const std::string& conjecture_name) {
    auto entries = tptp::parse_tptp(text);

    LoadedProblem out;
    std::optional<CoherentFormula> conjecture;
    int conjecture_count = 0;
    for (const auto& entry : entries) {
        auto formulas = tptp::coherentize(entry, out.theory.signature);
        if (entry.role == tptp::Role::Conjecture) {
            ++conjecture_count;
            bool wanted = conjecture_name.empty() || entry.name == conjecture_name;
            if (wanted && !conjecture) conjecture = formulas.front();
        } else {
            for (auto& f : formulas) out.theory.add_axiom(std::move(f));
        }
    }
    if (!conjecture) {
        if (conjecture_name.empty()) throw Error("input has no conjecture entry");
        throw Error("conjecture " + conjecture_name + " not found");
    }
    if (conjecture_name.empty() && conjecture_count > 1)
        throw Error("multiple conjectures; pick one with --conjecture");

    for (auto& support :
         tptp::generate_support_axioms(out.theory.signature, tptp::SupportAxiomOptions{})) {
        auto origin = support.name.ends_with("_excluded_middle")
                          ? formula::AxiomOrigin::ExcludedMiddle
                          : formula::AxiomOrigin::Support;
        out.theory.add_axiom(std::move(support), origin);
    }
    out.conjecture = *conjecture;
    return out;
}

LoadedProblem load_problem(const std::string& path, const std::string& conjecture_name) {
    return load_problem_text(read_file(path), conjecture_name);
}

std::string resolve_out_dir(const PipelineConfig& config) {
    if (!config.out_dir.empty()) return config.out_dir;
    if (const char* env = std::getenv("GEOPROOF_OUT")) return env;
    return ".";
}

namespace {

struct ProveArtifacts {
    LoadedProblem problem;
    prover::Proof proof;
};

// Runs the prover (or reuses a valid proof.json already in out_dir) and
// writes the proof artifacts.
std::optional<ProveArtifacts> prove_stage(const PipelineConfig& config, std::string& log,
                                          int& exit_code) {
    ProveArtifacts out;
    out.problem = load_problem(config.input_path, config.conjecture);
    const std::string name = out.problem.conjecture.name;
    fs::path dir(resolve_out_dir(config));

    fs::path proof_json_path = dir / (name + ".proof.json");
    bool reused = false;
    if (fs::exists(proof_json_path)) {
        try {
            prover::Proof loaded = prover::proof_from_json(read_file(proof_json_path.string()));
            if (prover::is_valid(
                    prover::check_proof(out.problem.theory, out.problem.conjecture, loaded))) {
                out.proof = std::move(loaded);
                reused = true;
                log += "reusing proof from " + proof_json_path.string() + "\n";
            }
        } catch (const std::exception&) {
            // fall through to a fresh search
        }
    }

    if (!reused) {
        auto result = prover::prove(out.problem.theory, out.problem.conjecture, config.limits);
        if (std::holds_alternative<prover::Unprovable>(result)) {
            auto reason = std::get<prover::Unprovable>(result).reason;
            log += std::string("unprovable: ") +
                   (reason == prover::Unprovable::Reason::Timeout ? "timeout"
                                                                  : "limit exhausted") +
                   "\n";
            exit_code = kExitUnprovable;
            return std::nullopt;
        }
        out.proof = std::get<prover::Proof>(result);
    }

    auto check = prover::check_proof(out.problem.theory, out.problem.conjecture, out.proof);
    if (!prover::is_valid(check)) {
        const auto& invalid = std::get<prover::Invalid>(check);
        throw Error("internal: produced proof fails checking at step " +
                    std::to_string(invalid.step_index) + ": " + invalid.reason);
    }

    if (config.emit.count("proof-json"))
        write_file_atomic(proof_json_path.string(), prover::proof_to_json(out.proof));
    if (config.emit.count("proof-text")) {
        proofdoc::RenderOptions render;
        render.hide_simple_axioms = config.hide_simple;
        write_file_atomic((dir / (name + ".proof.txt")).string(),
                          proofdoc::render_text(out.proof, out.problem.theory, render));
    }

    std::string used = "used axioms:";
    for (const auto& ax : proofdoc::used_axioms(out.proof, out.problem.theory, false))
        used += " " + ax;
    log += used + "\n";
    log += "proof: " + std::to_string(out.proof.statistics.mp_count) + " MP steps, depth " +
           std::to_string(out.proof.statistics.max_depth) + "\n";
    exit_code = kExitOk;
    return out;
}

interp::InterpRegistry build_registry(const PipelineConfig& config) {
    interp::InterpRegistry registry = interp::InterpRegistry::builtin();
    for (const std::string& manifest_path : config.manifests) {
        fs::path p(manifest_path);
        registry.load_manifest(read_file(manifest_path),
                               directory_resolver(p.has_parent_path() ? p.parent_path()
                                                                      : fs::path(".")));
    }
    return registry;
}

} // namespace

int cmd_prove(const PipelineConfig& config, std::string& log) {
    try {
        int code = kExitOk;
        prove_stage(config, log, code);
        return code;
    } catch (const Error& e) {
        log += std::string("error: ") + e.what() + "\n";
        return kExitInputError;
    }
}

int cmd_illustrate(const PipelineConfig& config, std::string& log) {
    int code = kExitOk;
    std::optional<ProveArtifacts> proved;
    try {
        proved = prove_stage(config, log, code);
        if (!proved) return code;
    } catch (const Error& e) {
        log += std::string("error: ") + e.what() + "\n";
        return kExitInputError;
    }

    try {
        const Theory& theory = proved->problem.theory;
        const CoherentFormula& conjecture = proved->problem.conjecture;
        const prover::Proof& proof = proved->proof;
        fs::path dir(resolve_out_dir(config));

        CoherentFormula exists_conjecture = interp::premises_conjecture(conjecture);
        write_file_atomic((dir / (conjecture.name + "_exists.tptp")).string(),
                          tptp::to_tptp(exists_conjecture, "conjecture") + "\n");

        interp::InterpRegistry registry = build_registry(config);

        interp::GeoModel premise_model;
        std::string exists_text;
        if (!config.exists_gcl.empty()) {
            exists_text = read_file(config.exists_gcl);
            gcl::GCLProgram program = gcl::parse_gcl(
                exists_text, directory_resolver(fs::path(config.exists_gcl).parent_path()));
            premise_model =
                interp::realize_premises(program, conjecture.name + "_exists",
                                         proof.intro.constants, proof.intro.assumed, config.seed);
        } else {
            auto result = prover::prove(theory, exists_conjecture, config.limits);
            if (!std::holds_alternative<prover::Proof>(result))
                throw Error("cannot prove premise existence (" + exists_conjecture.name +
                            "); provide an existence construction with --exists-gcl");
            const prover::Proof& exists_proof = std::get<prover::Proof>(result);
            premise_model = illustrate::realize_premises_from_proof(
                exists_proof, theory, registry, proof.intro.constants, proof.intro.assumed,
                config.seed, config.policy);
            // synthesize an exists procedure so the emitted document is
            // self-contained: place every premise constant literally
            std::string body;
            for (const std::string& c : proof.intro.constants) {
                const interp::GeoPoint& p = premise_model.points.at(c);
                std::ostringstream line;
                line << "  point " << c << " " << p.x << " " << p.y << "\n  cmark_t " << c
                     << "\n";
                body += line.str();
            }
            exists_text = "procedure " + conjecture.name + "_exists {";
            for (const std::string& c : proof.intro.constants) exists_text += " " + c;
            exists_text += " } {\n" + body + "}\n";
        }

        illustrate::CompileOptions options;
        options.animate = config.animate;
        options.lemma_limits = config.limits;
        illustrate::GCLDocument doc =
            illustrate::compile(proof, theory, premise_model, registry, config.policy, options);
        doc.exists_text = exists_text;

        if (config.emit.count("gcl"))
            for (const auto& [file, content] : doc.files())
                write_file_atomic((dir / file).string(), content);

        if (config.emit.count("svg")) {
            gcl::GCLProgram main_program =
                gcl::parse_gcl(doc.main_text(), [&doc](const std::string& name)
                                   -> std::optional<std::string> {
                        auto files = doc.files();
                        auto it = files.find(name);
                        if (it == files.end()) return std::nullopt;
                        return it->second;
                    });
            gcl::Scene scene = gcl::evaluate(main_program, config.seed);
            if (config.animate && scene.frame_count > 0) {
                for (int i = 1; i <= scene.frame_count; ++i)
                    write_file_atomic((dir / "frames" /
                                       ("frame_" + std::to_string(i) + ".svg")).string(),
                                      gcl::render_svg(scene, i));
                log += "frames: " + std::to_string(scene.frame_count) + "\n";
            }
            write_file_atomic((dir / (conjecture.name + ".svg")).string(),
                              gcl::render_svg(scene, 0));
        }

        if (doc.selected_branch)
            log += "illustrated branch " + std::to_string(*doc.selected_branch + 1) + "\n";
        return kExitOk;
    } catch (const Error& e) {
        log += std::string("illustration error: ") + e.what() + "\n";
        return kExitIllustration;
    }
}

int cmd_render(const std::string& gcl_path, bool frames, const std::string& out_dir,
               double scale, std::string& log) {
    try {
        fs::path input(gcl_path);
        std::string text = read_file(gcl_path);
        gcl::GCLProgram program = gcl::parse_gcl(text, directory_resolver(input.parent_path()));
        gcl::Scene scene = gcl::evaluate(program);
        fs::path dir(out_dir.empty() ? input.parent_path() : fs::path(out_dir));
        std::string stem = input.stem().string();
        if (frames) {
            int total = gcl::frame_total(scene);
            for (int i = 1; i <= total; ++i)
                write_file_atomic((dir / (stem + "_frame_" + std::to_string(i) + ".svg")).string(),
                                  gcl::render_svg(scene, i, scale));
            log += "frames: " + std::to_string(total) + "\n";
        } else {
            write_file_atomic((dir / (stem + ".svg")).string(), gcl::render_svg(scene, 0, scale));
        }
        return kExitOk;
    } catch (const Error& e) {
        log += std::string("error: ") + e.what() + "\n";
        return kExitInputError;
    }
}

} // namespace geoproof::cli
