// Batch driver: runs the checks declared in a model file and reports the
// outcomes, human-readable by default, machine-readable with --json.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "semproc/model.hpp"

int main(int argc, char** argv) {
    CLI::App app{"semproc - semiring-weighted process checks"};

    std::string path;
    semproc::RunFlags flags;
    std::optional<std::size_t> explain_id;
    std::size_t limit_states = 0, limit_depth = 0;

    app.add_option("file", path, "model file to run")->required()->check(CLI::ExistingFile);
    app.add_flag("--json", flags.json, "emit the report as JSON");
    app.add_flag("--timings", flags.timings, "include wall-clock timings in the report");
    app.add_option("--limit-states", limit_states, "override the state-space limit");
    app.add_option("--limit-depth", limit_depth, "override the trace depth limit");
    app.add_option("--seed", flags.seed, "seed for randomized commands");
    app.add_option("--explain", explain_id, "print the derivation of one check id");

    CLI11_PARSE(app, argc, argv);

    if (limit_states) flags.limit_states = limit_states;
    if (limit_depth) flags.limit_depth = limit_depth;

    try {
        semproc::ModelFile model = semproc::parse_model_file(path);
        if (explain_id) {
            std::cout << semproc::explain_check(model, flags, *explain_id);
            return 0;
        }
        semproc::Report report = semproc::run_model(model, flags);
        std::cout << (flags.json ? semproc::render_json(report, flags)
                                 : semproc::render_text(report, flags));
        return semproc::report_exit_code(report);
    } catch (const semproc::ToolkitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
