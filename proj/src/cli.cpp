#include "zeno/cli.hpp"

#include "zeno/experiments.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace zeno {

namespace {

struct Invocation {
    std::string config;
    std::string out;
    std::vector<std::string> set;
    int threads = 0;
    long long seed = -1;
    bool verbose = false;
};

const std::vector<std::pair<std::string, std::string>> kSubcommands = {
    {"spectrum", "Grover spectrum vs f and vs t under the configured schedule"},
    {"schedule", "Tabulate the interpolation schedule f(t) and its gap"},
    {"evolve", "Single open-system Grover trajectory with the selected backend"},
    {"bloch", "Bloch-matrix eigenvalues over a log grid of gamma/omega"},
    {"oscillator", "Damped oscillator with exponential memory (time-local and kernel solvers)"},
    {"zeno-sweep", "Grover success under continuous measurement over a parameter sweep"},
    {"scaling", "Run-time and mixing-time scaling fits"},
    {"validate", "Load and validate a configuration without running it"},
};

void error_json(std::ostream& err, const char* kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

std::filesystem::path output_dir(const Invocation& inv, const std::string& name) {
    if (!inv.out.empty()) return inv.out;
    const char* root = std::getenv("ZENO_OUTPUT_ROOT");
    return std::filesystem::path(root && *root ? root : "runs") / name;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerics for adiabatic Grover search under environmental measurement", "zeno"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", library_version());
    Invocation inv;
    for (const auto& [name, desc] : kSubcommands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", inv.config, "JSON configuration file");
        sub->add_option("--out", inv.out, "Output directory (default $ZENO_OUTPUT_ROOT/<subcommand> or runs/<subcommand>)");
        sub->add_option("--set", inv.set, "Override a dotted key, e.g. --set bath.gamma0=0.5 (repeatable)")
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
            ->expected(1);
        sub->add_option("--threads", inv.threads, "Worker threads (default: machine parallelism)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", inv.seed, "Random seed")->check(CLI::NonNegativeNumber);
        sub->add_flag("--verbose,-v", inv.verbose, "Progress messages on standard error");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    std::string command;
    for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

    ExperimentConfig cfg;
    try {
        std::vector<std::string> overrides = inv.set;
        if (inv.seed >= 0) overrides.push_back("seed=" + std::to_string(inv.seed));
        if (name != "validate") overrides.push_back("experiment=\"" + name + "\"");
        cfg = inv.config.empty() ? load_config_text("{}", overrides, "<defaults>")
                                 : load_config(inv.config, overrides);
    } catch (const ConfigError& e) {
        error_json(err, "config", e.what());
        return 2;
    }

    out << "resolved config:\n" << cfg.resolved.dump(2) << "\n";
    if (name == "validate") {
        out << "config OK\n";
        return 0;
    }

    RunContext ctx;
    ctx.out = output_dir(inv, name);
    ctx.threads = inv.threads > 0 ? inv.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    ctx.verbose = inv.verbose;
    const auto start = std::chrono::steady_clock::now();
    try {
        const RunReport report = run_experiment(cfg, ctx);
        Manifest m;
        m.config = cfg.resolved;
        m.outputs = report.outputs;
        m.command = command;
        m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(ctx.out, m);
        out << "wrote " << report.outputs.size() + 1 << " files to " << ctx.out.string() << "\n";
    } catch (const ConfigError& e) {
        error_json(err, "config", e.what());
        return 2;
    } catch (const InvalidArgument& e) {
        error_json(err, "config", e.what());
        return 2;
    } catch (const std::exception& e) {
        error_json(err, "computation", e.what());
        return 1;
    }
    return 0;
}

}  // namespace zeno
