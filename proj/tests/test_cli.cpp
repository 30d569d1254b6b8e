#include "zeno/cli.hpp"
#include "zeno/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace zeno;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "zeno");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("zeno_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("defaults load and validate") {
    const ExperimentConfig c = load_config_text("{}");
    CHECK(c.problem.n == 4);
    CHECK(c.schedule.kind == Schedule::Kind::adaptive);
    CHECK(c.resolved["bath"]["tau_env"] == 0.1);
}

TEST_CASE("overrides win over file values") {
    const ExperimentConfig c = load_config_text(R"({"n": 5, "bath": {"gamma0": 2.0}})",
                                                {"bath.gamma0=0.5", "schedule.kind=constant", "sweep.gamma=[0,1]"});
    CHECK(c.problem.n == 5);
    CHECK(c.bath.gamma0 == 0.5);
    CHECK(c.schedule.kind == Schedule::Kind::constant);
    CHECK(c.sweep.gamma == std::vector<double>{0.0, 1.0});
    CHECK(c.resolved["bath"]["gamma0"] == 0.5);
}

TEST_CASE("invalid configurations name the offending key") {
    auto message = [](const std::string& text, const std::vector<std::string>& ov = {}) {
        try {
            load_config_text(text, ov);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message(R"({"n": 20})").find("n_max=14") != std::string::npos);
    CHECK(message(R"({"bath": {"tau": 1}})").find("unknown key 'bath.tau'") != std::string::npos);
    CHECK(message(R"({"omega": "fast"})").find("omega") != std::string::npos);
    CHECK(message("{}", {"bath.gamma0=-1"}).find("bath.gamma0") != std::string::npos);
    CHECK(message("{}", {"nokey"}).find("nokey") != std::string::npos);
    CHECK(message("{\n  \"n\": 4,\n  oops\n}").find(":3:") != std::string::npos);
    CHECK(message(R"({"backend": "redfield", "n": 12})") != "no error");
}

TEST_CASE("validate prints the resolved configuration") {
    const CliResult r = run({"validate", "--set", "n=3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("resolved config:") != std::string::npos);
    CHECK(r.out.find("config OK") != std::string::npos);
}

TEST_CASE("usage and configuration errors exit with code 2") {
    CHECK(run({}).code == 2);
    const CliResult bad = run({"frobnicate"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("Usage") != std::string::npos);
    CHECK(run({"--help"}).code == 0);

    const CliResult n20 = run({"validate", "--set", "n=20"});
    CHECK(n20.code == 2);
    const json e = json::parse(n20.err);
    CHECK(e["error"]["kind"] == "config");
    CHECK(e["error"]["message"].get<std::string>().find("n_max") != std::string::npos);

    const fs::path dir = scratch("parse");
    write(dir / "broken.json", "{\n  \"n\": 3,\n}\n");
    const CliResult parse = run({"validate", "--config", (dir / "broken.json").string()});
    CHECK(parse.code == 2);
    CHECK(parse.err.find("broken.json:3:") != std::string::npos);
}

TEST_CASE("spectrum run writes its tables and a manifest") {
    const fs::path dir = scratch("spectrum");
    const CliResult r = run({"spectrum", "--out", dir.string(), "--set", "spectrum.f_points=21", "--set",
                             "spectrum.t_points=21", "--threads", "1"});
    REQUIRE(r.code == 0);
    for (const char* f : {"spectrum_f.csv", "spectrum_t.csv", "spectrum.json", "manifest.json"})
        CHECK(fs::exists(dir / f));
    std::ifstream in(dir / "manifest.json");
    const json m = json::parse(in);
    CHECK(m["inputs"]["experiment"] == "spectrum");
    CHECK(m["inputs"]["spectrum"]["f_points"] == 21);
}

TEST_CASE("computation failures exit with code 1") {
    const fs::path dir = scratch("fail");
    // the kernel solver's history buffer cannot hold this horizon
    const CliResult r = run({"oscillator", "--out", dir.string(), "--set", "oscillator.solver=kernel", "--set",
                             "oscillator.horizon=1e6"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["error"]["kind"] == "computation");

    const CliResult wrong = run({"zeno-sweep", "--out", dir.string(), "--set", "backend=redfield", "--set", "n=2"});
    CHECK(wrong.code == 2);
}
