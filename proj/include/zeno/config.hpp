#pragma once

#include "zeno/bloch.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/grover.hpp"
#include "zeno/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace zeno {

enum class Backend { lindblad, coarse, redfield, singular };
Backend parse_backend(const std::string& s);
const char* backend_name(Backend b);

struct ExperimentConfig {
    std::string experiment = "spectrum";
    GroverProblem problem;
    std::uint64_t seed = 0;

    struct ScheduleParams {
        Schedule::Kind kind = Schedule::Kind::adaptive;
        double eps = 0.1;
        double T = 100.0;  // constant kind
    } schedule;

    BathModel bath;
    double gamma = 0.0;  // Lindblad measurement rate for L = sqrt(gamma)|w><w|
    Backend backend = Backend::lindblad;

    struct SpectrumParams {
        double N = 0.0;  // 0: 2^n
        int f_points = 201;
        int t_points = 201;
        double shade_factor = 1.0;
    } spectrum;

    struct EvolveParams {
        int outputs = 201;
        double rtol = 1e-7;
        double atol = 1e-9;
        bool measure_s = false;  // extra sqrt(gamma)|s><s| channel
        bool subspace = true;    // exact two-dimensional invariant subspace
        double coarse_dt = 1.0;
        double redfield_dt = 0.01;
        bool snapshots = false;
    } evolve;

    struct BlochParamsCfg {
        BlochVariant variant = BlochVariant::dephasing_z;
        double omega = 1.0;
        double ratio_min = 1e-2;  // Gamma / Omega
        double ratio_max = 1e3;
        int points = 40;
    } bloch;

    struct OscillatorParams {
        double alpha = 1.0;
        double beta = 1.0;
        double horizon = 50.0;  // Omega t
        double x0 = 1.0;
        double p0 = 0.0;
        double ramp = 0.0;
        std::string solver = "both";  // local, kernel, both
        int outputs = 501;
    } oscillator;

    struct SweepParams {
        std::vector<int> n;
        std::vector<double> gamma;
        std::vector<double> eps;
        std::vector<double> T;
        int max_trajectories = 1000;
    } sweep;

    struct ScalingParams {
        int n_min = 4;
        int n_max = 10;
        double eps = 0.1;
        double success = 0.99;
        bool constant = true;
        int mixing_n_min = 4;
        int mixing_n_max = 9;
        double mixing_gamma = 10.0;
        double mixing_threshold = 0.05;
    } scaling;

    json resolved;  // the fully resolved configuration, echoed into every report
};

json default_config();

// Parses JSON text (errors carry line/column), merges onto defaults (unknown keys
// rejected), applies dotted KEY=VALUE overrides last, and validates.
ExperimentConfig load_config_text(const std::string& text, const std::vector<std::string>& overrides = {},
                                  const std::string& source = "<string>");
ExperimentConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
ExperimentConfig config_from_json(const json& j);

}  // namespace zeno
