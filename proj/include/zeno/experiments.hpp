#pragma once

#include "zeno/caldeira.hpp"
#include "zeno/config.hpp"
#include "zeno/fit.hpp"
#include "zeno/io.hpp"

#include <filesystem>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace zeno {

// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the first failure.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

double problem_size(const ExperimentConfig& c);  // spectrum.N, or 2^n when that is 0
Schedule make_schedule(const ExperimentConfig& c, double N);

// Levels of the Grover Hamiltonian: the two from span{|w>, |s>} and the (N-2)-fold zero sector.
Table spectrum_vs_f(const ExperimentConfig& c);
Table spectrum_vs_t(const ExperimentConfig& c);
Table schedule_table(const Schedule& s, int points);

// Fraction of [0, T] spent with gap below `threshold`.
double gap_time_fraction(const Schedule& s, double threshold);

struct GroverRun {
    double success = 0.0;   // instantaneous ground population at T
    double p_w = 0.0;       // LZ-subspace populations at T
    double p_wperp = 0.0;
    double lz_purity = 0.0;
    Trajectory trajectory;
};

// One open-system Grover run with L = sqrt(gamma)|w><w| (and optionally sqrt(gamma)|s><s|).
GroverRun grover_open_run(const ExperimentConfig& c, const GroverProblem& p, const Schedule& s, double gamma,
                          bool measure_s);

struct ZenoPoint {
    int n = 0;
    double eps = 0.0;
    double T = 0.0;
    double gamma = 0.0;
    double success = std::numeric_limits<double>::quiet_NaN();
    double p_w = std::numeric_limits<double>::quiet_NaN();
    double p_wperp = std::numeric_limits<double>::quiet_NaN();
    double lz_purity = std::numeric_limits<double>::quiet_NaN();
    double success_with_s = std::numeric_limits<double>::quiet_NaN();
    bool mixing_expected = false;  // gamma T >= 20 and T >= N gamma / Omega^2
    std::string error;
};

// Points sorted by (n, eps, T, gamma).
std::vector<ZenoPoint> zeno_sweep(const ExperimentConfig& c, int threads);

// Closed-system success in the exact two-dimensional subspace, fourth-order Magnus.
double closed_subspace_success(double N, double omega, const Schedule& s, int steps);
int magnus_steps(double T, double omega);

// Shortest constant-speed run time reaching `success`: geometric scan then bisection.
double constant_speed_runtime(double N, double omega, double success);

// H frozen at f = 1/2, start |s>, L = sqrt(gamma)|w><w|: first time the LZ-subspace
// trace distance to 1/2 falls below `threshold`.
double mixing_time(double N, double omega, double gamma, double threshold);

struct RuntimeScaling {
    std::vector<int> n;
    std::vector<double> adaptive_T;
    std::vector<double> adaptive_success;
    ScalingFit adaptive;
    std::vector<double> constant_T;
    ScalingFit constant;
    bool has_constant = false;
    std::vector<int> mixing_n;
    std::vector<double> mixing_t;
    ScalingFit mixing;
    double gamma_doubling_ratio = 0.0;  // t_mix(2 gamma) / t_mix(gamma) at the largest mixing n
};

RuntimeScaling runtime_scaling(const ExperimentConfig& c, int threads);

// Re/Im of lambda0, lambda+, lambda- (numeric and closed form) over a log grid of gamma/omega.
Table bloch_sweep(const ExperimentConfig& c);
BlochParams bloch_params_for(BlochVariant v, double omega, double gamma);

Table oscillator_table(const OscillatorTrajectory& tr);

struct RunContext {
    std::filesystem::path out;
    int threads = 1;
    bool verbose = false;
};

struct RunReport {
    json summary;
    std::vector<std::string> outputs;  // file names inside the run directory
};

// Dispatches on c.experiment, writes CSV/JSON into ctx.out and returns the summary.
RunReport run_experiment(const ExperimentConfig& c, const RunContext& ctx);

}  // namespace zeno
