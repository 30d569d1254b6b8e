#pragma once

#include "zeno/core.hpp"

#include <array>
#include <vector>

namespace zeno {

// Oscillator with trap frequency Omega(t) = omega0 (1 - ramp t), coupled to a
// reservoir with spectral function Gamma0 w wc / (w^2 + wc^2).
struct OscillatorBath {
    double gamma0 = 0.0;
    double omega_c = 1.0;
    double mass = 1.0;
    double omega0 = 1.0;
    double ramp = 0.0;

    void validate() const;
    double omega_at(double t) const { return omega0 * (1.0 - ramp * t); }
    double alpha_at(double t) const;
    double beta_at(double t) const;
    double alpha() const { return alpha_at(0.0); }
    double beta() const { return beta_at(0.0); }
};

// Bath with the given dimensionless (alpha, beta) at m = Omega = 1.
OscillatorBath oscillator_from_dimensionless(double alpha, double beta);

double spectral_function(double w, const OscillatorBath& b);
double memory_kernel(double t, const OscillatorBath& b);

Eigen::Matrix3d m_matrix(double alpha, double beta);
std::array<cplx, 3> m_eigenvalues(double alpha, double beta);  // real part descending

double on_curve_beta(double alpha);  // 3 sqrt((alpha - 2) / 2)
std::array<double, 3> analytic_eigenvalues_on_curve(double alpha);
// Same spectrum from a 50-digit eigensolve of m_matrix(alpha, on_curve_beta(alpha)), rounded to double.
std::array<double, 3> numeric_eigenvalues_on_curve_mp(double alpha);
Eigen::Vector3d zeno_eigenvector(double alpha);

// Dimensionless <-> physical state conversion at trap frequency omega.
Eigen::Vector3d to_dimensionless(double x, double p, double B, double mass, double omega);
Eigen::Vector3d to_physical(const Eigen::Vector3d& r, double mass, double omega);

struct OscillatorTrajectory {
    std::vector<double> t;    // physical time
    std::vector<double> tau;  // Omega(t) t
    std::vector<Eigen::Vector3d> r;  // (x~, p~, B~)
};

struct LocalOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    int outputs = 501;
};

// Time-local enlarged system with B0 = 0.
OscillatorTrajectory evolve_local(const OscillatorBath& b, double x0, double p0, double horizon,
                                  const LocalOptions& opts = {});

struct KernelOptions {
    double h = 0.0;               // dimensionless step; 0 picks one from (alpha, beta)
    double window = 36.0;         // kernel truncation in units of 1/beta
    long max_history = 2'000'000; // stored steps
    int outputs = 501;
};

// Integro-differential form with the memory integral taken over the stored history.
OscillatorTrajectory evolve_kernel(const OscillatorBath& b, double x0, double p0, double horizon,
                                   const KernelOptions& opts = {});

// Decay rate of |x~| fitted on the final `fraction` of the record.
double fitted_position_decay(const OscillatorTrajectory& tr, double fraction = 0.5);

}  // namespace zeno
