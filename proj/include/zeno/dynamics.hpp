#pragma once

#include "zeno/core.hpp"
#include "zeno/grover.hpp"
#include "zeno/ode.hpp"

#include <deque>
#include <functional>
#include <string>
#include <vector>

namespace zeno {

struct BathModel {
    enum class Kind { exponential, delta };
    enum class Range { long_range, short_range };

    Kind kind = Kind::exponential;
    Range range = Range::long_range;
    double g = 0.0;
    double tau_env = 0.1;
    double gamma0 = 1.0;
    double omega_env = 0.0;

    void validate() const;
    // C(tau) for the exponential kind; the delta kind has no pointwise value.
    cplx correlation(double tau) const;
    // Fourier transform int C(tau) e^{i nu tau} dtau.
    double spectrum(double nu) const;
    cplx integral_half() const;      // int_0^inf C
    cplx integral_full() const;      // int_-inf^inf C
    cplx integral_sign() const;      // int C(tau) sgn(tau)
    double weight(int mu, int nu) const { return range == Range::long_range || mu == nu ? 1.0 : 0.0; }
};

const char* bath_kind_name(BathModel::Kind k);
const char* bath_range_name(BathModel::Range r);

// Sampled Bochner check: the discrete Fourier transform of C over [0, tmax] stays >= -tol.
bool bochner_check(const std::function<cplx(double)>& C, double tmax, int samples, double tol);

Matrix lindblad_rhs(const Matrix& rho, const Matrix& H, const std::vector<Matrix>& jumps);

// Superoperator acting on column-stacked vec(rho).
Matrix liouvillian(const Matrix& H, const std::vector<Matrix>& jumps);

struct LindbladGenerator {
    std::function<Matrix(double)> H;
    std::vector<Matrix> jumps;
};

struct TrajectoryRecord {
    double t = 0.0;
    double f = 0.0;
    double p_ground = 0.0;
    double p_excited = 0.0;
    double trace = 1.0;
    double min_eig = 0.0;
    double entropy = 0.0;
    Eigen::Vector3d bloch = Eigen::Vector3d::Zero();  // only for dimension 2
};

struct Trajectory {
    std::vector<TrajectoryRecord> records;
    std::vector<Matrix> snapshots;
    Matrix final_state;
    bool has_bloch = false;
    OdeStats stats;
    std::vector<std::string> warnings;
};

struct EvolveOptions {
    OdeOptions ode;
    int outputs = 201;  // uniformly spaced record times including both ends
    bool snapshots = false;
    bool positivity_every_step = true;
    bool abort_on_positivity = true;
    std::function<void(double, const Matrix&)> on_step;  // accepted steps
};

// Time function of the interpolation parameter; nullptr-equivalent empty function records NaN.
using FFunction = std::function<double(double)>;

Trajectory evolve(const LindbladGenerator& gen, const Matrix& rho0, double t_end,
                  const EvolveOptions& opts, const FFunction& f_of_t = {});
Trajectory evolve(const LindbladGenerator& gen, const Matrix& rho0, const Schedule& s,
                  const EvolveOptions& opts);

// Closed-system propagators.
Matrix propagate(const std::function<Matrix(double)>& H, double t0, double t1, int steps);

// One coarse-grained measurement step in the interaction picture: L = sqrt(gamma) U^dagger P U with
// U = U_sys(t). Returns rho_I(t + dt). `dH` is an optional per-step phase operator.
Matrix coarse_grained_step(const Matrix& rho_I, const Matrix& U_t, double gamma, const Matrix& P,
                           double dt, const Matrix* dH = nullptr);

std::vector<std::string> coarse_window_warnings(double dt, const BathModel* bath, double T);

struct CoarseOptions {
    double dt = 1.0;
    int substeps = 8;  // Magnus substeps per coarse step for the system propagator
    int outputs = 201;
    bool snapshots = false;
};

Trajectory coarse_grained_evolve(const std::function<Matrix(double)>& H, const Matrix& P, double gamma,
                                 const Matrix& rho0, double T, const CoarseOptions& opts,
                                 const FFunction& f_of_t = {}, const BathModel* bath = nullptr);

// Interaction-picture coupling operators sigma_mu(t_j) = U^dagger(t_j) sigma_mu U(t_j) on a
// uniform grid, kept for the memory window.
class OperatorHistory {
public:
    OperatorHistory(std::vector<Matrix> sigmas, double spacing);
    void push(const Matrix& U);  // U(t_next)
    std::size_t size() const { return first_ + ops_.size(); }
    std::size_t first_index() const { return first_; }
    double spacing() const { return dt_; }
    double time(std::size_t k) const { return static_cast<double>(k) * dt_; }
    const std::vector<Matrix>& at(std::size_t k) const;
    std::size_t operator_count() const { return sigmas_.size(); }
    void trim_before(std::size_t k);

private:
    std::vector<Matrix> sigmas_;
    double dt_;
    std::size_t first_ = 0;
    std::deque<std::vector<Matrix>> ops_;
};

// Memory integrals Y_mu(t_k) = sum_nu w_mu,nu int_{max(0, t_k - depth)}^{t_k} C(t_k - t') sigma_nu(t') dt'.
std::vector<Matrix> redfield_memory(std::size_t k, const OperatorHistory& hist, const BathModel& bath,
                                    double depth);

// Redfield-I right-hand side in the interaction picture at grid time t_k.
Matrix redfield_rhs(const Matrix& rho_I, std::size_t k, const OperatorHistory& hist, const BathModel& bath,
                    double omega);
Matrix redfield_rhs(const Matrix& rho_I, std::size_t k, const OperatorHistory& hist,
                    const std::vector<Matrix>& memory, const BathModel& bath, double omega);

struct RedfieldOptions {
    double dt = 0.01;       // RK4 step; history spacing is dt/2
    double depth_factor = 8.0;
    int outputs = 201;
    bool abort_on_positivity = true;
};

Trajectory redfield_evolve(const std::function<Matrix(double)>& H, const std::vector<Matrix>& sigmas,
                           const BathModel& bath, double omega, const Matrix& rho0, double T,
                           const RedfieldOptions& opts, const FFunction& f_of_t = {});

struct ShortMemoryRate {
    double rate = 0.0;   // g^2 Omega^2 sum w Re int_0^inf C
    double shift = 0.0;  // same with Im
};

ShortMemoryRate redfield_short_memory_rate(const BathModel& bath, double g, double omega, int n);

// Lindblad generator of the sigma(t') ~ sigma(t) reduction of Redfield-I (Schroedinger frame).
struct ShortMemoryGenerator {
    Matrix H_shift;
    std::vector<Matrix> jumps;
};
ShortMemoryGenerator short_memory_generator(const BathModel& bath, const std::vector<Matrix>& sigmas,
                                            double omega);

struct SingularCouplingGenerator {
    Matrix lamb_shift;
    std::vector<Matrix> jumps;
    RealVector gamma_eigenvalues;
    Matrix rhs(const Matrix& rho, const Matrix& H_sys) const;
};

// gamma[a][b] = int C_ab dtau, sigma[a][b] = int C_ab sgn(tau) dtau.
SingularCouplingGenerator singular_coupling_generator(const std::vector<Matrix>& A, const Matrix& gamma,
                                                      const Matrix& sigma, double g);
void singular_coupling_tables(const BathModel& bath, int count, Matrix& gamma, Matrix& sigma);

}  // namespace zeno
