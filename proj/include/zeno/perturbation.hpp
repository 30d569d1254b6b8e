#pragma once

#include "zeno/core.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/grover.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace zeno {

// C(tau) = sum_k amp_k exp(-z_k tau) for tau >= 0, Re z_k >= 0.
struct CorrelationFunction {
    std::vector<std::pair<cplx, cplx>> terms;  // (amp, z)

    cplx operator()(double tau) const;
    bool empty() const { return terms.empty(); }
    static CorrelationFunction exponential(const BathModel& b);
    static CorrelationFunction constant(cplx c);
};

struct InteractionSpec {
    struct Coupling {
        int qubit = 0;
        Axis axis = Axis::z;
    };
    double g = 0.0;
    std::vector<Coupling> couplings;
    std::vector<double> means;  // <B_c>, one per coupling
    // correlations[c][c'](tau) = <B_c(tau) B_c'(0)>, uncentered; empty entries vanish
    std::vector<std::vector<CorrelationFunction>> correlations;

    void validate(int n) const;
};

// Every qubit coupled along `axis` to one bath correlation C; long range correlates all pairs.
InteractionSpec uniform_interaction(int n, Axis axis, double g, const CorrelationFunction& C,
                                    BathModel::Range range);

struct FirstOrderShift {
    Matrix H;                // g Omega sum_c <B_c> sigma_c
    Eigen::Matrix2cd lz;     // restriction to {|w>, |w_perp>}
    double s_diagonal = 0.0; // <s|H|s>
};

FirstOrderShift first_order_shift(const InteractionSpec& spec, const GroverProblem& p);

struct AdiabaticPropagator {
    Matrix U;
    double adiabatic_ratio = 0.0;   // max |<psi1|dH/dt|psi0>| / gap^2 on [0, t]
    double rest_correction = 0.0;   // size of the dropped O(1/sqrt N) coupling to |rest>
};

// |psi0(t)> e^{-i phi0} <s| + |psi1(t)> e^{-i phi1} <s_perp| + identity on |rest>.
AdiabaticPropagator adiabatic_propagator(const GroverProblem& p, const Schedule& s, double t);

// Instantaneous |<psi0|sigma|psi1>| at f.
double transition_matrix_element(const GroverProblem& p, double f, Axis axis, int mu);

struct SecondOrderOptions {
    enum class Route { exact, windowed };
    enum class Propagator { exact, adiabatic };
    Route route = Route::exact;
    Propagator propagator = Propagator::exact;
    int steps = 4000;          // t_plus grid over the window
    int tminus_points = 64;    // windowed route
    double tminus_depth = 8.0; // in units of tau_env
    double tau_env = 0.0;      // windowed route: correlation time of the decaying bath
};

struct SecondOrderResult {
    double p_error = 0.0;      // O(g^2) change of the error probability
    double coefficient = 0.0;  // p_error / g^2
    double p_closed = 0.0;     // error probability of the unperturbed evolution
};

// Generic form: system Hamiltonian H(t) from t = 0, coupling operators, initial state at t = 0,
// and the success projector at t_out (error = 1 - its population). Exact propagator only.
SecondOrderResult second_order_error(const std::function<Matrix(double)>& H, const std::vector<Matrix>& sigmas,
                                     const InteractionSpec& spec, double omega, const Matrix& rho0,
                                     const Matrix& success, double t_in, double t_out,
                                     const SecondOrderOptions& opts);

// Grover form: H = grover Hamiltonian (plus the renormalized first-order shift), start |s>,
// error = 1 - ground population at t_out.
SecondOrderResult second_order_error(const InteractionSpec& spec, const GroverProblem& p, const Schedule& s,
                                     double t_in, double t_out, const SecondOrderOptions& opts = {});

// Explicit spin-1/2 bath qubits with H_env = sum_j (omega_j / 2) tau_z^(j).
struct JointBathSpec {
    struct Link {
        int system_qubit = 0;
        Axis system_axis = Axis::z;
        int bath_qubit = 0;
        double theta = 0.0;  // B = cos(theta) tau_z + sin(theta) tau_x
    };
    int k = 0;
    std::vector<double> omega_env;
    std::vector<Link> links;
    double inverse_temperature = 0.0;

    void validate(int n) const;
};

// Bath correlations and means seen by the links, as an InteractionSpec with coupling g.
InteractionSpec bath_qubit_interaction(const JointBathSpec& j, double g);

struct JointOptions {
    int steps = 4000;
    int outputs = 201;
};

struct JointResult {
    Trajectory reduced;
    double joint_trace_error = 0.0;
};

JointResult joint_exact_evolve(const std::function<Matrix(double)>& H_sys, int n, const JointBathSpec& j, double g,
                               double omega, const Matrix& rho_sys0, double T, const JointOptions& opts,
                               const FFunction& f_of_t = {});
JointResult joint_exact_evolve(const GroverProblem& p, const JointBathSpec& j, double g, const Schedule& s,
                               const JointOptions& opts = {});

}  // namespace zeno
