#include "zeno/caldeira.hpp"

#include "zeno/fit.hpp"
#include "zeno/ode.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace zeno {

void OscillatorBath::validate() const {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) throw InvalidArgument("oscillator: gamma0 must be >= 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw InvalidArgument("oscillator: omega_c must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidArgument("oscillator: mass must be positive");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidArgument("oscillator: omega0 must be positive");
    if (!(ramp >= 0.0) || !std::isfinite(ramp)) throw InvalidArgument("oscillator: ramp must be >= 0");
}

double OscillatorBath::alpha_at(double t) const {
    const double w = omega_at(t);
    return gamma0 / (2.0 * mass * w * w);
}

double OscillatorBath::beta_at(double t) const { return omega_c / omega_at(t); }

OscillatorBath oscillator_from_dimensionless(double alpha, double beta) {
    OscillatorBath b;
    b.gamma0 = 2.0 * alpha;
    b.omega_c = beta;
    b.validate();
    return b;
}

double spectral_function(double w, const OscillatorBath& b) {
    if (!(w >= 0.0)) throw InvalidArgument("spectral_function: frequency must be >= 0");
    return b.gamma0 * w * b.omega_c / (w * w + b.omega_c * b.omega_c);
}

double memory_kernel(double t, const OscillatorBath& b) {
    if (!(t >= 0.0)) throw InvalidArgument("memory_kernel: time must be >= 0");
    return 0.5 * b.gamma0 * b.omega_c * std::exp(-b.omega_c * t);
}

Eigen::Matrix3d m_matrix(double alpha, double beta) {
    if (!(alpha >= 0.0) || !(beta >= 0.0)) throw InvalidArgument("m_matrix: alpha and beta must be >= 0");
    Eigen::Matrix3d M;
    M << 0.0, 1.0, 0.0,
         -(1.0 + alpha), 0.0, 1.0,
         alpha * beta, 0.0, -beta;
    return M;
}

std::array<cplx, 3> m_eigenvalues(double alpha, double beta) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(m_matrix(alpha, beta), false);
    std::array<cplx, 3> v{es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2]};
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return v;
}

double on_curve_beta(double alpha) {
    if (!(alpha >= 2.0)) throw InvalidArgument("on_curve_beta: alpha must be >= 2");
    return 3.0 * std::sqrt((alpha - 2.0) / 2.0);
}

std::array<double, 3> analytic_eigenvalues_on_curve(double alpha) {
    if (!(alpha >= 8.0)) throw InvalidArgument("analytic eigenvalues require alpha >= 8");
    const double a = std::sqrt(alpha - 8.0), c = std::sqrt(alpha - 2.0), r2 = std::sqrt(2.0);
    return {(a - c) / r2, -c / r2, -(a + c) / r2};
}

Eigen::Vector3d zeno_eigenvector(double alpha) {
    const double l1 = analytic_eigenvalues_on_curve(alpha)[0];
    Eigen::Vector3d v(1.0, l1, alpha + 1.0 + l1 * l1);
    return v / v.norm();
}

Eigen::Vector3d to_dimensionless(double x, double p, double B, double mass, double omega) {
    return {std::sqrt(2.0 * mass * omega) * x, std::sqrt(2.0 / (mass * omega)) * p,
            std::sqrt(2.0 / (mass * omega * omega * omega)) * B};
}

Eigen::Vector3d to_physical(const Eigen::Vector3d& r, double mass, double omega) {
    return {r[0] / std::sqrt(2.0 * mass * omega), r[1] / std::sqrt(2.0 / (mass * omega)),
            r[2] / std::sqrt(2.0 / (mass * omega * omega * omega))};
}

OscillatorTrajectory evolve_local(const OscillatorBath& b, double x0, double p0, double horizon,
                                  const LocalOptions& opts) {
    b.validate();
    if (!(horizon > 0.0) || opts.outputs < 2) throw InvalidArgument("evolve_local: bad horizon or outputs");
    if (!std::isfinite(x0) || !std::isfinite(p0)) throw InvalidArgument("evolve_local: initial state must be finite");
    // (1 + tau dOmega/dt / Omega^2) = (1 - 2 r t) / (1 - r t) must stay positive
    if (b.ramp * horizon >= 0.5) throw InvalidArgument("evolve_local: ramp too steep for the horizon (need r t < 1/2)");

    OdeOptions o;
    o.rtol = opts.rtol;
    o.atol = opts.atol;
    OscillatorTrajectory tr;
    Eigen::Vector3d r = to_dimensionless(x0, p0, 0.0, b.mass, b.omega0);
    double h = 0.0;
    const bool constant = b.ramp == 0.0;
    const Eigen::Matrix3d M0 = m_matrix(b.alpha(), b.beta());
    // constant frequency: r' = M r in tau; otherwise dr/dt = Omega(t) M(alpha(t), beta(t)) r
    auto rhs = [&](double s, const Eigen::Vector3d& y) -> Eigen::Vector3d {
        if (constant) return M0 * y;
        return b.omega_at(s) * (m_matrix(b.alpha_at(s), b.beta_at(s)) * y);
    };
    const double s_end = constant ? b.omega0 * horizon : horizon;
    double s_prev = 0.0;
    for (int k = 0; k < opts.outputs; ++k) {
        const double s = s_end * k / (opts.outputs - 1);
        if (s > s_prev) dopri5(rhs, r, s_prev, s, h, o);
        s_prev = s;
        const double t = constant ? s / b.omega0 : s;
        tr.t.push_back(t);
        tr.tau.push_back(b.omega_at(t) * t);
        tr.r.push_back(r);
    }
    return tr;
}

namespace {

// Three-stage Gauss collocation data with exponential-kernel product weights.
struct Collocation {
    std::array<double, 3> c{};
    Eigen::Matrix3d a;     // A_j(c_i)
    Eigen::Vector3d bw;    // A_j(1)
    Eigen::Vector3d w0;    // h int_0^{c_i} K(h(c_i - th)) dth
    Eigen::Matrix3d W;     // h^2 int_0^{c_i} K(h(c_i - th)) A_j(th) dth
    double j0 = 0.0;       // h int_0^1 e^{-beta h (1 - th)} dth
    Eigen::Vector3d jA;    // h^2 int_0^1 e^{-beta h (1 - th)} A_j(th) dth
};

Collocation make_collocation(double h, double kappa, double beta) {
    using boost::math::quadrature::gauss;
    Collocation C;
    const double s = std::sqrt(15.0) / 10.0;
    C.c = {0.5 - s, 0.5, 0.5 + s};
    auto ell = [&](int j, double th) {
        double v = 1.0;
        for (int m = 0; m < 3; ++m)
            if (m != j) v *= (th - C.c[m]) / (C.c[j] - C.c[m]);
        return v;
    };
    auto A = [&](int j, double th) { return gauss<double, 10>::integrate([&](double u) { return ell(j, u); }, 0.0, th); };
    for (int i = 0; i < 3; ++i) {
        const double ci = C.c[i];
        auto ker = [&](double th) { return kappa * std::exp(-beta * h * (ci - th)); };
        C.w0[i] = h * gauss<double, 20>::integrate(ker, 0.0, ci);
        for (int j = 0; j < 3; ++j) {
            C.a(i, j) = A(j, ci);
            C.W(i, j) = h * h * gauss<double, 20>::integrate([&](double th) { return ker(th) * A(j, th); }, 0.0, ci);
        }
    }
    auto decay = [&](double th) { return std::exp(-beta * h * (1.0 - th)); };
    C.j0 = h * gauss<double, 20>::integrate(decay, 0.0, 1.0);
    for (int j = 0; j < 3; ++j) {
        C.bw[j] = A(j, 1.0);
        C.jA[j] = h * h * gauss<double, 20>::integrate([&](double th) { return decay(th) * A(j, th); }, 0.0, 1.0);
    }
    return C;
}

}  // namespace

OscillatorTrajectory evolve_kernel(const OscillatorBath& b, double x0, double p0, double horizon,
                                   const KernelOptions& opts) {
    b.validate();
    if (b.ramp != 0.0) throw InvalidArgument("evolve_kernel: only constant trap frequency is supported");
    if (!(horizon > 0.0) || opts.outputs < 2) throw InvalidArgument("evolve_kernel: bad horizon or outputs");
    if (!std::isfinite(x0) || !std::isfinite(p0)) throw InvalidArgument("evolve_kernel: initial state must be finite");
    const double alpha = b.alpha(), beta = b.beta();
    const double kappa = alpha * beta;  // dimensionless kernel kappa e^{-beta s}
    const double tau_end = b.omega0 * horizon;
    double h0 = opts.h > 0.0 ? opts.h : std::min({0.01, 0.1 / beta, 0.1 / std::sqrt(1.0 + alpha)});
    const long steps = std::max(1L, static_cast<long>(std::ceil(tau_end / h0)));
    if (steps > opts.max_history)
        throw ComputationError("evolve_kernel: history buffer exhausted (" + std::to_string(steps) + " steps needed)");
    const double h = tau_end / static_cast<double>(steps);
    const Collocation C = make_collocation(h, kappa, beta);

    // unknowns (V_1..3, Q_1..3): stage values of x~' and p~'
    Eigen::Matrix<double, 6, 6> S = Eigen::Matrix<double, 6, 6>::Identity();
    S.block<3, 3>(0, 3) = -h * C.a;
    S.block<3, 3>(3, 0) = (1.0 + alpha) * h * C.a - C.W;
    const Eigen::PartialPivLU<Eigen::Matrix<double, 6, 6>> lu(S);

    const long depth = static_cast<long>(std::ceil(opts.window / (beta * h)));
    std::vector<double> edecay(static_cast<std::size_t>(depth) + 1);
    for (long d = 0; d <= depth; ++d) edecay[static_cast<std::size_t>(d)] = std::exp(-beta * h * static_cast<double>(d));
    Eigen::Vector3d estage;
    for (int i = 0; i < 3; ++i) estage[i] = std::exp(-beta * h * C.c[i]);

    std::vector<double> J;  // per-step memory moments
    J.reserve(static_cast<std::size_t>(steps));
    auto memory_sum = [&](long n) {  // sum_{d=0}^{depth} e^{-beta h d} J_{n-1-d}
        double acc = 0.0;
        for (long d = 0; d <= depth && n - 1 - d >= 0; ++d)
            acc += edecay[static_cast<std::size_t>(d)] * J[static_cast<std::size_t>(n - 1 - d)];
        return acc;
    };

    std::vector<long> rec;
    for (int k = 0; k < opts.outputs; ++k)
        rec.push_back(static_cast<long>(std::llround(static_cast<double>(k) * steps / (opts.outputs - 1))));
    OscillatorTrajectory tr;
    std::size_t next = 0;
    const Eigen::Vector3d r0 = to_dimensionless(x0, p0, 0.0, b.mass, b.omega0);
    double x = r0[0], p = r0[1];
    auto record = [&](long n) {
        while (next < rec.size() && rec[next] == n) {
            const double tau = h * static_cast<double>(n);
            tr.t.push_back(tau / b.omega0);
            tr.tau.push_back(tau);
            // B~(tau_n) = kappa int_0^tau_n e^{-beta(tau_n - s)} x~(s) ds; the last step ends at tau_n
            const double Bn = n == 0 ? 0.0 : kappa * memory_sum(n);
            tr.r.emplace_back(x, p, Bn);
            ++next;
        }
    };
    record(0);
    for (long n = 0; n < steps; ++n) {
        const double hist = kappa * memory_sum(n);
        Eigen::Matrix<double, 6, 1> rhs;
        for (int i = 0; i < 3; ++i) {
            rhs[i] = p;
            rhs[3 + i] = -(1.0 + alpha) * x + C.w0[i] * x + estage[i] * hist;
        }
        const Eigen::Matrix<double, 6, 1> sol = lu.solve(rhs);
        const Eigen::Vector3d V = sol.head<3>(), Q = sol.tail<3>();
        J.push_back(C.j0 * x + C.jA.dot(V));
        x += h * C.bw.dot(V);
        p += h * C.bw.dot(Q);
        record(n + 1);
    }
    return tr;
}

double fitted_position_decay(const OscillatorTrajectory& tr, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("fitted_position_decay: bad fraction");
    const std::size_t n = tr.tau.size();
    const auto start = static_cast<std::size_t>(std::floor((1.0 - fraction) * static_cast<double>(n - 1)));
    std::vector<double> t, y;
    for (std::size_t i = start; i < n; ++i) {
        const double ax = std::abs(tr.r[i][0]);
        if (ax > 0.0) {
            t.push_back(tr.tau[i]);
            y.push_back(std::log(ax));
        }
    }
    return -line_fit(t, y).slope;
}

}  // namespace zeno
