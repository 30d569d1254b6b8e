#include "zeno/grover.hpp"

#include <cmath>
// Boost 1.74 pchip calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>

namespace zeno {

namespace detail {
struct ScheduleCurve {
    boost::math::interpolators::pchip<std::vector<double>> interp;
};
}  // namespace detail

namespace {

void require_fraction(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("interpolation parameter f outside [0, 1]");
}

void require_N(double N, double omega) {
    if (!(N >= 1.0) || !std::isfinite(N)) throw InvalidArgument("database size N must be >= 1");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("omega must be positive");
}

Schedule finish(Schedule s) {
    // pchip owns copies of the abscissae/ordinates; keep ours for export
    std::vector<double> x = s.t, y = s.f;
    s.curve = std::make_shared<detail::ScheduleCurve>(
        detail::ScheduleCurve{boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(y))});
    return s;
}

std::size_t grid_points(double N) {
    return static_cast<std::size_t>(std::max(2001.0, std::ceil(40.0 * std::sqrt(N)) + 1));
}

}  // namespace

void GroverProblem::validate() const {
    if (n < 1 || n > kTol.n_max)
        throw InvalidArgument("qubit count " + std::to_string(n) + " outside [1, " +
                              std::to_string(kTol.n_max) + "]");
    if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("omega must be positive");
    if (marked >= static_cast<std::uint64_t>(dim())) throw InvalidArgument("marked index out of range");
}

Vector uniform_state(Eigen::Index dim) {
    return Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

Matrix grover_hamiltonian(const GroverProblem& p, double f) {
    p.validate();
    require_fraction(f);
    const Eigen::Index d = p.dim();
    Matrix H = Matrix::Constant(d, d, -p.omega * f / p.N());
    H(static_cast<Eigen::Index>(p.marked), static_cast<Eigen::Index>(p.marked)) -= p.omega * (1.0 - f);
    return H;
}

TwoLevelHamiltonian landau_zener_reduced(double N, double omega, double f) {
    require_N(N, omega);
    require_fraction(f);
    TwoLevelHamiltonian h;
    const double c = f / std::sqrt(N);
    h.H << 1.0 - f, c, c, f;
    h.H *= -omega;
    return h;
}

TwoLevelHamiltonian landau_zener_reduced(const GroverProblem& p, double f) {
    p.validate();
    return landau_zener_reduced(p.N(), p.omega, f);
}

double gap(double N, double omega, double f) {
    require_N(N, omega);
    require_fraction(f);
    const double a = 1.0 - 2.0 * f;
    return omega * std::sqrt(a * a + 4.0 * f * f / N);
}

double gap(const GroverProblem& p, double f) {
    p.validate();
    return gap(p.N(), p.omega, f);
}

Eigen::Matrix2d subspace_hamiltonian(double N, double omega, double f) {
    require_N(N, omega);
    require_fraction(f);
    const double off = f * std::sqrt(N - 1.0) / N;
    Eigen::Matrix2d h;
    h << 1.0 - f + f / N, off, off, f * (N - 1.0) / N;
    return -omega * h;
}

double subspace_gap(double N, double omega, double f) {
    require_N(N, omega);
    require_fraction(f);
    const double a = 1.0 - 2.0 * f;
    return omega * std::sqrt(a * a + 4.0 * f * (1.0 - f) / N);
}

Eigen::Vector2d subspace_uniform(double N) {
    return Eigen::Vector2d(1.0 / std::sqrt(N), std::sqrt((N - 1.0) / N));
}

Matrix subspace_isometry(const GroverProblem& p) {
    p.validate();
    const Eigen::Index d = p.dim();
    const auto w = static_cast<Eigen::Index>(p.marked);
    Matrix V = Matrix::Zero(d, 2);
    V(w, 0) = 1.0;
    Vector perp = uniform_state(d);
    perp[w] = 0.0;
    V.col(1) = perp / perp.norm();
    return V;
}

const char* schedule_kind_name(Schedule::Kind k) {
    return k == Schedule::Kind::constant ? "constant" : "adaptive";
}

double Schedule::f_at(double time) const {
    if (!curve) throw InvalidArgument("schedule not initialised");
    if (time <= 0.0) return 1.0;
    if (time >= T) return 0.0;
    return std::clamp(curve->interp(time), 0.0, 1.0);
}

double Schedule::fdot_at(double time) const {
    if (!curve) throw InvalidArgument("schedule not initialised");
    return curve->interp.prime(std::clamp(time, 0.0, T));
}

Schedule schedule_constant(double N, double omega, double T) {
    require_N(N, omega);
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("run-time T must be positive");
    Schedule s;
    s.kind = Schedule::Kind::constant;
    s.T = T;
    s.N = N;
    s.omega = omega;
    const std::size_t M = grid_points(N);
    s.t.resize(M);
    s.f.resize(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(M - 1);
        s.t[i] = u * T;
        s.f[i] = 1.0 - u;
    }
    s.t.back() = T;
    s.f.back() = 0.0;
    return finish(std::move(s));
}

Schedule schedule_constant(const GroverProblem& p, double T) {
    p.validate();
    return schedule_constant(p.N(), p.omega, T);
}

Schedule schedule_adaptive(double N, double omega, double eps) {
    require_N(N, omega);
    if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidArgument("epsilon must be positive");
    if (eps > 1.0)
        throw InvalidArgument("epsilon > 1: the adaptive schedule is no longer adiabatic on the gap scale");
    const std::size_t M = grid_points(N);
    const double width = 1.0 / (2.0 * std::sqrt(N));
    std::size_t in_dip = 0;
    for (std::size_t i = 0; i < M; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(M - 1);
        if (std::abs(f - 0.5) <= width) ++in_dip;
    }
    if (in_dip < 20) throw InvalidArgument("adaptive quadrature grid underresolves the gap region");

    // t(f) = (omega/eps) * int_f^1 df' / gap(f')^2, composite 7-point Gauss on each cell
    using GL = boost::math::quadrature::gauss<double, 7>;
    auto integrand = [&](double f) {
        const double g = gap(N, omega, std::clamp(f, 0.0, 1.0));
        return omega / (eps * g * g);
    };
    Schedule s;
    s.kind = Schedule::Kind::adaptive;
    s.eps = eps;
    s.N = N;
    s.omega = omega;
    s.t.resize(M);
    s.f.resize(M);
    s.t[0] = 0.0;
    s.f[0] = 1.0;
    for (std::size_t i = 1; i < M; ++i) {
        const double fa = 1.0 - static_cast<double>(i - 1) / static_cast<double>(M - 1);
        const double fb = 1.0 - static_cast<double>(i) / static_cast<double>(M - 1);
        s.t[i] = s.t[i - 1] + GL::integrate(integrand, fb, fa);
        s.f[i] = fb;
    }
    s.f.back() = 0.0;
    s.T = s.t.back();
    return finish(std::move(s));
}

Schedule schedule_adaptive(const GroverProblem& p, double eps) {
    p.validate();
    return schedule_adaptive(p.N(), p.omega, eps);
}

LzProjection generalized_lz_projection(const Matrix& H, const Vector& in, const Vector& out) {
    require_hermitian(H, "generalized_lz_projection Hamiltonian");
    if (in.size() != H.rows() || out.size() != H.rows())
        throw InvalidArgument("generalized_lz_projection: dimension mismatch");
    if (std::abs(in.norm() - 1.0) > 1e-10 || std::abs(out.norm() - 1.0) > 1e-10)
        throw InvalidArgument("generalized_lz_projection: states must be normalised");
    const cplx ov = in.dot(out);
    if (std::abs(ov) >= kTol.lz_overlap)
        throw InvalidArgument("generalized_lz_projection: in and out states are (nearly) parallel");
    Vector o = out - ov * in;
    o /= o.norm();
    LzProjection r;
    r.h.in_label = "in";
    r.h.out_label = "out";
    r.h.H(0, 0) = in.dot(H * in);
    r.h.H(0, 1) = in.dot(H * o);
    r.h.H(1, 0) = o.dot(H * in);
    r.h.H(1, 1) = o.dot(H * o);
    r.off_diagonal = std::abs(r.h.H(0, 1));
    r.delta_min = 2.0 * r.off_diagonal;
    return r;
}

}  // namespace zeno
