#include "zeno/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace zeno {

const char* bath_kind_name(BathModel::Kind k) {
    return k == BathModel::Kind::exponential ? "exponential" : "delta";
}

const char* bath_range_name(BathModel::Range r) {
    return r == BathModel::Range::long_range ? "long_range" : "short_range";
}

void BathModel::validate() const {
    if (!(tau_env > 0.0) || !std::isfinite(tau_env)) throw InvalidArgument("bath.tau_env must be positive");
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) throw InvalidArgument("bath.gamma0 must be non-negative");
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("bath.g must be non-negative");
    if (!std::isfinite(omega_env)) throw InvalidArgument("bath.omega_env must be finite");
    if (kind == Kind::exponential && gamma0 > 0.0) {
        const double tmax = 40.0 * tau_env;
        if (!bochner_check([this](double t) { return correlation(t); }, tmax, 4001, 1e-10))
            throw InvalidArgument("bath correlation fails the sampled Bochner check");
    }
}

cplx BathModel::correlation(double tau) const {
    if (kind == Kind::delta) throw InvalidArgument("delta-correlated bath has no pointwise correlation value");
    return gamma0 / (2.0 * tau_env) * std::exp(-std::abs(tau) / tau_env) * std::exp(-I * omega_env * tau);
}

double BathModel::spectrum(double nu) const {
    if (kind == Kind::delta) return gamma0;
    const double d = (nu - omega_env) * tau_env;
    return gamma0 / (1.0 + d * d);
}

cplx BathModel::integral_half() const {
    if (kind == Kind::delta) return 0.5 * gamma0;
    return 0.5 * gamma0 / (1.0 + I * omega_env * tau_env);
}

cplx BathModel::integral_full() const { return 2.0 * integral_half().real(); }

cplx BathModel::integral_sign() const { return 2.0 * I * integral_half().imag(); }

bool bochner_check(const std::function<cplx(double)>& C, double tmax, int samples, double tol) {
    if (samples < 3 || !(tmax > 0.0)) throw InvalidArgument("bochner_check: bad sampling");
    const double h = tmax / (samples - 1);
    std::vector<cplx> c(samples);
    for (int k = 0; k < samples; ++k) c[k] = C(k * h);
    const double nu_max = M_PI / h;
    const int nnu = 2 * samples;
    double smax = 0.0, smin = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= nnu; ++j) {
        const double nu = -nu_max + 2.0 * nu_max * j / nnu;
        // S(nu) = 2 Re int_0^tmax C(t) e^{i nu t} dt (trapezoid); stationarity gives the t < 0 half
        cplx acc = 0.5 * c[0];
        const cplx step = std::exp(I * nu * h);
        cplx ph = step;
        for (int k = 1; k < samples; ++k, ph *= step) acc += (k == samples - 1 ? 0.5 : 1.0) * c[k] * ph;
        const double s = 2.0 * h * acc.real();
        smax = std::max(smax, s);
        smin = std::min(smin, s);
    }
    return smin >= -tol * std::max(1.0, smax);
}

namespace {

struct JumpCache {
    std::vector<Matrix> L, Ld, LdL;
    explicit JumpCache(const std::vector<Matrix>& jumps) {
        for (const auto& j : jumps) {
            L.push_back(j);
            Ld.push_back(j.adjoint());
            LdL.push_back(j.adjoint() * j);
        }
    }
};

Matrix rhs_cached(const Matrix& rho, const Matrix& H, const JumpCache& c) {
    Matrix out = -I * (H * rho - rho * H);
    for (std::size_t k = 0; k < c.L.size(); ++k) {
        out += c.L[k] * rho * c.Ld[k];
        out -= 0.5 * (c.LdL[k] * rho + rho * c.LdL[k]);
    }
    return out;
}

double entropy_of(const RealVector& p) {
    double s = 0.0;
    for (double x : p)
        if (x > kTol.entropy_floor) s -= x * std::log(x);
    return std::max(s, 0.0);
}

TrajectoryRecord make_record(double t, double f, const Matrix& rho, const Matrix& H) {
    TrajectoryRecord r;
    r.t = t;
    r.f = f;
    const EigenSystem es = hermitian_eigensystem(hermitize(H));
    r.p_ground = std::real(es.vectors.col(0).dot(rho * es.vectors.col(0)));
    if (rho.rows() > 1) r.p_excited = std::real(es.vectors.col(1).dot(rho * es.vectors.col(1)));
    r.trace = rho.trace().real();
    Eigen::SelfAdjointEigenSolver<Matrix> sp(hermitize(rho), Eigen::EigenvaluesOnly);
    r.min_eig = sp.eigenvalues()[0];
    r.entropy = entropy_of(sp.eigenvalues());
    if (rho.rows() == 2) {
        r.bloch = Eigen::Vector3d(expectation(rho, pauli(Axis::x)), expectation(rho, pauli(Axis::y)),
                                  expectation(rho, pauli(Axis::z)));
    }
    return r;
}

std::string where(double t, const FFunction& f_of_t, const std::function<Matrix(double)>& H) {
    std::ostringstream os;
    os << "t=" << t;
    if (f_of_t) os << ", f=" << f_of_t(t);
    try {
        const Matrix h = H(t);
        if (h.rows() > 1) {
            const EigenSystem es = hermitian_eigensystem(hermitize(h));
            os << ", gap=" << es.values[1] - es.values[0];
        }
    } catch (const std::exception&) {
    }
    return os.str();
}

double f_value(const FFunction& f_of_t, double t) {
    return f_of_t ? f_of_t(t) : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

Matrix lindblad_rhs(const Matrix& rho, const Matrix& H, const std::vector<Matrix>& jumps) {
    require_square(rho, "rho");
    if (H.rows() != rho.rows() || H.cols() != rho.cols()) throw InvalidArgument("lindblad_rhs: H dimension mismatch");
    for (const auto& L : jumps)
        if (L.rows() != rho.rows() || L.cols() != rho.cols())
            throw InvalidArgument("lindblad_rhs: jump operator dimension mismatch");
    return rhs_cached(rho, H, JumpCache(jumps));
}

Matrix liouvillian(const Matrix& H, const std::vector<Matrix>& jumps) {
    const Eigen::Index d = H.rows();
    const Matrix Id = Matrix::Identity(d, d);
    // vec(A X B) = (B^T kron A) vec(X)
    Matrix S = -I * (kron(Id, H) - kron(H.transpose(), Id));
    for (const auto& L : jumps) {
        const Matrix LdL = L.adjoint() * L;
        S += kron(L.conjugate(), L) - 0.5 * kron(Id, LdL) - 0.5 * kron(LdL.transpose(), Id);
    }
    return S;
}

Trajectory evolve(const LindbladGenerator& gen, const Matrix& rho0, double t_end, const EvolveOptions& opts,
                  const FFunction& f_of_t) {
    require_density(rho0, "initial state");
    if (!gen.H) throw InvalidArgument("evolve: generator has no Hamiltonian");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("evolve: horizon must be positive");
    if (opts.outputs < 2) throw InvalidArgument("evolve: need at least two output times");
    const Eigen::Index d = rho0.rows();
    for (const auto& L : gen.jumps)
        if (L.rows() != d || L.cols() != d) throw InvalidArgument("evolve: jump operator dimension mismatch");
    const JumpCache cache(gen.jumps);

    Trajectory tr;
    tr.has_bloch = d == 2;
    Matrix rho = rho0;
    auto rhs = [&](double t, const Matrix& r) -> Matrix { return rhs_cached(r, gen.H(t), cache); };
    auto post = [&](double t, Matrix& r) {
        r = hermitize(r);
        r /= r.trace().real();
        if (opts.positivity_every_step && d <= 64) {
            const double me = min_eigenvalue(r);
            if (me < -kTol.positivity_abort && opts.abort_on_positivity)
                throw ComputationError("positivity breach (min eigenvalue " + std::to_string(me) + ") at " +
                                       where(t, f_of_t, gen.H));
        }
        if (opts.on_step) opts.on_step(t, r);
        return false;
    };

    auto record = [&](double t) {
        tr.records.push_back(make_record(t, f_value(f_of_t, t), rho, gen.H(t)));
        if (opts.snapshots) tr.snapshots.push_back(rho);
        const auto& rec = tr.records.back();
        if (std::abs(rec.trace - 1.0) > kTol.trajectory_trace)
            throw ComputationError("trace drift at " + where(t, f_of_t, gen.H));
        if (rec.min_eig < -kTol.positivity_abort && opts.abort_on_positivity)
            throw ComputationError("positivity breach at " + where(t, f_of_t, gen.H));
    };

    record(0.0);
    double h = 0.0;
    double t_prev = 0.0;
    for (int i = 1; i < opts.outputs; ++i) {
        const double t_next = (i == opts.outputs - 1) ? t_end : t_end * i / (opts.outputs - 1);
        try {
            const OdeStats st = dopri5(rhs, rho, t_prev, t_next, h, opts.ode, post);
            tr.stats.accepted += st.accepted;
            tr.stats.rejected += st.rejected;
            tr.stats.rhs_evals += st.rhs_evals;
            tr.stats.h_last = st.h_last;
        } catch (const ComputationError& e) {
            const std::string msg = e.what();
            if (msg.find("underflow") != std::string::npos)
                throw ComputationError(msg + " [" + where(t_prev, f_of_t, gen.H) + "]");
            throw;
        }
        t_prev = t_next;
        record(t_next);
    }
    tr.final_state = rho;
    return tr;
}

Trajectory evolve(const LindbladGenerator& gen, const Matrix& rho0, const Schedule& s, const EvolveOptions& opts) {
    return evolve(gen, rho0, s.T, opts, [&s](double t) { return s.f_at(t); });
}

Matrix propagate(const std::function<Matrix(double)>& H, double t0, double t1, int steps) {
    if (steps < 1) throw InvalidArgument("propagate: steps must be positive");
    const Matrix H0 = H(t0);
    Matrix U = Matrix::Identity(H0.rows(), H0.cols());
    const double h = (t1 - t0) / steps;
    for (int k = 0; k < steps; ++k) U = magnus4_step(H, t0 + k * h, h) * U;
    return U;
}

Matrix coarse_grained_step(const Matrix& rho_I, const Matrix& U_t, double gamma, const Matrix& P, double dt,
                           const Matrix* dH) {
    require_square(rho_I, "rho");
    if (!(gamma >= 0.0)) throw InvalidArgument("coarse_grained_step: gamma must be non-negative");
    if (!(dt > 0.0)) throw InvalidArgument("coarse_grained_step: dt must be positive");
    const Matrix L = std::sqrt(gamma) * (U_t.adjoint() * P * U_t);
    Matrix X = L * rho_I * L - L * L * rho_I;
    Matrix out = rho_I + dt * (X + X.adjoint());
    if (dH) out -= I * commutator(*dH, rho_I);
    return out;
}

std::vector<std::string> coarse_window_warnings(double dt, const BathModel* bath, double T) {
    std::vector<std::string> w;
    if (bath && bath->kind == BathModel::Kind::exponential && dt < 10.0 * bath->tau_env)
        w.push_back("coarse-graining step is not much larger than the bath correlation time");
    if (T > 0.0 && dt > 0.01 * T) w.push_back("coarse-graining step is not much smaller than the run-time");
    return w;
}

Trajectory coarse_grained_evolve(const std::function<Matrix(double)>& H, const Matrix& P, double gamma,
                                 const Matrix& rho0, double T, const CoarseOptions& opts, const FFunction& f_of_t,
                                 const BathModel* bath) {
    require_density(rho0, "initial state");
    if (!(T > 0.0)) throw InvalidArgument("coarse_grained_evolve: T must be positive");
    if (!(opts.dt > 0.0) || opts.substeps < 1 || opts.outputs < 2)
        throw InvalidArgument("coarse_grained_evolve: bad options");
    const long M = std::max(1L, static_cast<long>(std::ceil(T / opts.dt - 1e-12)));
    const double dt = T / static_cast<double>(M);

    Trajectory tr;
    tr.warnings = coarse_window_warnings(dt, bath, T);
    if (gamma * dt > 1.0) tr.warnings.push_back("gamma*dt > 1: the coarse step is not positivity preserving");
    tr.has_bloch = rho0.rows() == 2;

    std::vector<long> rec_steps;
    for (int i = 0; i < opts.outputs; ++i)
        rec_steps.push_back(static_cast<long>(std::llround(static_cast<double>(i) * M / (opts.outputs - 1))));

    Matrix U = Matrix::Identity(rho0.rows(), rho0.cols());
    Matrix rho_I = rho0;
    std::size_t next = 0;
    auto maybe_record = [&](long k) {
        while (next < rec_steps.size() && rec_steps[next] == k) {
            const double t = k * dt;
            const Matrix rho = hermitize(U * rho_I * U.adjoint());
            tr.records.push_back(make_record(t, f_value(f_of_t, t), rho, H(t)));
            if (opts.snapshots) tr.snapshots.push_back(rho);
            ++next;
        }
    };
    maybe_record(0);
    for (long k = 0; k < M; ++k) {
        const double t = k * dt;
        rho_I = hermitize(coarse_grained_step(rho_I, U, gamma, P, dt));
        const double hs = dt / opts.substeps;
        for (int j = 0; j < opts.substeps; ++j) U = magnus4_step(H, t + j * hs, hs) * U;
        maybe_record(k + 1);
    }
    tr.final_state = hermitize(U * rho_I * U.adjoint());
    return tr;
}

ShortMemoryRate redfield_short_memory_rate(const BathModel& bath, double g, double omega, int n) {
    bath.validate();
    if (n < 1) throw InvalidArgument("redfield_short_memory_rate: n must be positive");
    if (!(g >= 0.0)) throw InvalidArgument("redfield_short_memory_rate: g must be non-negative");
    const cplx K = bath.integral_half();
    if (!std::isfinite(K.real()) || !std::isfinite(K.imag()))
        throw ComputationError("bath correlation is not integrable");
    double W = 0.0;
    for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) W += bath.weight(mu, nu);
    const double s = g * g * omega * omega * W;
    return {s * K.real(), s * K.imag()};
}

ShortMemoryGenerator short_memory_generator(const BathModel& bath, const std::vector<Matrix>& sigmas,
                                            double omega) {
    bath.validate();
    if (sigmas.empty()) throw InvalidArgument("short_memory_generator: no coupling operators");
    const cplx K = bath.integral_half();
    const double s = bath.g * bath.g * omega * omega;
    const Eigen::Index d = sigmas.front().rows();
    ShortMemoryGenerator out{Matrix::Zero(d, d), {}};
    const double amp = std::sqrt(2.0 * s * K.real());
    if (bath.range == BathModel::Range::long_range) {
        Matrix S = Matrix::Zero(d, d);
        for (const auto& m : sigmas) S += m;
        out.jumps.push_back(amp * S);
        out.H_shift = s * K.imag() * S * S;
    } else {
        for (const auto& m : sigmas) {
            out.jumps.push_back(amp * m);
            out.H_shift += s * K.imag() * m * m;
        }
    }
    return out;
}

void singular_coupling_tables(const BathModel& bath, int count, Matrix& gamma, Matrix& sigma) {
    bath.validate();
    gamma = Matrix::Zero(count, count);
    sigma = Matrix::Zero(count, count);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b) {
            gamma(a, b) = bath.weight(a, b) * bath.integral_full();
            sigma(a, b) = bath.weight(a, b) * bath.integral_sign();
        }
}

SingularCouplingGenerator singular_coupling_generator(const std::vector<Matrix>& A, const Matrix& gamma,
                                                      const Matrix& sigma, double g) {
    const auto m = static_cast<Eigen::Index>(A.size());
    if (m == 0) throw InvalidArgument("singular_coupling_generator: no coupling operators");
    if (gamma.rows() != m || gamma.cols() != m || sigma.rows() != m || sigma.cols() != m)
        throw InvalidArgument("singular_coupling_generator: correlation table size mismatch");
    for (const auto& a : A) require_hermitian(a, "coupling operator");
    if (!is_hermitian(gamma, 1e-12)) throw InvalidArgument("singular_coupling_generator: gamma is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(gamma));
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -kTol.gamma_psd * scale)
        throw InvalidArgument("singular_coupling_generator: gamma matrix is not positive semidefinite");

    const Eigen::Index d = A.front().rows();
    SingularCouplingGenerator out;
    out.gamma_eigenvalues = es.eigenvalues();
    out.lamb_shift = Matrix::Zero(d, d);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            out.lamb_shift += (g * g / (2.0 * I)) * sigma(a, b) * A[a] * A[b];
    out.lamb_shift = hermitize(out.lamb_shift);
    // gamma = sum_k lambda_k u_k u_k^dagger  =>  L_k = sqrt(g^2 lambda_k) sum_b conj(u_k[b]) A_b
    for (Eigen::Index k = 0; k < m; ++k) {
        const double lam = std::max(0.0, es.eigenvalues()[k]);
        if (lam == 0.0) continue;
        Matrix L = Matrix::Zero(d, d);
        for (Eigen::Index b = 0; b < m; ++b) L += std::conj(es.eigenvectors()(b, k)) * A[b];
        out.jumps.push_back(std::sqrt(g * g * lam) * L);
    }
    return out;
}

Matrix SingularCouplingGenerator::rhs(const Matrix& rho, const Matrix& H_sys) const {
    return lindblad_rhs(rho, H_sys + lamb_shift, jumps);
}

}  // namespace zeno
