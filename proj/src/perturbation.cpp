#include "zeno/perturbation.hpp"

#include "zeno/ode.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace zeno {

cplx CorrelationFunction::operator()(double tau) const {
    cplx c = 0.0;
    for (const auto& [amp, z] : terms) c += amp * std::exp(-z * tau);
    return c;
}

CorrelationFunction CorrelationFunction::exponential(const BathModel& b) {
    b.validate();
    if (b.kind != BathModel::Kind::exponential)
        throw InvalidArgument("CorrelationFunction::exponential: bath must be of exponential kind");
    CorrelationFunction C;
    C.terms.emplace_back(b.gamma0 / (2.0 * b.tau_env), 1.0 / b.tau_env + I * b.omega_env);
    return C;
}

CorrelationFunction CorrelationFunction::constant(cplx c) {
    CorrelationFunction C;
    if (c != 0.0) C.terms.emplace_back(c, 0.0);
    return C;
}

void InteractionSpec::validate(int n) const {
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("interaction: g must be >= 0");
    for (const auto& c : couplings)
        if (c.qubit < 0 || c.qubit >= n) throw InvalidArgument("interaction: coupling qubit out of range");
    const std::size_t m = couplings.size();
    if (means.size() != m) throw InvalidArgument("interaction: one bath expectation value per coupling is required");
    if (correlations.size() != m) throw InvalidArgument("interaction: correlation table size mismatch");
    for (const auto& row : correlations) {
        if (row.size() != m) throw InvalidArgument("interaction: correlation table must be square");
        for (const auto& C : row)
            for (const auto& [amp, z] : C.terms)
                if (z.real() < 0.0 || !std::isfinite(std::abs(amp)))
                    throw InvalidArgument("interaction: correlation terms must not grow in time");
    }
}

InteractionSpec uniform_interaction(int n, Axis axis, double g, const CorrelationFunction& C,
                                    BathModel::Range range) {
    InteractionSpec s;
    s.g = g;
    for (int mu = 0; mu < n; ++mu) s.couplings.push_back({mu, axis});
    s.means.assign(static_cast<std::size_t>(n), 0.0);
    s.correlations.assign(static_cast<std::size_t>(n), std::vector<CorrelationFunction>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (range == BathModel::Range::long_range || a == b)
                s.correlations[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = C;
    return s;
}

FirstOrderShift first_order_shift(const InteractionSpec& spec, const GroverProblem& p) {
    p.validate();
    spec.validate(p.n);
    FirstOrderShift r;
    r.H = Matrix::Zero(p.dim(), p.dim());
    for (std::size_t c = 0; c < spec.couplings.size(); ++c)
        if (spec.means[c] != 0.0)
            r.H += spec.g * p.omega * spec.means[c] *
                   pauli_operator(spec.couplings[c].axis, spec.couplings[c].qubit, p.n);
    const Matrix V = subspace_isometry(p);
    r.lz = V.adjoint() * r.H * V;
    const Vector s = uniform_state(p.dim());
    r.s_diagonal = std::real(s.dot(r.H * s));
    return r;
}

namespace {

struct SubEigen {
    Eigen::Vector2d psi0, psi1;
    double e0 = 0.0, e1 = 0.0;
};

// Real eigenvectors in the {|w>, |w_perp>} basis; psi0 has non-negative components
// and psi1 = (psi0[1], -psi0[0]), so the frame is continuous along the schedule.
SubEigen sub_eigen(double N, double omega, double f) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(subspace_hamiltonian(N, omega, f));
    SubEigen r;
    r.e0 = es.eigenvalues()[0];
    r.e1 = es.eigenvalues()[1];
    r.psi0 = es.eigenvectors().col(0).cwiseAbs();
    r.psi1 = Eigen::Vector2d(r.psi0[1], -r.psi0[0]);
    return r;
}

}  // namespace

AdiabaticPropagator adiabatic_propagator(const GroverProblem& p, const Schedule& s, double t) {
    p.validate();
    if (!(t >= 0.0 && t <= s.T)) throw InvalidArgument("adiabatic_propagator: t outside the schedule");
    const double N = p.N(), W = p.omega;
    double phi0 = 0.0, phi1 = 0.0, ratio = 0.0;
    const Eigen::Vector2d su = subspace_uniform(N);
    Eigen::Matrix2d dHdf = -W * (su * su.transpose());
    dHdf(0, 0) += W;
    SubEigen prev = sub_eigen(N, W, s.f.front());
    double t_prev = s.t.front();
    auto accumulate = [&](double tn, double fn) {
        const SubEigen cur = sub_eigen(N, W, fn);
        phi0 += 0.5 * (tn - t_prev) * (prev.e0 + cur.e0);
        phi1 += 0.5 * (tn - t_prev) * (prev.e1 + cur.e1);
        const double gap = cur.e1 - cur.e0;
        if (gap > 0.0)
            ratio = std::max(ratio, std::abs(s.fdot_at(tn) * cur.psi1.dot(dHdf * cur.psi0)) / (gap * gap));
        prev = cur;
        t_prev = tn;
    };
    for (std::size_t i = 1; i < s.t.size() && s.t[i] <= t; ++i) accumulate(s.t[i], s.f[i]);
    if (t > t_prev) accumulate(t, s.f_at(t));

    const SubEigen start = sub_eigen(N, W, 1.0);
    const SubEigen now = sub_eigen(N, W, s.f_at(t));
    Eigen::Matrix2cd Us = now.psi0.cast<cplx>() * std::exp(-I * phi0) * start.psi0.transpose().cast<cplx>() +
                          now.psi1.cast<cplx>() * std::exp(-I * phi1) * start.psi1.transpose().cast<cplx>();
    const Matrix V = subspace_isometry(p);
    AdiabaticPropagator r;
    r.U = V * Us * V.adjoint() + (Matrix::Identity(p.dim(), p.dim()) - V * V.adjoint());
    r.adiabatic_ratio = ratio;
    r.rest_correction = 1.0 / std::sqrt(N);
    return r;
}

double transition_matrix_element(const GroverProblem& p, double f, Axis axis, int mu) {
    p.validate();
    const SubEigen e = sub_eigen(p.N(), p.omega, f);
    const Matrix V = subspace_isometry(p);
    const Vector a = V * e.psi0.cast<cplx>(), b = V * e.psi1.cast<cplx>();
    return std::abs(a.dot(pauli_operator(axis, mu, p.n) * b));
}

namespace {

using MatrixList = std::vector<Matrix>;

// Centered correlation table: C_cc' - <B_c><B_c'>.
std::vector<std::vector<CorrelationFunction>> centered(const InteractionSpec& spec) {
    auto table = spec.correlations;
    for (std::size_t a = 0; a < table.size(); ++a)
        for (std::size_t b = 0; b < table.size(); ++b) {
            const double mm = spec.means[a] * spec.means[b];
            if (mm != 0.0) table[a][b].terms.emplace_back(-mm, 0.0);
        }
    return table;
}

// int_0^h e^{-z(h-u)} [S0 (1 - u/h) + S1 u/h] du = w0 S0 + w1 S1, returning also e^{-z h}
void linear_exp_weights(cplx z, double h, cplx& w0, cplx& w1, cplx& ex) {
    const cplx x = z * h;
    if (std::abs(x) < 1e-4) {
        ex = std::exp(-x);
        w0 = h * (0.5 - x / 3.0 + x * x / 8.0 - x * x * x / 30.0);
        w1 = h * (0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0);
    } else {
        ex = std::exp(-x);
        w1 = (1.0 - (1.0 - ex) / x) / z;
        w0 = ((1.0 - ex) / x - ex) / z;
    }
}

template <int Pts>
void gauss_unit_nodes(std::vector<double>& x, std::vector<double>& w) {
    using G = boost::math::quadrature::gauss<double, Pts>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) {
            x.push_back(0.5);
            w.push_back(0.5 * wt[i]);
        } else {
            x.push_back(0.5 * (1.0 - a[i]));
            w.push_back(0.5 * wt[i]);
            x.push_back(0.5 * (1.0 + a[i]));
            w.push_back(0.5 * wt[i]);
        }
    }
}

void unit_nodes(int pts, std::vector<double>& x, std::vector<double>& w) {
    switch (pts) {
        case 32: gauss_unit_nodes<32>(x, w); break;
        case 64: gauss_unit_nodes<64>(x, w); break;
        case 128: gauss_unit_nodes<128>(x, w); break;
        default: throw InvalidArgument("second_order_error: tminus_points must be 32, 64 or 128");
    }
}

struct Frame {
    std::vector<Matrix> U;  // U(t_k) on the grid
    std::function<Matrix(double, double, const Matrix&)> off_grid;  // U(t) from (t_k, U(t_k)), t in [t_k, t_k+1]
};

SecondOrderResult second_order_core(const Frame& frame, const std::vector<Matrix>& sigmas,
                                    const InteractionSpec& spec, double omega, const Matrix& rho0,
                                    const Matrix& success, double t_in, double t_out,
                                    const SecondOrderOptions& opts) {
    const std::size_t m = sigmas.size();
    const auto table = centered(spec);
    const int M = opts.steps;
    const double h = (t_out - t_in) / M;
    const Matrix& UT = frame.U.back();
    const Matrix Pi = UT.adjoint() * success * UT;
    const Matrix rho = rho0;

    std::vector<MatrixList> S(static_cast<std::size_t>(M) + 1);
    for (int k = 0; k <= M; ++k) {
        const Matrix& U = frame.U[static_cast<std::size_t>(k)];
        for (const Matrix& s : sigmas) S[static_cast<std::size_t>(k)].push_back(U.adjoint() * s * U);
    }
    auto integrand = [&](const MatrixList& Z, const MatrixList& Sk) {
        const Eigen::Index d = rho.rows();
        Matrix X = Matrix::Zero(d, d);
        for (std::size_t c = 0; c < m; ++c) X += Z[c] * rho * Sk[c] - Sk[c] * (Z[c] * rho);
        return (Pi * (X + X.adjoint())).trace().real();
    };

    std::vector<double> F(static_cast<std::size_t>(M) + 1, 0.0);
    const Eigen::Index d = rho.rows();
    if (opts.route == SecondOrderOptions::Route::exact) {
        // one accumulator per (c, c', term): exact exponential recursion, sigma linear per cell
        struct Acc {
            std::size_t c, cp;
            cplx amp, w0, w1, ex;
            Matrix Z;
        };
        std::vector<Acc> acc;
        for (std::size_t c = 0; c < m; ++c)
            for (std::size_t cp = 0; cp < m; ++cp)
                for (const auto& [amp, z] : table[c][cp].terms) {
                    Acc a{c, cp, amp, 0.0, 0.0, 0.0, Matrix::Zero(d, d)};
                    linear_exp_weights(z, h, a.w0, a.w1, a.ex);
                    acc.push_back(std::move(a));
                }
        for (int k = 0; k <= M; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            MatrixList Z(m, Matrix::Zero(d, d));
            for (auto& a : acc) {
                if (k > 0) a.Z = a.ex * a.Z + a.w0 * S[ku - 1][a.cp] + a.w1 * S[ku][a.cp];
                Z[a.c] += a.amp * a.Z;
            }
            F[ku] = integrand(Z, S[ku]);
        }
    } else {
        if (!(opts.tau_env > 0.0)) throw InvalidArgument("second_order_error: windowed route needs tau_env > 0");
        std::vector<double> xs, ws;
        unit_nodes(opts.tminus_points, xs, ws);
        const double tau = opts.tau_env, depth = opts.tminus_depth * tau;
        for (int k = 0; k <= M; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            const double t1 = t_in + k * h;
            const double L = std::min(depth, t1 - t_in);
            MatrixList Z(m, Matrix::Zero(d, d));
            if (L > 0.0) {
                // u = -tau ln(1 - s q), q = 1 - e^{-L/tau}: flattens the e^{-u/tau} envelope
                const double q = -std::expm1(-L / tau);
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const double u = -tau * std::log1p(-xs[i] * q);
                    const double du = ws[i] * tau * q / (1.0 - xs[i] * q);
                    const double t2 = std::max(t1 - u, t_in);
                    const auto j = std::min(static_cast<std::size_t>(std::floor((t2 - t_in) / h)),
                                            static_cast<std::size_t>(M - 1));
                    const Matrix U2 = frame.off_grid(t2, t_in + static_cast<double>(j) * h, frame.U[j]);
                    for (std::size_t cp = 0; cp < m; ++cp) {
                        const Matrix s2 = U2.adjoint() * sigmas[cp] * U2;
                        for (std::size_t c = 0; c < m; ++c)
                            if (!table[c][cp].empty()) Z[c] += (du * table[c][cp](u)) * s2;
                    }
                }
            }
            F[ku] = integrand(Z, S[ku]);
        }
    }
    double integral = 0.0;
    for (int k = 0; k < M; ++k) integral += 0.5 * h * (F[static_cast<std::size_t>(k)] + F[static_cast<std::size_t>(k) + 1]);

    SecondOrderResult r;
    const double g2w2 = spec.g * spec.g * omega * omega;
    r.coefficient = -omega * omega * integral;
    r.p_error = g2w2 == 0.0 ? 0.0 : -g2w2 * integral;
    r.p_closed = 1.0 - (Pi * rho).trace().real();
    return r;
}

void check_window(double t_in, double t_out, const SecondOrderOptions& opts) {
    if (!(t_out > t_in) || t_in < 0.0) throw InvalidArgument("second_order_error: bad window");
    if (opts.steps < 2) throw InvalidArgument("second_order_error: need at least 2 steps");
    if (opts.route == SecondOrderOptions::Route::windowed && t_out - t_in < opts.tau_env)
        throw InvalidArgument("second_order_error: window shorter than tau_env");
}

Frame magnus_frame(const std::function<Matrix(double)>& H, Eigen::Index d, double t_in, double t_out, int steps) {
    Frame fr;
    const double h = (t_out - t_in) / steps;
    Matrix U = t_in > 0.0 ? propagate(H, 0.0, t_in, std::max(1, static_cast<int>(std::ceil(t_in / h))))
                          : Matrix(Matrix::Identity(d, d));
    fr.U.push_back(U);
    for (int k = 0; k < steps; ++k) {
        U = magnus4_step(H, t_in + k * h, h) * U;
        fr.U.push_back(U);
    }
    fr.off_grid = [H](double t, double tj, const Matrix& Uj) -> Matrix {
        if (t - tj <= 0.0) return Uj;
        return magnus4_step(H, tj, t - tj) * Uj;
    };
    return fr;
}

}  // namespace

SecondOrderResult second_order_error(const std::function<Matrix(double)>& H, const std::vector<Matrix>& sigmas,
                                     const InteractionSpec& spec, double omega, const Matrix& rho0,
                                     const Matrix& success, double t_in, double t_out,
                                     const SecondOrderOptions& opts) {
    check_window(t_in, t_out, opts);
    if (sigmas.size() != spec.couplings.size()) throw InvalidArgument("second_order_error: operator count mismatch");
    if (opts.propagator != SecondOrderOptions::Propagator::exact)
        throw InvalidArgument("second_order_error: the generic form supports the exact propagator only");
    require_density(rho0, "second_order_error initial state");
    Frame fr = magnus_frame(H, rho0.rows(), t_in, t_out, opts.steps);
    return second_order_core(fr, sigmas, spec, omega, rho0, success, t_in, t_out, opts);
}

SecondOrderResult second_order_error(const InteractionSpec& spec, const GroverProblem& p, const Schedule& s,
                                     double t_in, double t_out, const SecondOrderOptions& opts) {
    p.validate();
    spec.validate(p.n);
    check_window(t_in, t_out, opts);
    if (t_out > s.T * (1.0 + 1e-12)) throw InvalidArgument("second_order_error: window exceeds the schedule");
    const FirstOrderShift shift = first_order_shift(spec, p);
    const bool shifted = shift.H.norm() > 0.0;
    auto H = [&p, &s, shift, shifted](double t) -> Matrix {
        Matrix h = grover_hamiltonian(p, std::clamp(s.f_at(t), 0.0, 1.0));
        if (shifted) h += shift.H;
        return h;
    };
    std::vector<Matrix> sigmas;
    for (const auto& c : spec.couplings) sigmas.push_back(pauli_operator(c.axis, c.qubit, p.n));
    const Vector su = uniform_state(p.dim());
    const Matrix rho0 = projector(su);
    const EigenSystem es = hermitian_eigensystem(H(t_out));
    const Matrix ground = projector(es.vectors.col(0));

    Frame fr;
    if (opts.propagator == SecondOrderOptions::Propagator::exact) {
        fr = magnus_frame(H, p.dim(), t_in, t_out, opts.steps);
    } else {
        if (shifted) throw InvalidArgument("second_order_error: adiabatic propagator requires centered couplings");
        const double h = (t_out - t_in) / opts.steps;
        for (int k = 0; k <= opts.steps; ++k) fr.U.push_back(adiabatic_propagator(p, s, t_in + k * h).U);
        fr.off_grid = [&p, &s](double t, double, const Matrix&) { return adiabatic_propagator(p, s, t).U; };
    }
    return second_order_core(fr, sigmas, spec, p.omega, rho0, ground, t_in, t_out, opts);
}

void JointBathSpec::validate(int n) const {
    if (k < 1 || k > 4) throw InvalidArgument("joint bath: k must be in 1..4");
    if (n + k > kTol.n_max) throw InvalidArgument("joint bath: total dimension exceeds 2^14");
    if (omega_env.size() != static_cast<std::size_t>(k)) throw InvalidArgument("joint bath: one splitting per bath qubit");
    if (!(inverse_temperature >= 0.0)) throw InvalidArgument("joint bath: inverse temperature must be >= 0");
    for (const auto& l : links) {
        if (l.system_qubit < 0 || l.system_qubit >= n) throw InvalidArgument("joint bath: system qubit out of range");
        if (l.bath_qubit < 0 || l.bath_qubit >= k) throw InvalidArgument("joint bath: bath qubit out of range");
    }
}

namespace {

Eigen::Matrix2cd link_operator(double theta) {
    return std::cos(theta) * pauli(Axis::z) + std::sin(theta) * pauli(Axis::x);
}

Eigen::Vector2d thermal_populations(double omega, double beta) {
    // energies +omega/2 (|0>) and -omega/2 (|1>)
    const double a = std::exp(-beta * omega / 2.0), b = std::exp(beta * omega / 2.0);
    return Eigen::Vector2d(a, b) / (a + b);
}

}  // namespace

InteractionSpec bath_qubit_interaction(const JointBathSpec& j, double g) {
    InteractionSpec s;
    s.g = g;
    const std::size_t m = j.links.size();
    s.correlations.assign(m, std::vector<CorrelationFunction>(m));
    for (const auto& l : j.links) {
        s.couplings.push_back({l.system_qubit, l.system_axis});
        const Eigen::Vector2d p = thermal_populations(j.omega_env[static_cast<std::size_t>(l.bath_qubit)],
                                                      j.inverse_temperature);
        const Eigen::Matrix2cd B = link_operator(l.theta);
        s.means.push_back(p[0] * B(0, 0).real() + p[1] * B(1, 1).real());
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            const auto& la = j.links[a];
            const auto& lb = j.links[b];
            CorrelationFunction& C = s.correlations[a][b];
            if (la.bath_qubit != lb.bath_qubit) {
                C = CorrelationFunction::constant(s.means[a] * s.means[b]);
                continue;
            }
            const double w = j.omega_env[static_cast<std::size_t>(la.bath_qubit)];
            const Eigen::Vector2d p = thermal_populations(w, j.inverse_temperature);
            const double E[2] = {w / 2.0, -w / 2.0};
            const Eigen::Matrix2cd Ba = link_operator(la.theta), Bb = link_operator(lb.theta);
            // <B_a(tau) B_b> = sum p_x (B_a)_xy (B_b)_yx e^{i(E_x - E_y) tau}
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) {
                    const cplx amp = p[x] * Ba(x, y) * Bb(y, x);
                    if (std::abs(amp) > 0.0) C.terms.emplace_back(amp, -I * (E[x] - E[y]));
                }
        }
    return s;
}

JointResult joint_exact_evolve(const std::function<Matrix(double)>& H_sys, int n, const JointBathSpec& j, double g,
                               double omega, const Matrix& rho_sys0, double T, const JointOptions& opts,
                               const FFunction& f_of_t) {
    j.validate(n);
    require_density(rho_sys0, "joint initial system state");
    if (!(T > 0.0) || opts.steps < 1 || opts.outputs < 2) throw InvalidArgument("joint_exact_evolve: bad options");
    const Eigen::Index dS = Eigen::Index(1) << n, dB = Eigen::Index(1) << j.k;
    if (rho_sys0.rows() != dS) throw InvalidArgument("joint_exact_evolve: system state dimension mismatch");

    Matrix H_env = Matrix::Zero(dB, dB);
    Matrix rho_B = Matrix::Ones(1, 1);
    for (int q = 0; q < j.k; ++q) {
        const double w = j.omega_env[static_cast<std::size_t>(q)];
        H_env += 0.5 * w * pauli_operator(Axis::z, q, j.k);
        const Eigen::Vector2d p = thermal_populations(w, j.inverse_temperature);
        rho_B = kron(rho_B, Matrix(p.cast<cplx>().asDiagonal()));
    }
    Matrix H_int = Matrix::Zero(dS * dB, dS * dB);
    for (const auto& l : j.links) {
        const Matrix B = std::cos(l.theta) * pauli_operator(Axis::z, l.bath_qubit, j.k) +
                         std::sin(l.theta) * pauli_operator(Axis::x, l.bath_qubit, j.k);
        H_int += kron(pauli_operator(l.system_axis, l.system_qubit, n), B);
    }
    const Matrix static_part = kron(Matrix::Identity(dS, dS), H_env) + g * omega * H_int;
    auto H = [&](double t) -> Matrix { return kron(H_sys(t), Matrix::Identity(dB, dB)) + static_part; };

    const Matrix rho0 = kron(rho_sys0, rho_B);
    const double h = T / opts.steps;
    std::vector<long> rec;
    for (int i = 0; i < opts.outputs; ++i)
        rec.push_back(static_cast<long>(std::llround(static_cast<double>(i) * opts.steps / (opts.outputs - 1))));
    JointResult res;
    Trajectory& tr = res.reduced;
    tr.has_bloch = dS == 2;
    Matrix U = Matrix::Identity(dS * dB, dS * dB);
    std::size_t next = 0;
    auto record = [&](long k) {
        while (next < rec.size() && rec[next] == k) {
            const double t = static_cast<double>(k) * h;
            const Matrix joint = U * rho0 * U.adjoint();
            res.joint_trace_error = std::max(res.joint_trace_error, std::abs(joint.trace().real() - 1.0));
            const Matrix rho = hermitize(partial_trace_second(joint, dS, dB));
            TrajectoryRecord r;
            r.t = t;
            r.f = f_of_t ? f_of_t(t) : std::numeric_limits<double>::quiet_NaN();
            const EigenSystem es = hermitian_eigensystem(hermitize(H_sys(t)));
            r.p_ground = std::real(es.vectors.col(0).dot(rho * es.vectors.col(0)));
            if (dS > 1) r.p_excited = std::real(es.vectors.col(1).dot(rho * es.vectors.col(1)));
            r.trace = rho.trace().real();
            r.min_eig = min_eigenvalue(rho);
            r.entropy = von_neumann_entropy(rho / r.trace);
            if (dS == 2) r.bloch = Eigen::Vector3d(expectation(rho, pauli(Axis::x)), expectation(rho, pauli(Axis::y)),
                                                   expectation(rho, pauli(Axis::z)));
            tr.records.push_back(r);
            if (next + 1 == rec.size()) tr.final_state = rho;
            ++next;
        }
    };
    record(0);
    for (long k = 0; k < opts.steps; ++k) {
        U = magnus4_step(H, static_cast<double>(k) * h, h) * U;
        record(k + 1);
    }
    return res;
}

JointResult joint_exact_evolve(const GroverProblem& p, const JointBathSpec& j, double g, const Schedule& s,
                               const JointOptions& opts) {
    p.validate();
    auto H = [&p, &s](double t) { return grover_hamiltonian(p, std::clamp(s.f_at(t), 0.0, 1.0)); };
    return joint_exact_evolve(H, p.n, j, g, p.omega, projector(uniform_state(p.dim())), s.T, opts,
                              [&s](double t) { return s.f_at(t); });
}

}  // namespace zeno
