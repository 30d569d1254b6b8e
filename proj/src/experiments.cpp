#include "zeno/experiments.hpp"

#include "zeno/bloch.hpp"
#include "zeno/perturbation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>
#include <tuple>

namespace zeno {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex m;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

double problem_size(const ExperimentConfig& c) { return c.spectrum.N > 0.0 ? c.spectrum.N : c.problem.N(); }

Schedule make_schedule(const ExperimentConfig& c, double N) {
    if (c.schedule.kind == Schedule::Kind::adaptive) return schedule_adaptive(N, c.problem.omega, c.schedule.eps);
    return schedule_constant(N, c.problem.omega, c.schedule.T);
}

namespace {

const std::vector<std::string> kSpectrumColumns = {"E0",         "E1",         "E_rest", "E0_shifted",
                                                   "E1_shifted", "E_rest_shifted", "gap",   "shade"};

std::vector<double> spectrum_row(double N, double omega, double f, double shade_below) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(subspace_hamiltonian(N, omega, f), Eigen::EigenvaluesOnly);
    const double e0 = es.eigenvalues()[0], e1 = es.eigenvalues()[1];
    const double rest = N > 2.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    const double g = subspace_gap(N, omega, f);
    return {e0, e1, rest, 0.0, e1 - e0, rest - e0, g, g < shade_below ? 1.0 : 0.0};
}

}  // namespace

Table spectrum_vs_f(const ExperimentConfig& c) {
    const double N = problem_size(c);
    Table t;
    t.header = {"f"};
    t.header.insert(t.header.end(), kSpectrumColumns.begin(), kSpectrumColumns.end());
    const int m = c.spectrum.f_points;
    for (int i = 0; i < m; ++i) {
        const double f = static_cast<double>(i) / (m - 1);
        std::vector<double> row{f};
        const auto r = spectrum_row(N, c.problem.omega, f, c.spectrum.shade_factor * c.gamma);
        row.insert(row.end(), r.begin(), r.end());
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table spectrum_vs_t(const ExperimentConfig& c) {
    const double N = problem_size(c);
    const Schedule s = make_schedule(c, N);
    Table t;
    t.header = {"t", "f"};
    t.header.insert(t.header.end(), kSpectrumColumns.begin(), kSpectrumColumns.end());
    const int m = c.spectrum.t_points;
    for (int i = 0; i < m; ++i) {
        const double time = i == m - 1 ? s.T : s.T * i / (m - 1);
        const double f = s.f_at(time);
        std::vector<double> row{time, f};
        const auto r = spectrum_row(N, c.problem.omega, f, c.spectrum.shade_factor * c.gamma);
        row.insert(row.end(), r.begin(), r.end());
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table schedule_table(const Schedule& s, int points) {
    Table t;
    t.header = {"t", "f", "fdot", "gap"};
    for (int i = 0; i < points; ++i) {
        const double time = i == points - 1 ? s.T : s.T * i / (points - 1);
        const double f = s.f_at(time);
        t.rows.push_back({time, f, s.fdot_at(time), subspace_gap(s.N, s.omega, f)});
    }
    return t;
}

double gap_time_fraction(const Schedule& s, double threshold) {
    // midpoint rule on a fine uniform grid
    const int m = 200000;
    long below = 0;
    for (int i = 0; i < m; ++i) {
        const double time = s.T * (i + 0.5) / m;
        if (subspace_gap(s.N, s.omega, s.f_at(time)) < threshold) ++below;
    }
    return static_cast<double>(below) / m;
}

GroverRun grover_open_run(const ExperimentConfig& c, const GroverProblem& p, const Schedule& s, double gamma,
                          bool measure_s) {
    const bool sub = c.evolve.subspace;
    const double N = p.N();
    std::function<Matrix(double)> H;
    Vector w, sv;
    if (sub) {
        H = [N, omega = p.omega, &s](double t) -> Matrix {
            return subspace_hamiltonian(N, omega, s.f_at(t)).cast<cplx>();
        };
        w = basis_state(2, 0);
        sv = subspace_uniform(N).cast<cplx>();
    } else {
        H = [&p, &s](double t) { return grover_hamiltonian(p, s.f_at(t)); };
        w = basis_state(p.dim(), static_cast<Eigen::Index>(p.marked));
        sv = uniform_state(p.dim());
    }
    const Matrix Pw = projector(w);
    const Matrix rho0 = projector(sv);
    const auto f_of_t = [&s](double t) { return s.f_at(t); };

    GroverRun out;
    switch (c.backend) {
        case Backend::lindblad: {
            LindbladGenerator gen{H, {}};
            if (gamma > 0.0) {
                gen.jumps.push_back(std::sqrt(gamma) * Pw);
                if (measure_s) gen.jumps.push_back(std::sqrt(gamma) * projector(sv));
            }
            EvolveOptions o;
            o.ode.rtol = c.evolve.rtol;
            o.ode.atol = c.evolve.atol;
            o.outputs = c.evolve.outputs;
            o.snapshots = c.evolve.snapshots;
            out.trajectory = evolve(gen, rho0, s, o);
            break;
        }
        case Backend::coarse: {
            CoarseOptions o;
            o.dt = c.evolve.coarse_dt;
            o.outputs = c.evolve.outputs;
            o.snapshots = c.evolve.snapshots;
            out.trajectory = coarse_grained_evolve(H, Pw, gamma, rho0, s.T, o, f_of_t);
            break;
        }
        default:
            throw ConfigError("backend: Grover measurement runs need the lindblad or coarse backend");
    }
    if (!sub) out.trajectory.warnings.push_back("full Hilbert-space run");
    const Matrix& rho = out.trajectory.final_state;
    const Matrix lz = sub ? rho : Matrix(subspace_isometry(p).adjoint() * rho * subspace_isometry(p));
    out.success = out.trajectory.records.back().p_ground;
    out.p_w = lz(0, 0).real();
    out.p_wperp = lz(1, 1).real();
    out.lz_purity = (lz * lz).trace().real();
    return out;
}

std::vector<ZenoPoint> zeno_sweep(const ExperimentConfig& c, int threads) {
    const std::vector<int> ns = c.sweep.n.empty() ? std::vector<int>{c.problem.n} : c.sweep.n;
    const std::vector<double> gammas = c.sweep.gamma.empty() ? std::vector<double>{c.gamma} : c.sweep.gamma;
    const bool adaptive = c.schedule.kind == Schedule::Kind::adaptive;
    std::vector<double> eps{c.schedule.eps}, Ts{c.schedule.T};
    if (adaptive && !c.sweep.eps.empty()) eps = c.sweep.eps;
    if (!adaptive && !c.sweep.T.empty()) Ts = c.sweep.T;

    std::vector<ZenoPoint> pts;
    for (int n : ns)
        for (double e : eps)
            for (double T : Ts)
                for (double g : gammas) {
                    ZenoPoint z;
                    z.n = n;
                    z.eps = adaptive ? e : std::numeric_limits<double>::quiet_NaN();
                    z.T = T;
                    z.gamma = g;
                    pts.push_back(z);
                }

    parallel_for(pts.size(), threads, [&](std::size_t i) {
        ZenoPoint& z = pts[i];
        GroverProblem p = c.problem;
        p.n = z.n;
        p.marked = p.marked % static_cast<std::uint64_t>(p.dim());
        try {
            const Schedule s = adaptive ? schedule_adaptive(p, z.eps) : schedule_constant(p, z.T);
            z.T = s.T;
            z.mixing_expected = z.gamma * s.T >= 20.0 && s.T >= p.N() * z.gamma / (p.omega * p.omega);
            const GroverRun r = grover_open_run(c, p, s, z.gamma, false);
            z.success = r.success;
            z.p_w = r.p_w;
            z.p_wperp = r.p_wperp;
            z.lz_purity = r.lz_purity;
            if (c.evolve.measure_s) z.success_with_s = grover_open_run(c, p, s, z.gamma, true).success;
        } catch (const ComputationError& e) {
            z.error = e.what();
        }
    });
    std::sort(pts.begin(), pts.end(), [](const ZenoPoint& a, const ZenoPoint& b) {
        const double ea = std::isnan(a.eps) ? 0.0 : a.eps, eb = std::isnan(b.eps) ? 0.0 : b.eps;
        return std::tie(a.n, ea, a.T, a.gamma) < std::tie(b.n, eb, b.T, b.gamma);
    });
    return pts;
}

namespace {

// exp(-i K) for a 2x2 Hermitian K
Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& K) {
    const cplx k0 = 0.5 * K.trace();
    const Eigen::Matrix2cd A = K - k0 * Eigen::Matrix2cd::Identity();
    const double r = std::sqrt(std::norm(A(0, 0)) + std::norm(A(0, 1)));
    const double sinc = r < 1e-8 ? 1.0 - r * r / 6.0 : std::sin(r) / r;
    return std::exp(-I * k0) * (std::cos(r) * Eigen::Matrix2cd::Identity() - I * sinc * A);
}

}  // namespace

int magnus_steps(double T, double omega) {
    return std::max(4000, static_cast<int>(std::ceil(40.0 * T * omega)));
}

double closed_subspace_success(double N, double omega, const Schedule& s, int steps) {
    if (steps < 1) throw InvalidArgument("closed_subspace_success: steps must be positive");
    static const double c = std::sqrt(3.0) / 6.0;
    Eigen::Vector2cd psi = subspace_uniform(N).cast<cplx>();
    const double h = s.T / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Eigen::Matrix2cd H1 = subspace_hamiltonian(N, omega, s.f_at(t + (0.5 - c) * h)).cast<cplx>();
        const Eigen::Matrix2cd H2 = subspace_hamiltonian(N, omega, s.f_at(t + (0.5 + c) * h)).cast<cplx>();
        const Eigen::Matrix2cd K =
            0.5 * h * (H1 + H2) + I * (std::sqrt(3.0) / 12.0 * h * h) * (H1 * H2 - H2 * H1);
        psi = expm2(K) * psi;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(subspace_hamiltonian(N, omega, s.f.back()));
    return std::norm(es.eigenvectors().col(0).cast<cplx>().dot(psi));
}

double constant_speed_runtime(double N, double omega, double success) {
    if (!(success > 0.0 && success < 1.0)) throw InvalidArgument("constant_speed_runtime: success must lie in (0, 1)");
    auto ok = [&](double T) {
        return closed_subspace_success(N, omega, schedule_constant(N, omega, T), magnus_steps(T, omega)) >= success;
    };
    double hi = std::sqrt(N) / omega, lo = 0.0;
    if (ok(hi)) {
        lo = hi / 1.1;
        while (ok(lo)) {
            hi = lo;
            lo /= 1.1;
            if (lo < 1e-6 / omega) return hi;
        }
    } else {
        while (!ok(hi)) {
            lo = hi;
            hi *= 1.1;
            if (hi > 1e3 * N / omega) throw ComputationError("constant_speed_runtime: success never reached");
        }
    }
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

double mixing_time(double N, double omega, double gamma, double threshold) {
    if (!(gamma > 0.0) || !(threshold > 0.0 && threshold < 0.5))
        throw InvalidArgument("mixing_time: need gamma > 0 and threshold in (0, 1/2)");
    const Matrix H = subspace_hamiltonian(N, omega, 0.5).cast<cplx>();
    const Matrix L = std::sqrt(gamma) * projector(basis_state(2, 0));
    Eigen::ComplexEigenSolver<Matrix> es(liouvillian(H, {L}));
    const Matrix V = es.eigenvectors();
    const Vector lam = es.eigenvalues();
    const Vector rho0 = [&] {
        const Matrix r = projector(subspace_uniform(N).cast<cplx>());
        return Vector(Eigen::Map<const Vector>(r.data(), 4));
    }();
    const Vector coef = V.partialPivLu().solve(rho0);
    // trace distance of rho - 1/2 for a unit-trace 2x2 rho
    auto distance = [&](double t) {
        const Vector r = V * (coef.array() * (lam.array() * t).exp()).matrix();
        const double a = 0.5 * (r[0] - r[3]).real();
        return std::sqrt(a * a + std::norm(r[2]));
    };
    const double fast = 0.05 * std::min(1.0 / gamma, std::sqrt(N) / omega);
    double t = 0.0, prev = 0.0;
    while (distance(t) >= threshold) {
        prev = t;
        t += std::max(fast, 1e-3 * t);
        if (t > 1e12 / omega) throw ComputationError("mixing_time: the state does not mix");
    }
    double lo = prev, hi = t;
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (distance(mid) < threshold ? hi : lo) = mid;
    }
    return hi;
}

RuntimeScaling runtime_scaling(const ExperimentConfig& c, int threads) {
    const auto& sc = c.scaling;
    const double omega = c.problem.omega;
    RuntimeScaling r;
    for (int n = sc.n_min; n <= sc.n_max; ++n) r.n.push_back(n);
    for (int n = sc.mixing_n_min; n <= sc.mixing_n_max; ++n) r.mixing_n.push_back(n);
    const std::size_t na = r.n.size(), nm = r.mixing_n.size();
    r.adaptive_T.assign(na, 0.0);
    r.adaptive_success.assign(na, 0.0);
    r.constant_T.assign(na, 0.0);
    r.has_constant = sc.constant;
    r.mixing_t.assign(nm, 0.0);
    double doubled = 0.0;

    // jobs: adaptive per n, constant per n, mixing per n, and the doubled-gamma point
    const std::size_t jobs = na + (sc.constant ? na : 0) + nm + 1;
    parallel_for(jobs, threads, [&](std::size_t j) {
        if (j < na) {
            const double N = std::ldexp(1.0, r.n[j]);
            const Schedule s = schedule_adaptive(N, omega, sc.eps);
            r.adaptive_T[j] = s.T;
            r.adaptive_success[j] = closed_subspace_success(N, omega, s, magnus_steps(s.T, omega));
            return;
        }
        j -= na;
        if (sc.constant) {
            if (j < na) {
                r.constant_T[j] = constant_speed_runtime(std::ldexp(1.0, r.n[j]), omega, sc.success);
                return;
            }
            j -= na;
        }
        if (j < nm) {
            r.mixing_t[j] = mixing_time(std::ldexp(1.0, r.mixing_n[j]), omega, sc.mixing_gamma, sc.mixing_threshold);
            return;
        }
        doubled = mixing_time(std::ldexp(1.0, r.mixing_n.back()), omega, 2.0 * sc.mixing_gamma, sc.mixing_threshold);
    });

    std::vector<double> N, Nm;
    for (int n : r.n) N.push_back(std::ldexp(1.0, n));
    for (int n : r.mixing_n) Nm.push_back(std::ldexp(1.0, n));
    r.adaptive = power_law_fit(N, r.adaptive_T);
    if (sc.constant) r.constant = power_law_fit(N, r.constant_T);
    r.mixing = power_law_fit(Nm, r.mixing_t);
    r.gamma_doubling_ratio = doubled / r.mixing_t.back();
    return r;
}

BlochParams bloch_params_for(BlochVariant v, double omega, double gamma) {
    BlochParams p;
    p.omega = omega;
    switch (v) {
        case BlochVariant::dephasing_z: p.gamma = gamma; break;
        case BlochVariant::two_projectors: p.gamma1 = p.gamma2 = gamma; break;
        case BlochVariant::relaxation: p.sigma = gamma; break;
    }
    return p;
}

Table bloch_sweep(const ExperimentConfig& c) {
    const auto& b = c.bloch;
    Table t;
    t.header = {"gamma_over_omega", "re_lambda0", "im_lambda0", "re_plus",         "im_plus",
                "re_minus",         "im_minus",   "closed_re_plus", "closed_im_plus", "closed_re_minus",
                "closed_im_minus",  "max_re"};
    const double l0 = std::log(b.ratio_min), l1 = std::log(b.ratio_max);
    for (int i = 0; i < b.points; ++i) {
        const double ratio = i == b.points - 1 ? b.ratio_max : std::exp(l0 + (l1 - l0) * i / (b.points - 1));
        const BlochParams p = bloch_params_for(b.variant, b.omega, ratio * b.omega);
        const BlochSpectrum num = bloch_eigenvalues(bloch_matrix(b.variant, p));
        const BlochSpectrum cf = bloch_closed_form(b.variant, p);
        t.rows.push_back({ratio, num.lambda0.real(), num.lambda0.imag(), num.plus.real(), num.plus.imag(),
                          num.minus.real(), num.minus.imag(), cf.plus.real(), cf.plus.imag(), cf.minus.real(),
                          cf.minus.imag(), num.sorted[0].real()});
    }
    return t;
}

Table oscillator_table(const OscillatorTrajectory& tr) {
    Table t;
    t.header = {"t", "tau", "x", "p", "B"};
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        t.rows.push_back({tr.t[i], tr.tau[i], tr.r[i][0], tr.r[i][1], tr.r[i][2]});
    return t;
}

namespace {

json fit_json(const ScalingFit& f) {
    return {{"x", f.x}, {"y", f.y}, {"exponent", f.exponent}, {"exponent_error", f.exponent_error},
            {"prefactor", f.prefactor}};
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json base_summary(const ExperimentConfig& c) {
    return {{"experiment", c.experiment}, {"config", c.resolved}, {"version", library_version()}};
}

void log(const RunContext& ctx, const std::string& msg) {
    if (ctx.verbose) std::cerr << "[zeno] " << msg << "\n";
}

RunReport run_spectrum(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const double N = problem_size(c);
    write_csv(ctx.out / "spectrum_f.csv", spectrum_vs_f(c));
    write_csv(ctx.out / "spectrum_t.csv", spectrum_vs_t(c));
    const Schedule s = make_schedule(c, N);
    const double dmin = subspace_gap(N, c.problem.omega, 0.5);
    const Schedule lin = schedule_constant(N, c.problem.omega, s.T);
    r.summary = base_summary(c);
    r.summary["N"] = N;
    r.summary["min_gap"] = dmin;
    r.summary["min_gap_f"] = 0.5;
    r.summary["schedule"] = {{"kind", schedule_kind_name(s.kind)}, {"T", s.T}};
    r.summary["time_fraction_gap_below_2min"] = {{"schedule", gap_time_fraction(s, 2.0 * dmin)},
                                                 {"constant_same_T", gap_time_fraction(lin, 2.0 * dmin)}};
    r.summary["levels"] = "two levels from span{|w>,|s>} plus the (N-2)-fold zero sector";
    r.outputs = {"spectrum_f.csv", "spectrum_t.csv", "spectrum.json"};
    write_json(ctx.out / "spectrum.json", r.summary);
    return r;
}

RunReport run_schedule(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const Schedule s = make_schedule(c, problem_size(c));
    write_csv(ctx.out / "schedule.csv", schedule_table(s, c.evolve.outputs));
    r.summary = base_summary(c);
    r.summary["kind"] = schedule_kind_name(s.kind);
    r.summary["T"] = s.T;
    r.summary["grid_points"] = s.t.size();
    r.outputs = {"schedule.csv", "schedule.json"};
    write_json(ctx.out / "schedule.json", r.summary);
    return r;
}

Trajectory bath_run(const ExperimentConfig& c, const GroverProblem& p, const Schedule& s) {
    const auto H = [&p, &s](double t) { return grover_hamiltonian(p, s.f_at(t)); };
    const auto f_of_t = [&s](double t) { return s.f_at(t); };
    std::vector<Matrix> sigmas;
    for (int mu = 0; mu < p.n; ++mu) sigmas.push_back(pauli_operator(Axis::z, mu, p.n));
    const Matrix rho0 = projector(uniform_state(p.dim()));
    if (c.backend == Backend::redfield) {
        RedfieldOptions o;
        o.dt = c.evolve.redfield_dt;
        o.outputs = c.evolve.outputs;
        return redfield_evolve(H, sigmas, c.bath, p.omega, rho0, s.T, o, f_of_t);
    }
    Matrix gamma, sigma;
    singular_coupling_tables(c.bath, p.n, gamma, sigma);
    const SingularCouplingGenerator g = singular_coupling_generator(sigmas, gamma, sigma, c.bath.g * p.omega);
    LindbladGenerator gen{[H, shift = g.lamb_shift](double t) { return Matrix(H(t) + shift); }, g.jumps};
    if (c.gamma > 0.0)
        gen.jumps.push_back(std::sqrt(c.gamma) * projector(basis_state(p.dim(), static_cast<Eigen::Index>(p.marked))));
    EvolveOptions o;
    o.ode.rtol = c.evolve.rtol;
    o.ode.atol = c.evolve.atol;
    o.outputs = c.evolve.outputs;
    o.snapshots = c.evolve.snapshots;
    return evolve(gen, rho0, s, o);
}

RunReport run_evolve(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const GroverProblem& p = c.problem;
    const Schedule s = make_schedule(c, p.N());
    log(ctx, "evolving n=" + std::to_string(p.n) + " over T=" + format_double(s.T));
    r.summary = base_summary(c);
    Trajectory tr;
    if (c.backend == Backend::lindblad || c.backend == Backend::coarse) {
        const GroverRun g = grover_open_run(c, p, s, c.gamma, c.evolve.measure_s);
        tr = g.trajectory;
        r.summary["lz_populations"] = {g.p_w, g.p_wperp};
        r.summary["lz_purity"] = g.lz_purity;
        r.summary["space"] = c.evolve.subspace ? "exact two-dimensional invariant subspace" : "full";
    } else {
        tr = bath_run(c, p, s);
        r.summary["space"] = "full";
    }
    r.summary["backend"] = backend_name(c.backend);
    r.summary["T"] = s.T;
    r.summary["success"] = tr.records.back().p_ground;
    r.summary["warnings"] = tr.warnings;
    write_csv(ctx.out / "trajectory.csv", trajectory_table(tr));
    write_json(ctx.out / "trajectory.json", trajectory_json(tr, r.summary));
    write_csv(ctx.out / "schedule.csv", schedule_table(s, c.evolve.outputs));
    write_json(ctx.out / "evolve.json", r.summary);
    r.outputs = {"trajectory.csv", "trajectory.json", "schedule.csv", "evolve.json"};
    return r;
}

RunReport run_bloch(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const Table t = bloch_sweep(c);
    write_csv(ctx.out / "bloch_sweep.csv", t);
    double max_re = -std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows) max_re = std::max(max_re, row.back());
    r.summary = base_summary(c);
    r.summary["variant"] = bloch_variant_name(c.bloch.variant);
    r.summary["max_re_lambda"] = max_re;
    write_json(ctx.out / "bloch.json", r.summary);
    r.outputs = {"bloch_sweep.csv", "bloch.json"};
    return r;
}

RunReport run_oscillator(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const auto& o = c.oscillator;
    OscillatorBath b = oscillator_from_dimensionless(o.alpha, o.beta);
    b.ramp = o.ramp;
    r.summary = base_summary(c);
    json eig = json::array();
    for (cplx z : m_eigenvalues(o.alpha, o.beta)) eig.push_back(cplx_json(z));
    r.summary["alpha"] = o.alpha;
    r.summary["beta"] = o.beta;
    r.summary["eigenvalues"] = eig;
    OscillatorTrajectory local, kernel;
    if (o.solver != "kernel") {
        LocalOptions lo;
        lo.outputs = o.outputs;
        local = evolve_local(b, o.x0, o.p0, o.horizon, lo);
        write_csv(ctx.out / "oscillator_local.csv", oscillator_table(local));
        r.outputs.push_back("oscillator_local.csv");
        r.summary["fitted_decay_local"] = fitted_position_decay(local);
    }
    if (o.solver != "local") {
        KernelOptions ko;
        ko.outputs = o.outputs;
        kernel = evolve_kernel(b, o.x0, o.p0, o.horizon, ko);
        write_csv(ctx.out / "oscillator_kernel.csv", oscillator_table(kernel));
        r.outputs.push_back("oscillator_kernel.csv");
        r.summary["fitted_decay_kernel"] = fitted_position_decay(kernel);
    }
    if (!local.r.empty() && local.r.size() == kernel.r.size()) {
        double dev = 0.0;
        for (std::size_t i = 0; i < local.r.size(); ++i)
            dev = std::max(dev, (local.r[i] - kernel.r[i]).cwiseAbs().maxCoeff());
        r.summary["max_solver_deviation"] = dev;
    }
    write_json(ctx.out / "oscillator.json", r.summary);
    r.outputs.push_back("oscillator.json");
    return r;
}

RunReport run_zeno(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const auto pts = zeno_sweep(c, ctx.threads);
    Table t;
    t.header = {"n",       "N",   "eps",       "T",              "gamma", "gamma_T", "success",
                "P_w",     "P_wperp", "lz_purity", "mixing_expected", "success_with_s"};
    json errors = json::array();
    for (const auto& z : pts) {
        const double N = std::ldexp(1.0, z.n);
        t.rows.push_back({static_cast<double>(z.n), N, z.eps, z.T, z.gamma, z.gamma * z.T, z.success, z.p_w,
                          z.p_wperp, z.lz_purity, z.mixing_expected ? 1.0 : 0.0, z.success_with_s});
        if (!z.error.empty()) errors.push_back({{"n", z.n}, {"gamma", z.gamma}, {"T", z.T}, {"error", z.error}});
    }
    write_csv(ctx.out / "zeno_sweep.csv", t);
    r.summary = base_summary(c);
    r.summary["backend"] = backend_name(c.backend);
    r.summary["space"] = c.evolve.subspace ? "exact two-dimensional invariant subspace" : "full";
    r.summary["points"] = pts.size();
    r.summary["failures"] = errors;
    write_json(ctx.out / "zeno_sweep.json", r.summary);
    r.outputs = {"zeno_sweep.csv", "zeno_sweep.json"};
    return r;
}

RunReport run_scaling(const ExperimentConfig& c, const RunContext& ctx) {
    RunReport r;
    const RuntimeScaling s = runtime_scaling(c, ctx.threads);
    Table a;
    a.header = {"n", "N", "T", "success"};
    for (std::size_t i = 0; i < s.n.size(); ++i)
        a.rows.push_back({static_cast<double>(s.n[i]), std::ldexp(1.0, s.n[i]), s.adaptive_T[i], s.adaptive_success[i]});
    write_csv(ctx.out / "scaling_adaptive.csv", a);
    r.outputs.push_back("scaling_adaptive.csv");
    r.summary = base_summary(c);
    r.summary["adaptive"] = fit_json(s.adaptive);
    if (s.has_constant) {
        Table k;
        k.header = {"n", "N", "T"};
        for (std::size_t i = 0; i < s.n.size(); ++i)
            k.rows.push_back({static_cast<double>(s.n[i]), std::ldexp(1.0, s.n[i]), s.constant_T[i]});
        write_csv(ctx.out / "scaling_constant.csv", k);
        r.outputs.push_back("scaling_constant.csv");
        r.summary["constant"] = fit_json(s.constant);
    }
    Table m;
    m.header = {"n", "N", "t_mix"};
    for (std::size_t i = 0; i < s.mixing_n.size(); ++i)
        m.rows.push_back({static_cast<double>(s.mixing_n[i]), std::ldexp(1.0, s.mixing_n[i]), s.mixing_t[i]});
    write_csv(ctx.out / "scaling_mixing.csv", m);
    r.outputs.push_back("scaling_mixing.csv");
    r.summary["mixing"] = fit_json(s.mixing);
    r.summary["gamma_doubling_ratio"] = s.gamma_doubling_ratio;
    write_json(ctx.out / "scaling.json", r.summary);
    r.outputs.push_back("scaling.json");
    return r;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& c, const RunContext& ctx) {
    std::filesystem::create_directories(ctx.out);
    const std::string& e = c.experiment;
    if (e == "spectrum") return run_spectrum(c, ctx);
    if (e == "schedule") return run_schedule(c, ctx);
    if (e == "evolve") return run_evolve(c, ctx);
    if (e == "bloch") return run_bloch(c, ctx);
    if (e == "oscillator") return run_oscillator(c, ctx);
    if (e == "zeno-sweep") return run_zeno(c, ctx);
    if (e == "scaling") return run_scaling(c, ctx);
    throw ConfigError("experiment: unknown experiment '" + e + "'");
}

}  // namespace zeno
