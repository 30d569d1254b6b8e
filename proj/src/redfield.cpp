#include "zeno/dynamics.hpp"

#include <cmath>
#include <limits>

namespace zeno {

OperatorHistory::OperatorHistory(std::vector<Matrix> sigmas, double spacing)
    : sigmas_(std::move(sigmas)), dt_(spacing) {
    if (sigmas_.empty()) throw InvalidArgument("OperatorHistory: no coupling operators");
    if (!(spacing > 0.0)) throw InvalidArgument("OperatorHistory: spacing must be positive");
}

void OperatorHistory::push(const Matrix& U) {
    std::vector<Matrix> v;
    v.reserve(sigmas_.size());
    for (const auto& s : sigmas_) v.push_back(U.adjoint() * s * U);
    ops_.push_back(std::move(v));
}

const std::vector<Matrix>& OperatorHistory::at(std::size_t k) const {
    if (k < first_ || k >= size()) throw ComputationError("operator history does not cover the requested time");
    return ops_[k - first_];
}

void OperatorHistory::trim_before(std::size_t k) {
    while (first_ < k && !ops_.empty()) {
        ops_.pop_front();
        ++first_;
    }
}

std::vector<Matrix> redfield_memory(std::size_t k, const OperatorHistory& hist, const BathModel& bath,
                                    double depth) {
    const std::size_t m = hist.operator_count();
    const std::vector<Matrix>& now = hist.at(k);
    const Eigen::Index d = now.front().rows();
    std::vector<Matrix> raw(m, Matrix::Zero(d, d));

    if (bath.kind == BathModel::Kind::delta) {
        // int_0^t gamma0 delta(t - t') s(t') dt' with the endpoint carrying half the weight
        for (std::size_t nu = 0; nu < m; ++nu) raw[nu] = 0.5 * bath.gamma0 * now[nu];
    } else {
        const double h = hist.spacing();
        const auto span = static_cast<std::size_t>(std::ceil(depth / h - 1e-9));
        const std::size_t j0 = k > span ? k - span : 0;
        if (j0 < hist.first_index()) throw ComputationError("insufficient history depth for the memory integral");
        // C(u) = A exp(-z u); sigma linear on each cell; exact product weights
        const cplx A = bath.gamma0 / (2.0 * bath.tau_env);
        const cplx z = 1.0 / bath.tau_env + I * bath.omega_env;
        const cplx x = z * h;
        cplx E0, E1;  // int_0^h e^{z s} ds and int_0^h (s/h) e^{z s} ds
        if (std::abs(x) < 1e-4) {
            E0 = h * (1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0);
            E1 = h * (0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0);
        } else {
            const cplx ex = std::exp(x);
            E0 = (ex - 1.0) / z;
            E1 = (h * ex / z - (ex - 1.0) / (z * z)) / h;
        }
        const cplx decay = std::exp(-x);
        cplx factor = A * decay;  // e^{-z (k - j) h} for j = k - 1
        for (std::size_t j = k; j-- > j0;) {
            const std::vector<Matrix>& lo = hist.at(j);
            const std::vector<Matrix>& hi = hist.at(j + 1);
            const cplx w_lo = factor * (E0 - E1);
            const cplx w_hi = factor * E1;
            for (std::size_t nu = 0; nu < m; ++nu) raw[nu] += w_lo * lo[nu] + w_hi * hi[nu];
            factor *= decay;
        }
    }
    std::vector<Matrix> Y(m, Matrix::Zero(d, d));
    for (std::size_t mu = 0; mu < m; ++mu)
        for (std::size_t nu = 0; nu < m; ++nu) {
            const double w = bath.weight(static_cast<int>(mu), static_cast<int>(nu));
            if (w != 0.0) Y[mu] += w * raw[nu];
        }
    return Y;
}

Matrix redfield_rhs(const Matrix& rho_I, std::size_t k, const OperatorHistory& hist,
                    const std::vector<Matrix>& memory, const BathModel& bath, double omega) {
    const std::vector<Matrix>& s = hist.at(k);
    if (memory.size() != s.size()) throw InvalidArgument("redfield_rhs: memory size mismatch");
    const Eigen::Index d = rho_I.rows();
    Matrix X = Matrix::Zero(d, d);
    for (std::size_t mu = 0; mu < s.size(); ++mu) X += memory[mu] * rho_I * s[mu] - s[mu] * (memory[mu] * rho_I);
    return bath.g * bath.g * omega * omega * (X + X.adjoint());
}

Matrix redfield_rhs(const Matrix& rho_I, std::size_t k, const OperatorHistory& hist, const BathModel& bath,
                    double omega) {
    return redfield_rhs(rho_I, k, hist, redfield_memory(k, hist, bath, 8.0 * bath.tau_env), bath, omega);
}

namespace {

double entropy_of_state(const Matrix& rho, double& min_eig) {
    Eigen::SelfAdjointEigenSolver<Matrix> sp(hermitize(rho), Eigen::EigenvaluesOnly);
    min_eig = sp.eigenvalues()[0];
    double s = 0.0;
    for (double x : sp.eigenvalues())
        if (x > kTol.entropy_floor) s -= x * std::log(x);
    return std::max(s, 0.0);
}

}  // namespace

Trajectory redfield_evolve(const std::function<Matrix(double)>& H, const std::vector<Matrix>& sigmas,
                           const BathModel& bath, double omega, const Matrix& rho0, double T,
                           const RedfieldOptions& opts, const FFunction& f_of_t) {
    bath.validate();
    require_density(rho0, "initial state");
    if (!(T > 0.0) || !(opts.dt > 0.0) || opts.outputs < 2) throw InvalidArgument("redfield_evolve: bad options");
    if (!(opts.depth_factor >= 8.0)) throw InvalidArgument("redfield_evolve: history must span at least 8 tau_env");
    const long M = std::max(1L, static_cast<long>(std::ceil(T / opts.dt - 1e-12)));
    const double dt = T / static_cast<double>(M);
    const double hs = 0.5 * dt;
    const double depth = opts.depth_factor * bath.tau_env;

    OperatorHistory hist(sigmas, hs);
    Matrix U = Matrix::Identity(rho0.rows(), rho0.cols());
    hist.push(U);
    std::vector<Matrix> Y_start = redfield_memory(0, hist, bath, depth);

    Trajectory tr;
    tr.has_bloch = rho0.rows() == 2;
    std::vector<long> rec_steps;
    for (int i = 0; i < opts.outputs; ++i)
        rec_steps.push_back(static_cast<long>(std::llround(static_cast<double>(i) * M / (opts.outputs - 1))));
    std::size_t next = 0;
    Matrix rho_I = rho0;
    auto maybe_record = [&](long step) {
        while (next < rec_steps.size() && rec_steps[next] == step) {
            const double t = step * dt;
            const Matrix rho = hermitize(U * rho_I * U.adjoint());
            TrajectoryRecord r;
            r.t = t;
            r.f = f_of_t ? f_of_t(t) : std::numeric_limits<double>::quiet_NaN();
            const EigenSystem es = hermitian_eigensystem(hermitize(H(t)));
            r.p_ground = std::real(es.vectors.col(0).dot(rho * es.vectors.col(0)));
            if (rho.rows() > 1) r.p_excited = std::real(es.vectors.col(1).dot(rho * es.vectors.col(1)));
            r.trace = rho.trace().real();
            r.entropy = entropy_of_state(rho, r.min_eig);
            if (rho.rows() == 2)
                r.bloch = Eigen::Vector3d(expectation(rho, pauli(Axis::x)), expectation(rho, pauli(Axis::y)),
                                          expectation(rho, pauli(Axis::z)));
            tr.records.push_back(r);
            if (r.min_eig < -kTol.positivity_abort && opts.abort_on_positivity)
                throw ComputationError("Redfield positivity breach at t=" + std::to_string(t));
            ++next;
        }
    };
    maybe_record(0);
    for (long m = 0; m < M; ++m) {
        const std::size_t k0 = static_cast<std::size_t>(2 * m);
        const double t0 = m * dt;
        const Matrix U_mid = magnus4_step(H, t0, hs) * U;
        hist.push(U_mid);
        const Matrix U_end = magnus4_step(H, t0 + hs, hs) * U_mid;
        hist.push(U_end);
        const std::vector<Matrix> Y_mid = redfield_memory(k0 + 1, hist, bath, depth);
        const std::vector<Matrix> Y_end = redfield_memory(k0 + 2, hist, bath, depth);

        const Matrix k1 = redfield_rhs(rho_I, k0, hist, Y_start, bath, omega);
        const Matrix k2 = redfield_rhs(rho_I + 0.5 * dt * k1, k0 + 1, hist, Y_mid, bath, omega);
        const Matrix k3 = redfield_rhs(rho_I + 0.5 * dt * k2, k0 + 1, hist, Y_mid, bath, omega);
        const Matrix k4 = redfield_rhs(rho_I + dt * k3, k0 + 2, hist, Y_end, bath, omega);
        rho_I = hermitize(rho_I + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
        rho_I /= rho_I.trace().real();
        U = U_end;
        Y_start = Y_end;

        const auto keep = static_cast<std::size_t>(std::ceil(depth / hs)) + 2;
        if (k0 + 2 > keep) hist.trim_before(k0 + 2 - keep);
        maybe_record(m + 1);
    }
    tr.final_state = hermitize(U * rho_I * U.adjoint());
    return tr;
}

}  // namespace zeno
