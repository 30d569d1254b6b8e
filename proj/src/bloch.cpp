#include "zeno/bloch.hpp"

#include "zeno/dynamics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace zeno {

BlochVariant parse_bloch_variant(const std::string& s) {
    if (s == "dephasing_z") return BlochVariant::dephasing_z;
    if (s == "two_projectors") return BlochVariant::two_projectors;
    if (s == "relaxation") return BlochVariant::relaxation;
    throw InvalidArgument("unknown Bloch variant '" + s + "'");
}

const char* bloch_variant_name(BlochVariant v) {
    switch (v) {
        case BlochVariant::dephasing_z: return "dephasing_z";
        case BlochVariant::two_projectors: return "two_projectors";
        case BlochVariant::relaxation: return "relaxation";
    }
    return "?";
}

namespace {

void check_rates(BlochVariant v, const BlochParams& p) {
    if (!std::isfinite(p.omega)) throw InvalidArgument("bloch: omega must be finite");
    auto nonneg = [](double x, const char* name) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string("bloch: ") + name + " must be >= 0");
    };
    switch (v) {
        case BlochVariant::dephasing_z: nonneg(p.gamma, "gamma"); break;
        case BlochVariant::two_projectors:
            nonneg(p.gamma1, "gamma1");
            nonneg(p.gamma2, "gamma2");
            break;
        case BlochVariant::relaxation: nonneg(p.sigma, "sigma"); break;
    }
}

void order_pair(BlochSpectrum& s) {
    const bool swap = s.minus.real() > s.plus.real() ||
                      (s.minus.real() == s.plus.real() && s.minus.imag() > s.plus.imag());
    if (swap) std::swap(s.plus, s.minus);
    s.sorted = {s.lambda0, s.plus, s.minus};
    std::stable_sort(s.sorted.begin(), s.sorted.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
}

}  // namespace

Eigen::Matrix3d bloch_matrix(BlochVariant v, const BlochParams& p) {
    check_rates(v, p);
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    M(0, 2) = 2.0 * p.omega;
    M(2, 0) = -2.0 * p.omega;
    switch (v) {
        case BlochVariant::dephasing_z:
            M(0, 0) = M(1, 1) = -2.0 * p.gamma;
            break;
        case BlochVariant::two_projectors:
            M(0, 0) = M(1, 1) = -0.5 * (p.gamma1 + p.gamma2);
            break;
        case BlochVariant::relaxation:
            M(0, 0) = M(1, 1) = -0.5 * p.sigma;
            M(2, 2) = -p.sigma;
            break;
    }
    return M;
}

BlochSpectrum bloch_eigenvalues(const Eigen::Matrix3d& M) {
    Eigen::EigenSolver<Eigen::Matrix3d> es(M);
    if (es.info() != Eigen::Success) throw ComputationError("bloch eigensolve failed");
    const auto vals = es.eigenvalues();
    const auto vecs = es.eigenvectors();
    int k0 = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(vecs(1, k)) > std::abs(vecs(1, k0))) k0 = k;
    BlochSpectrum s;
    s.lambda0 = vals[k0];
    s.plus = vals[(k0 + 1) % 3];
    s.minus = vals[(k0 + 2) % 3];
    order_pair(s);
    return s;
}

BlochSpectrum bloch_closed_form(BlochVariant v, const BlochParams& p) {
    check_rates(v, p);
    const double w2 = p.omega * p.omega;
    BlochSpectrum s;
    switch (v) {
        case BlochVariant::dephasing_z: {
            const double G = p.gamma;
            s.lambda0 = -2.0 * G;
            const double disc = G * G - 4.0 * w2;
            if (disc >= 0.0) {
                const double r = std::sqrt(disc);
                s.minus = -G - r;
                // cancellation-free form of -G + r
                s.plus = G + r > 0.0 ? -4.0 * w2 / (G + r) : 0.0;
            } else {
                const double r = std::sqrt(-disc);
                s.plus = cplx(-G, r);
                s.minus = cplx(-G, -r);
            }
            break;
        }
        case BlochVariant::two_projectors: {
            const double G = p.gamma1 + p.gamma2;
            s.lambda0 = -G / 2.0;
            const cplx r = std::sqrt(cplx(G * G - 64.0 * w2, 0.0));
            s.plus = (-G + r) / 4.0;
            s.minus = (-G - r) / 4.0;
            break;
        }
        case BlochVariant::relaxation: {
            const double sg = p.sigma;
            s.lambda0 = -sg / 2.0;
            const cplx r = std::sqrt(cplx(sg * sg - 64.0 * w2, 0.0));
            s.plus = (-3.0 * sg + r) / 4.0;
            s.minus = (-3.0 * sg - r) / 4.0;
            break;
        }
    }
    order_pair(s);
    return s;
}

BlochModel bloch_lindblad_model(BlochVariant v, const BlochParams& p) {
    check_rates(v, p);
    BlochModel m;
    m.H = p.omega * Matrix(pauli(Axis::y));
    const Matrix up = projector(basis_state(2, 1));
    const Matrix down = projector(basis_state(2, 0));
    switch (v) {
        case BlochVariant::dephasing_z:
            m.jumps.push_back(std::sqrt(p.gamma) * Matrix(pauli(Axis::z)));
            break;
        case BlochVariant::two_projectors:
            m.jumps.push_back(std::sqrt(p.gamma1) * up);
            m.jumps.push_back(std::sqrt(p.gamma2) * down);
            break;
        case BlochVariant::relaxation: {
            Matrix L = Matrix::Zero(2, 2);
            L(0, 1) = std::sqrt(p.sigma);  // |down><up|
            m.jumps.push_back(L);
            break;
        }
    }
    return m;
}

AffineBloch affine_bloch_map(const Matrix& H, const std::vector<Matrix>& jumps) {
    if (H.rows() != 2 || H.cols() != 2) throw InvalidArgument("affine_bloch_map: two-level system required");
    const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
    AffineBloch a;
    const Matrix d0 = lindblad_rhs(maximally_mixed(2), H, jumps);
    for (int i = 0; i < 3; ++i) a.b[i] = (Matrix(pauli(axes[i])) * d0).trace().real();
    for (int j = 0; j < 3; ++j) {
        const Matrix dj = lindblad_rhs(0.5 * Matrix(pauli(axes[j])), H, jumps);
        for (int i = 0; i < 3; ++i) a.M(i, j) = (Matrix(pauli(axes[i])) * dj).trace().real();
    }
    return a;
}

Eigen::Vector3d bloch_vector(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) throw InvalidArgument("bloch_vector: two-level state required");
    return {expectation(rho, pauli(Axis::x)), expectation(rho, pauli(Axis::y)), expectation(rho, pauli(Axis::z))};
}

Matrix density_from_bloch(const Eigen::Vector3d& r) {
    Matrix rho = Matrix::Identity(2, 2);
    rho += r[0] * Matrix(pauli(Axis::x)) + r[1] * Matrix(pauli(Axis::y)) + r[2] * Matrix(pauli(Axis::z));
    return 0.5 * rho;
}

ZenoOutcome zeno_survival(const ZenoSurvival& z) {
    if (z.count < 1) throw InvalidArgument("zeno_survival: measurement count must be >= 1");
    if (!(z.dt > 0.0)) throw InvalidArgument("zeno_survival: dt must be positive");
    const double s = std::sin(z.omega * z.dt);
    // N ln cos^2 with ln cos^2 = log1p(-sin^2) for accuracy at small angles
    const double e = static_cast<double>(z.count) * std::log1p(-s * s);
    return {std::exp(e), -std::expm1(e)};
}

double entropy_production(const Matrix& rho, const std::vector<Matrix>& jumps) {
    require_density(rho, "entropy_production state");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho));
    RealVector p = es.eigenvalues().cwiseMax(kTol.entropy_floor);
    const RealVector lp = p.array().log().matrix();
    double total = 0.0;
    for (const Matrix& L : jumps) {
        if (L.rows() != rho.rows() || L.cols() != rho.cols())
            throw InvalidArgument("entropy_production: dimension mismatch");
        if (!is_hermitian(L)) throw InvalidArgument("entropy_production: jump operator must be Hermitian");
        const Matrix Lb = es.eigenvectors().adjoint() * L * es.eigenvectors();
        for (Eigen::Index a = 0; a < p.size(); ++a)
            for (Eigen::Index b = 0; b < p.size(); ++b)
                if (a != b) total += std::norm(Lb(a, b)) * p[a] * (lp[a] - lp[b]);
    }
    return total;
}

double entropy_production(const Matrix& rho, const Matrix& L) {
    return entropy_production(rho, std::vector<Matrix>{L});
}

RateEquation strong_dissipation_rates(const Matrix& H, const Matrix& O, double gamma) {
    if (!(gamma > 0.0)) throw InvalidArgument("strong_dissipation_rates: gamma must be positive");
    require_hermitian(H, "strong_dissipation_rates H");
    require_hermitian(O, "strong_dissipation_rates O");
    if (H.rows() != O.rows()) throw InvalidArgument("strong_dissipation_rates: dimension mismatch");
    const EigenSystem es = hermitian_eigensystem(O);
    const RealVector& lam = es.values;
    const Eigen::Index d = lam.size();
    const double range = lam[d - 1] - lam[0];
    for (Eigen::Index i = 1; i < d; ++i)
        if (!(lam[i] - lam[i - 1] >= kTol.degeneracy * range) || range <= 0.0)
            throw InvalidArgument("strong_dissipation_rates: O has (near-)degenerate eigenvalues");
    const Matrix Hb = es.vectors.adjoint() * H * es.vectors;
    RateEquation r;
    r.eigenvalues = lam;
    r.basis = es.vectors;
    r.rates = RealMatrix::Zero(d, d);
    for (Eigen::Index l = 0; l < d; ++l)
        for (Eigen::Index n = 0; n < d; ++n) {
            if (l == n) continue;
            const double dl = lam[l] - lam[n];
            r.rates(l, n) = 4.0 * std::norm(Hb(l, n)) / (gamma * dl * dl);
        }
    for (Eigen::Index n = 0; n < d; ++n) r.rates(n, n) = -r.rates.col(n).sum();
    return r;
}

}  // namespace zeno
