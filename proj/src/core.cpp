#include "zeno/core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace zeno {

Axis parse_axis(const std::string& s) {
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    if (s == "z") return Axis::z;
    throw InvalidArgument("unknown Pauli axis '" + s + "'");
}

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

Eigen::Matrix2cd pauli(Axis a) {
    Eigen::Matrix2cd m;
    switch (a) {
        case Axis::x: m << 0, 1, 1, 0; break;
        case Axis::y: m << 0, -I, I, 0; break;
        case Axis::z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix pauli_operator(Axis a, int mu, int n) {
    if (n < 1 || n > kTol.n_max)
        throw InvalidArgument("qubit count " + std::to_string(n) + " outside [1, " +
                              std::to_string(kTol.n_max) + "]");
    if (mu < 0 || mu >= n)
        throw InvalidArgument("qubit index " + std::to_string(mu) + " outside [0, " +
                              std::to_string(n) + ")");
    const Eigen::Index dim = Eigen::Index(1) << n;
    const int shift = n - 1 - mu;  // qubit 0 is the most significant bit
    const Eigen::Index mask = Eigen::Index(1) << shift;
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const bool one = (i & mask) != 0;
        switch (a) {
            case Axis::z: m(i, i) = one ? -1.0 : 1.0; break;
            case Axis::x: m(i ^ mask, i) = 1.0; break;
            case Axis::y: m(i ^ mask, i) = one ? -I : I; break;
        }
    }
    return m;
}

bool is_hermitian(const Matrix& A, double tol) {
    if (A.rows() != A.cols()) return false;
    const double scale = std::max(A.norm(), 1e-300);
    return (A - A.adjoint()).norm() <= tol * std::max(scale, 1.0);
}

void require_square(const Matrix& A, const std::string& what) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw InvalidArgument(what + " must be a non-empty square matrix");
    if (!A.allFinite()) throw InvalidArgument(what + " has non-finite entries");
}

void require_hermitian(const Matrix& A, const std::string& what) {
    require_square(A, what);
    if (!is_hermitian(A)) throw InvalidArgument(what + " is not Hermitian");
}

void require_density(const Matrix& rho, const std::string& what) {
    require_hermitian(rho, what);
    if (std::abs(rho.trace() - 1.0) > kTol.trace)
        throw InvalidArgument(what + " trace differs from 1");
    if (min_eigenvalue(rho) < -kTol.negative_eigenvalue)
        throw InvalidArgument(what + " has a negative eigenvalue");
}

EigenSystem hermitian_eigensystem(const Matrix& H) {
    require_hermitian(H, "hermitian_eigensystem input");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(H));
    if (es.info() != Eigen::Success) throw ComputationError("Hermitian eigensolver failed");
    const RealVector& vals = es.eigenvalues();
    const Matrix& vecs = es.eigenvectors();
    const Eigen::Index d = vals.size();

    std::vector<Eigen::Index> lead(d);
    for (Eigen::Index k = 0; k < d; ++k) vecs.col(k).cwiseAbs().maxCoeff(&lead[k]);

    // Ties are values within eigen_tie of each other (relative to the spectral scale);
    // inside a tie the column whose largest component comes first goes first.
    const double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    std::vector<Eigen::Index> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Eigen::Index> cluster(d, 0);
    for (Eigen::Index k = 1; k < d; ++k)
        cluster[k] = cluster[k - 1] + (vals[k] - vals[k - 1] > kTol.eigen_tie * scale ? 1 : 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (cluster[a] != cluster[b]) return cluster[a] < cluster[b];
        return lead[a] < lead[b];
    });

    EigenSystem out{RealVector(d), Matrix(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        const Eigen::Index src = order[k];
        out.values[k] = vals[src];
        const cplx c = vecs(lead[src], src);
        out.vectors.col(k) = vecs.col(src) * (std::abs(c) > 0 ? std::conj(c) / std::abs(c) : 1.0);
    }
    return out;
}

double von_neumann_entropy(const Matrix& rho) {
    require_density(rho);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (double p : es.eigenvalues())
        if (p > kTol.entropy_floor) s -= p * std::log(p);
    return std::max(s, 0.0);
}

double expectation(const Matrix& rho, const Matrix& A) {
    if (rho.rows() != A.rows() || rho.cols() != A.cols())
        throw InvalidArgument("expectation: dimension mismatch");
    const cplx v = (rho * A).trace();
    return v.real();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector basis_state(Eigen::Index dim, Eigen::Index k) {
    if (k < 0 || k >= dim) throw InvalidArgument("basis index out of range");
    Vector v = Vector::Zero(dim);
    v[k] = 1.0;
    return v;
}

Matrix partial_trace_second(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    if (rho.rows() != dA * dB || rho.cols() != dA * dB)
        throw InvalidArgument("partial trace: dimension mismatch");
    Matrix out = Matrix::Zero(dA, dA);
    for (Eigen::Index i = 0; i < dA; ++i)
        for (Eigen::Index j = 0; j < dA; ++j)
            out(i, j) = rho.block(i * dB, j * dB, dB, dB).trace();
    return out;
}

double min_eigenvalue(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(rho), Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
}

double trace_distance(const Matrix& a, const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a - b), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Matrix maximally_mixed(Eigen::Index dim) {
    return Matrix::Identity(dim, dim) / static_cast<double>(dim);
}

namespace {
Matrix ginibre(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}
}  // namespace

Matrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    return hermitize(ginibre(dim, rng));
}

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix> qr(ginibre(dim, rng));
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

Matrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
    const Matrix g = ginibre(dim, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return hermitize(rho);
}

}  // namespace zeno
