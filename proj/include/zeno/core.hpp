#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace zeno {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

// Bad input to a library call.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed (step underflow, positivity breach, ...).
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or invalid user configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every numerical tolerance used by the library lives here.
struct Tolerances {
    double hermitian = 1e-12;          // relative Frobenius norm of H - H^dagger
    double trace = 1e-10;              // density-matrix trace
    double negative_eigenvalue = 1e-10;
    double reconstruction = 1e-10;     // ||H - V L V^dagger|| / ||H||
    double positivity_abort = 1e-8;    // evolve aborts when min eig < -this
    double trajectory_trace = 1e-8;
    double entropy_floor = 1e-14;
    double imag_discard = 1e-10;
    double degeneracy = 1e-6;          // strong-dissipation eigenvalue gap / spectral range
    double gamma_psd = 1e-10;          // singular-coupling gamma matrix
    double lz_overlap = 0.99;          // generalized LZ projection parallelism bound
    double eigen_tie = 1e-12;          // eigenvalues closer than this (relative) are ties
    int n_max = 14;
};

inline constexpr Tolerances kTol{};

enum class Axis { x, y, z };

Axis parse_axis(const std::string& s);
const char* axis_name(Axis a);

struct EigenSystem {
    RealVector values;  // ascending
    Matrix vectors;     // columns
};

Eigen::Matrix2cd pauli(Axis a);
Matrix pauli_operator(Axis a, int mu, int n);

EigenSystem hermitian_eigensystem(const Matrix& H);
double von_neumann_entropy(const Matrix& rho);
double expectation(const Matrix& rho, const Matrix& A);

bool is_hermitian(const Matrix& A, double tol = kTol.hermitian);
void require_hermitian(const Matrix& A, const std::string& what);
void require_density(const Matrix& rho, const std::string& what = "density matrix");
void require_square(const Matrix& A, const std::string& what);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix hermitize(const Matrix& a);
Matrix projector(const Vector& v);
Vector basis_state(Eigen::Index dim, Eigen::Index k);

// Trace out the second factor of a (dA*dB)-dimensional operator.
Matrix partial_trace_second(const Matrix& rho, Eigen::Index dA, Eigen::Index dB);

double min_eigenvalue(const Matrix& rho);
double trace_distance(const Matrix& a, const Matrix& b);
Matrix maximally_mixed(Eigen::Index dim);

Matrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng);
Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng);
Matrix random_density(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace zeno
