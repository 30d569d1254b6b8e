#pragma once

#include "zeno/core.hpp"

#include <array>
#include <string>
#include <vector>

namespace zeno {

enum class BlochVariant { dephasing_z, two_projectors, relaxation };

BlochVariant parse_bloch_variant(const std::string& s);
const char* bloch_variant_name(BlochVariant v);

struct BlochParams {
    double omega = 1.0;
    double gamma = 0.0;   // dephasing_z
    double gamma1 = 0.0;  // two_projectors, |up><up|
    double gamma2 = 0.0;  // two_projectors, |down><down|
    double sigma = 0.0;   // relaxation
};

Eigen::Matrix3d bloch_matrix(BlochVariant v, const BlochParams& p);

struct BlochSpectrum {
    cplx lambda0;  // the decoupled <sigma_y> mode
    cplx plus;     // larger real part of the x-z pair (positive imaginary part for a complex pair)
    cplx minus;
    std::array<cplx, 3> sorted;  // by real part, descending
};

BlochSpectrum bloch_eigenvalues(const Eigen::Matrix3d& M);
BlochSpectrum bloch_closed_form(BlochVariant v, const BlochParams& p);

// H = Omega sigma_y with the variant's jump operators.
struct BlochModel {
    Matrix H;
    std::vector<Matrix> jumps;
};
BlochModel bloch_lindblad_model(BlochVariant v, const BlochParams& p);

// d<sigma>/dt = M <sigma> + b for a two-level Lindbladian.
struct AffineBloch {
    Eigen::Matrix3d M;
    Eigen::Vector3d b;
};
AffineBloch affine_bloch_map(const Matrix& H, const std::vector<Matrix>& jumps);

Eigen::Vector3d bloch_vector(const Matrix& rho);
Matrix density_from_bloch(const Eigen::Vector3d& r);

struct ZenoSurvival {
    double omega = 1.0;
    double dt = 0.0;
    long count = 1;
};

struct ZenoOutcome {
    double survival = 1.0;
    double transition = 0.0;
};

ZenoOutcome zeno_survival(const ZenoSurvival& z);

// -Tr[(L rho L - L^2 rho) ln rho] for Hermitian L, summed over the list.
double entropy_production(const Matrix& rho, const Matrix& L);
double entropy_production(const Matrix& rho, const std::vector<Matrix>& jumps);

struct RateEquation {
    RealMatrix rates;        // d p_l / dt = sum_n rates(l, n) p_n
    RealVector eigenvalues;  // of O, ascending
    Matrix basis;            // eigenvectors of O
};

// Adiabatic elimination of coherences for L = sqrt(Gamma) O at large Gamma.
RateEquation strong_dissipation_rates(const Matrix& H, const Matrix& O, double gamma);

}  // namespace zeno
