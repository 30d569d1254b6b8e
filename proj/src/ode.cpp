#include "zeno/ode.hpp"

#include <Eigen/Eigenvalues>

namespace zeno {

Matrix expm_hermitian(const Matrix& K) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(K));
    const Vector phases = (-I * es.eigenvalues().cast<cplx>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix magnus4_step(const std::function<Matrix(double)>& H, double t, double h) {
    static const double c = std::sqrt(3.0) / 6.0;
    const Matrix H1 = H(t + (0.5 - c) * h);
    const Matrix H2 = H(t + (0.5 + c) * h);
    // Omega_4 = -i K with K = h/2 (H1 + H2) + i sqrt(3)/12 h^2 [H1, H2]
    const Matrix K = 0.5 * h * (H1 + H2) + I * (std::sqrt(3.0) / 12.0 * h * h) * (H1 * H2 - H2 * H1);
    return expm_hermitian(K);
}

}  // namespace zeno
