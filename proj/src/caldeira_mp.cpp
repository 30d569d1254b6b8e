// 50-digit eigensolve for the on-curve spectrum. At alpha = 8 the three roots
// coincide in a defective block, where double precision only resolves ~1e-5.
#include "zeno/caldeira.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>

namespace {
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>, boost::multiprecision::et_off>;
}

namespace Eigen {
template <>
struct NumTraits<Real> : GenericNumTraits<Real> {
    enum { IsInteger = 0, IsSigned = 1, IsComplex = 0, RequireInitialization = 1, ReadCost = 6, AddCost = 8, MulCost = 16 };
    static inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static inline Real dummy_precision() { return Real(1e-45); }
    static inline Real highest() { return (std::numeric_limits<Real>::max)(); }
    static inline Real lowest() { return std::numeric_limits<Real>::lowest(); }
    static inline int digits10() { return 50; }
};
}  // namespace Eigen

namespace zeno {

std::array<double, 3> numeric_eigenvalues_on_curve_mp(double alpha) {
    if (!(alpha >= 8.0)) throw InvalidArgument("analytic eigenvalues require alpha >= 8");
    const Real a(alpha);
    const Real b = 3 * sqrt((a - 2) / 2);
    Eigen::Matrix<Real, 3, 3> M;
    M << Real(0), Real(1), Real(0), -(1 + a), Real(0), Real(1), a * b, Real(0), -b;
    Eigen::EigenSolver<Eigen::Matrix<Real, 3, 3>> es(M, false);
    if (es.info() != Eigen::Success) throw ComputationError("multiprecision eigensolve failed");
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = static_cast<double>(es.eigenvalues()[i].real());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

}  // namespace zeno
