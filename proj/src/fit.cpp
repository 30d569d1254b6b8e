#include "zeno/fit.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace zeno {

LineFit line_fit(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 3) throw InvalidArgument("line_fit: need at least 3 matching points");
    const double n = static_cast<double>(t.size());
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        mt += t[i];
        my += y[i];
    }
    mt /= n;
    my /= n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        sty += (t[i] - mt) * (y[i] - my);
    }
    if (!(stt > 0.0)) throw InvalidArgument("line_fit: abscissae are all equal");
    LineFit f;
    f.slope = sty / stt;
    f.intercept = my - f.slope * mt;
    double ss = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * t[i];
        ss += r * r;
    }
    f.slope_error = std::sqrt(ss / (n - 2.0) / stt);
    return f;
}

ScalingFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 4) throw InvalidArgument("power_law_fit: need at least 4 matching points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("power_law_fit: data must be positive");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const LineFit l = line_fit(lx, ly);
    ScalingFit s;
    s.x = x;
    s.y = y;
    s.exponent = l.slope;
    s.exponent_error = l.slope_error;
    s.prefactor = std::exp(l.intercept);
    return s;
}

std::vector<cplx> dmd_rates(const RealMatrix& snapshots, double dt, int rank) {
    const Eigen::Index m = snapshots.cols();
    if (m < 3 || rank < 1 || !(dt > 0.0)) throw InvalidArgument("dmd_rates: bad input");
    const RealMatrix X = snapshots.leftCols(m - 1);
    const RealMatrix Y = snapshots.rightCols(m - 1);
    Eigen::JacobiSVD<RealMatrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::Index r = std::min<Eigen::Index>(rank, svd.singularValues().size());
    const RealMatrix U = svd.matrixU().leftCols(r);
    const RealMatrix V = svd.matrixV().leftCols(r);
    const RealVector s = svd.singularValues().head(r);
    const RealMatrix A = U.transpose() * Y * V * s.cwiseInverse().asDiagonal();
    Eigen::EigenSolver<RealMatrix> es(A);
    std::vector<cplx> out;
    for (Eigen::Index i = 0; i < r; ++i) out.push_back(std::log(es.eigenvalues()[i]) / dt);
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return out;
}

}  // namespace zeno
