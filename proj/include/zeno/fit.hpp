#pragma once

#include "zeno/core.hpp"

#include <vector>

namespace zeno {

// Least squares on log y = a + k log x.
struct ScalingFit {
    std::vector<double> x;
    std::vector<double> y;
    double exponent = 0.0;
    double exponent_error = 0.0;  // standard error
    double prefactor = 0.0;
};

ScalingFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y);

// Least-squares line y = a + b t; returns b and its standard error.
struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_error = 0.0;
};
LineFit line_fit(const std::vector<double>& t, const std::vector<double>& y);

// Continuous-time eigenvalues ln(mu)/dt of the best linear propagator mapping
// column k to column k+1 of uniformly sampled snapshots, truncated to `rank`.
std::vector<cplx> dmd_rates(const RealMatrix& snapshots, double dt, int rank);

}  // namespace zeno
