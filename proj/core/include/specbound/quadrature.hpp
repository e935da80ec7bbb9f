#pragma once

#include <functional>
#include <span>
#include <vector>

namespace specbound::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b].
///
/// Subdivision stops once the accumulated error estimate is below
/// max(abs_tol, rel_tol * |value|).  Known kinks or discontinuities can be
/// passed as breakpoints; the initial worklist is split there.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 0.0,
                 std::span<const double> breakpoints = {},
                 int max_intervals = 200000);

/// Single non-adaptive G7/K15 panel, exposed for reuse in nested rules.
double kronrod15(const std::function<double(double)>& f, double a, double b,
                 double& error_estimate);

}  // namespace specbound::quad
