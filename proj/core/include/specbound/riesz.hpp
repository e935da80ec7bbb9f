#pragma once

#include <functional>
#include <span>
#include <vector>

#include "specbound/spectrum.hpp"

namespace specbound {
namespace riesz {

/// Riesz mean sum_k (lambda - E_k)_+^sigma.  sigma = 0 counts strictly
/// negative gaps only (0^0 := 0), i.e. the number of E_k < lambda.
double riesz_mean(const EigenvalueSpectrum& spec, double lambda, double sigma);

/// sum_{j>=1} (lambda - pi^2 j^2 / length^2)_+^gamma; finite, terminates at
/// j > length sqrt(lambda) / pi.
double interval_trace(double lambda, double length, double gamma);

/// interval_trace summed over a partition.
double partition_trace(double lambda, const IntervalPartition& part, double gamma);

/// Upper bound (A/2) B(1/2, gamma+1) for the lattice sum
/// sum_j (1 - j^2/A^2)_+^gamma, valid for A > 0, gamma > 0.
double lattice_sum_bound(double A, double gamma);

/// Aizenman-Lieb order lifting: reconstructs the order-sigma Riesz mean from
/// the order-gamma one,
///   (1/B(gamma+1, sigma-gamma)) Int_0^lambda tau^{sigma-gamma-1}
///       r_gamma(lambda - tau) dtau,
/// with adaptive quadrature to absolute tolerance quad_tol.  Breakpoints
/// (e.g. tau = lambda - E_k for step-like r_gamma) speed up convergence.
double aizenman_lieb_lift(const std::function<double(double)>& r_gamma,
                          double lambda, double sigma, double gamma,
                          double quad_tol,
                          std::span<const double> breakpoints = {});

/// Counting-function upper bound from a higher-order mean:
/// min over the grid of (tau lambda)^{-sigma} r_sigma((1+tau) lambda).
double counting_from_riesz(const std::function<double(double)>& r_sigma,
                           double lambda, double sigma,
                           std::span<const double> tau_grid);

/// 64 log-spaced points in [1e-2, 1e2].
std::vector<double> default_tau_grid();

}  // namespace riesz
}  // namespace specbound
