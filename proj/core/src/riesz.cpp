#include "specbound/riesz.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specbound/quadrature.hpp"
#include "specbound/specfun.hpp"

namespace specbound::riesz {

namespace {
constexpr double kPi = std::numbers::pi;

double positive_part_power(double gap, double sigma) {
    if (gap <= 0.0) return 0.0;
    if (sigma == 0.0) return 1.0;
    return std::pow(gap, sigma);
}
}  // namespace

double riesz_mean(const EigenvalueSpectrum& spec, double lambda, double sigma) {
    if (sigma < 0.0) throw std::domain_error("riesz_mean: requires sigma >= 0");
    double sum = 0.0;
    for (double e : spec.values) {
        if (e >= lambda) break;  // sorted ascending
        sum += positive_part_power(lambda - e, sigma);
    }
    return sum;
}

double interval_trace(double lambda, double length, double gamma) {
    if (!(length > 0.0)) throw std::domain_error("interval_trace: requires length > 0");
    if (gamma < 0.0) throw std::domain_error("interval_trace: requires gamma >= 0");
    if (lambda <= 0.0) return 0.0;
    const double jmax = length * std::sqrt(lambda) / kPi;
    double sum = 0.0;
    for (double j = 1.0; j <= jmax; j += 1.0) {
        const double gap = lambda - kPi * kPi * j * j / (length * length);
        sum += positive_part_power(gap, gamma);
    }
    return sum;
}

double partition_trace(double lambda, const IntervalPartition& part, double gamma) {
    double sum = 0.0;
    for (double l : part.lengths) sum += interval_trace(lambda, l, gamma);
    return sum;
}

double lattice_sum_bound(double A, double gamma) {
    if (!(A > 0.0) || !(gamma > 0.0))
        throw std::domain_error("lattice_sum_bound: requires A > 0 and gamma > 0");
    return 0.5 * A * specfun::beta_fn(0.5, gamma + 1.0);
}

double aizenman_lieb_lift(const std::function<double(double)>& r_gamma,
                          double lambda, double sigma, double gamma,
                          double quad_tol, std::span<const double> breakpoints) {
    if (!(gamma >= 0.0) || !(gamma < sigma))
        throw std::domain_error("aizenman_lieb_lift: requires 0 <= gamma < sigma");
    if (lambda <= 0.0) return 0.0;

    const double weight_exp = sigma - gamma - 1.0;
    auto integrand = [&](double tau) {
        if (tau <= 0.0) return 0.0;
        const double level = lambda - tau;
        if (level <= 0.0) return 0.0;
        return std::pow(tau, weight_exp) * r_gamma(level);
    };
    auto res = quad::integrate(integrand, 0.0, lambda, 0.0, quad_tol, breakpoints);
    return res.value / specfun::beta_fn(gamma + 1.0, sigma - gamma);
}

double counting_from_riesz(const std::function<double(double)>& r_sigma,
                           double lambda, double sigma,
                           std::span<const double> tau_grid) {
    if (tau_grid.empty())
        throw std::invalid_argument("counting_from_riesz: empty tau grid");
    if (!(sigma > 0.0)) throw std::domain_error("counting_from_riesz: requires sigma > 0");
    double best = std::numeric_limits<double>::infinity();
    for (double tau : tau_grid) {
        if (!(tau > 0.0)) continue;
        const double v = std::pow(tau * lambda, -sigma) * r_sigma((1.0 + tau) * lambda);
        if (v < best) best = v;
    }
    return best;
}

std::vector<double> default_tau_grid() {
    std::vector<double> grid(64);
    for (int i = 0; i < 64; ++i)
        grid[i] = std::pow(10.0, -2.0 + 4.0 * i / 63.0);
    return grid;
}

}  // namespace specbound::riesz
