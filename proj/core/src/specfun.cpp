#include "specbound/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specbound::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients, g = 7.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

double lanczos_series(double x) {
    double s = kLanczos[0];
    for (int k = 1; k < 9; ++k) s += kLanczos[k] / (x + k - 1.0);
    return s;
}

void require_positive(double x, const char* who) {
    if (!(x > 0.0)) throw std::domain_error(std::string(who) + ": argument must be positive");
}

}  // namespace

double gamma_fn(double x) {
    require_positive(x, "gamma_fn");
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * lanczos_series(x);
}

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    const double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(lanczos_series(x));
}

double beta_fn(double a, double b) {
    require_positive(a, "beta_fn");
    require_positive(b, "beta_fn");
    if (a + b < 150.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double zeta_fn(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta_fn: requires s > 1");

    // Chebyshev-accelerated alternating series (P. Borwein's algorithm 2):
    // zeta(s) = -1 / (d_n (1 - 2^{1-s})) * sum_{k=0}^{n-1} (-1)^k (d_k - d_n) / (k+1)^s.
    constexpr int n = 64;
    static const std::array<double, n + 1> d = [] {
        std::array<double, n + 1> dd{};
        double term = 1.0 / static_cast<double>(n);  // i = 0 summand of d_k / n
        double acc = term;
        dd[0] = static_cast<double>(n) * acc;
        for (int i = 1; i <= n; ++i) {
            term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
            acc += term;
            dd[i] = static_cast<double>(n) * acc;
        }
        return dd;
    }();

    double sum = 0.0;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        sum += sign * (d[k] - d[n]) * std::pow(k + 1.0, -s);
        sign = -sign;
    }
    return -sum / (d[n] * (1.0 - std::pow(2.0, 1.0 - s)));
}

SemiclassicalConstant lcl_constant(double sigma, int dim) {
    if (sigma < 0.0) throw std::domain_error("lcl_constant: requires sigma >= 0");
    if (dim < 1) throw std::domain_error("lcl_constant: requires dim >= 1");
    const double value = gamma_fn(sigma + 1.0) /
                         (std::pow(4.0 * kPi, 0.5 * dim) * gamma_fn(sigma + 0.5 * dim + 1.0));
    return {sigma, dim, value};
}

double lcl_value(double sigma, int dim) { return lcl_constant(sigma, dim).value; }

}  // namespace specbound::specfun
