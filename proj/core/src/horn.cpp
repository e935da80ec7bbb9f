#include "specbound/horn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specbound/quadrature.hpp"
#include "specbound/specfun.hpp"

namespace specbound::horn {

namespace {

constexpr double kPi = std::numbers::pi;

using specfun::beta_fn;
using specfun::gamma_fn;
using specfun::lcl_value;
using specfun::zeta_fn;

void check_region(const HornRegion& h) {
    if (h.dim < 2) throw std::domain_error("horn: requires dim >= 2");
    if (h.nu < 1.0) throw std::domain_error("horn: requires nu >= 1");
    if (h.nu == 1.0 && h.dim != 2)
        throw std::domain_error("horn: nu = 1 is only defined in the plane");
}

double critical_threshold() { return kPi * kPi / 16.0; }

// C of the critical Riesz bound, (33 + 16 ln(4/pi)) / (8 pi) < 1.47.
double critical_constant() { return (33.0 + 16.0 * std::log(4.0 / kPi)) / (8.0 * kPi); }

}  // namespace

bool contains(const HornRegion& h, std::span<const double> point) {
    check_region(h);
    if (static_cast<int>(point.size()) != h.dim)
        throw std::invalid_argument("horn::contains: point dimension mismatch");
    double cross = 0.0;
    for (int i = 0; i + 1 < h.dim; ++i) cross += point[i] * point[i];
    cross = std::sqrt(cross);
    const double axial = std::fabs(point[h.dim - 1]);
    return cross * std::pow(axial, h.nu / (h.dim - 1)) < 1.0;
}

HornSection section(const HornRegion& h, double xprime_norm) {
    check_region(h);
    if (!(xprime_norm >= 0.0))
        throw std::domain_error("horn::section: requires |x'| >= 0");
    return {xprime_norm, std::pow(xprime_norm, (1.0 - h.dim) / h.nu)};
}

double riesz_bound_coefficient(const HornRegion& h, double sigma) {
    check_region(h);
    const int d = h.dim;
    const double nu = h.nu;
    return zeta_fn(nu) / (std::pow(2.0, d - 1) * (d - 1)) * std::pow(2.0 / kPi, nu) *
           gamma_fn(0.5 * nu + 1.0) * gamma_fn(sigma + 1.0) /
           (gamma_fn(0.5 * (d + 1)) * gamma_fn(sigma + 0.5 * (d + 1 + nu)));
}

BoundReport riesz_bound(const HornRegion& h, double sigma, double lambda) {
    check_region(h);
    BoundReport rep;
    rep.bound_name = "horn_riesz";
    if (sigma < 1.5) rep.flag("sigma below 3/2");
    if (h.nu <= 1.0) {
        // zeta(nu) diverges at nu = 1: the power-law form has no finite value
        rep.flag("nu must exceed 1 for the power-law bound");
        rep.value = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    if (!(lambda > 0.0)) {
        rep.value = 0.0;
        return rep;
    }
    const double coef = riesz_bound_coefficient(h, sigma);
    rep.value = coef * std::pow(lambda, sigma + 0.5 * (h.dim - 1 + h.nu));
    rep.details["coefficient"] = coef;
    return rep;
}

double riesz_bound_by_quadrature(const HornRegion& h, double sigma,
                                 double lambda, double quad_tol) {
    check_region(h);
    if (!(lambda > 0.0)) return 0.0;
    const int d = h.dim;
    const double nu = h.nu;
    const double q = sigma + 0.5 * (d - 1);
    const double p = 2.0 * (d - 1) / nu;  // exponent of r inside the bracket

    // I_j = Int_0^{R_j} (1 - a_j r^p)^q r^{d-2} dr with a_j = pi^2 j^2 / (4 Lambda).
    auto term = [&](int j) {
        const double aj = kPi * kPi * j * j / (4.0 * lambda);
        const double rj = std::pow(1.0 / aj, 1.0 / p);
        auto f = [&](double r) {
            const double bracket = 1.0 - aj * std::pow(r, p);
            if (bracket <= 0.0) return 0.0;
            return std::pow(bracket, q) * std::pow(r, d - 2.0);
        };
        return quad::integrate(f, 0.0, rj, quad_tol * 1e-2, 0.0).value;
    };

    // Partial sum plus an Euler-Maclaurin tail.  The terms scale exactly like
    // j^{-nu} (a change of variables in the integral), which the tail uses
    // after a numerical proportionality check.
    const int cutoff = 96;
    double sum = 0.0;
    for (int j = 1; j <= cutoff; ++j) sum += term(j);

    const double g_hi = term(cutoff) * std::pow(cutoff, nu);
    const double g_lo = term(cutoff / 2) * std::pow(cutoff / 2, nu);
    if (std::fabs(g_hi / g_lo - 1.0) > 1e-5)
        throw std::runtime_error("horn quadrature: unexpected term decay");

    const double J = cutoff;
    const double tail_zeta = std::pow(J, 1.0 - nu) / (nu - 1.0) - 0.5 * std::pow(J, -nu) +
                             nu / 12.0 * std::pow(J, -nu - 1.0);
    sum += g_hi * tail_zeta;

    const double omega = std::pow(kPi, 0.5 * (d - 1)) / gamma_fn(0.5 * (d + 1));
    return lcl_value(sigma, d - 1) * omega * sum * std::pow(lambda, q);
}

BoundReport counting_bound(const HornRegion& h, double lambda) {
    check_region(h);
    BoundReport rep;
    rep.bound_name = "horn_counting";
    if (h.nu <= 1.0) {
        rep.flag("nu must exceed 1 for the power-law bound");
        rep.value = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    const int d = h.dim;
    const double nu = h.nu;
    const double s = d + nu;
    const double minimized = std::pow(s + 2.0, 0.5 * (s + 2.0)) /
                             (std::pow(3.0, 1.5) * std::pow(s - 1.0, 0.5 * (s - 1.0)));
    const double coef = minimized * riesz_bound_coefficient(h, 1.5);
    rep.value = lambda > 0.0 ? coef * std::pow(lambda, 0.5 * (d - 1 + nu)) : 0.0;
    rep.details["coefficient"] = coef;
    rep.details["tau_min"] = 3.0 / (d + nu - 1.0);
    return rep;
}

BoundReport critical_riesz_bound(double sigma, double lambda) {
    BoundReport rep;
    rep.bound_name = "horn_critical_riesz";
    if (sigma < 1.5) rep.flag("sigma below 3/2");
    rep.details["constant"] = critical_constant();
    rep.details["threshold"] = critical_threshold();
    if (lambda <= critical_threshold()) {
        rep.value = 0.0;
        return rep;
    }
    const double lpow = std::pow(lambda, sigma + 1.0);
    rep.value = lpow * std::log(lambda) / (kPi * (sigma + 1.0)) +
                critical_constant() * lpow / (sigma + 1.0);
    return rep;
}

BoundReport critical_counting_bound(double lambda) {
    BoundReport rep;
    rep.bound_name = "horn_critical_counting";
    const double c = std::sqrt(5.0 / 3.0) *
                     (825.0 + 400.0 * std::log(4.0 / kPi) + 360.0 * kPi * std::log(5.0 / 3.0)) /
                     (72.0 * kPi);
    rep.details["constant"] = c;
    rep.details["threshold"] = critical_threshold();
    if (lambda <= critical_threshold()) {
        rep.value = 0.0;
        return rep;
    }
    rep.value = std::pow(5.0 / 3.0, 1.5) / kPi * lambda * std::log(lambda) + c * lambda;
    return rep;
}

double asymptotic_leading(const HornRegion& h, double sigma, double lambda) {
    check_region(h);
    if (h.dim != 2)
        throw std::domain_error("horn::asymptotic_leading: stated for planar horns only");
    if (sigma < 0.0) throw std::domain_error("horn::asymptotic_leading: requires sigma >= 0");
    if (!(lambda > 0.0)) return 0.0;
    const double nu = h.nu;
    if (nu == 1.0)
        return std::pow(lambda, sigma + 1.0) * std::log(lambda) / (kPi * (sigma + 1.0));
    const double coef = zeta_fn(nu) * std::pow(2.0 / kPi, nu) *
                        beta_fn(0.5 * nu + 1.0, sigma + 1.0) /
                        beta_fn(sigma + 0.5 * (nu + 3.0), 0.5);
    return coef * std::pow(lambda, sigma + 0.5 * (nu + 1.0));
}

IntervalPartition critical_rotated_section(double x1) {
    const double a = std::sqrt(x1 * x1 + 2.0);
    if (std::fabs(x1) <= std::sqrt(2.0)) return {{2.0 * a}};
    const double b = std::sqrt(x1 * x1 - 2.0);
    return {{a - b, a - b}};
}

}  // namespace specbound::horn
