#pragma once

#include <span>

#include "specbound/report.hpp"
#include "specbound/riesz.hpp"

namespace specbound::horn {

/// Horn-shaped region in R^d:
///   { (x', x_d) : |x'| |x_d|^{nu/(d-1)} < 1 },  d >= 2.
/// Infinite volume, cusps along the axes.  nu > 1 gives power-law eigenvalue
/// counting; the planar nu = 1 case is critical (logarithmic asymptotics).
struct HornRegion {
    int dim = 2;
    double nu = 2.0;
};

/// Membership test (open set, strict inequality).
bool contains(const HornRegion& h, std::span<const double> point);

/// One-dimensional section of the horn at |x'| = xprime_norm: the interval
/// (-w, w) with w = xprime_norm^{(1-d)/nu}, shrinking as |x'| grows.
struct HornSection {
    double xprime_norm = 0.0;
    double half_width = 0.0;
};

HornSection section(const HornRegion& h, double xprime_norm);

/// Coefficient C(d, nu, sigma) of the closed-form Riesz-mean bound
/// R_sigma(Lambda) <= C Lambda^{sigma + (d-1+nu)/2}:
///   C = zeta(nu) / (2^{d-1}(d-1)) (2/pi)^nu
///       Gamma(nu/2+1) Gamma(sigma+1) / (Gamma((d+1)/2) Gamma(sigma+(d+1+nu)/2)).
double riesz_bound_coefficient(const HornRegion& h, double sigma);

/// Sharp closed-form bound on R_sigma(Lambda); hypotheses sigma >= 3/2,
/// nu > 1.  Violations are flagged, the value is still the formula's.
BoundReport riesz_bound(const HornRegion& h, double sigma, double lambda);

/// Same bound evaluated through the section-trace integral
///   Lcl_{sigma,d-1} omega_{d-1} sum_j Int_0^inf
///     (1 - pi^2 j^2 / (4 Lambda r^{2(1-d)/nu}))_+^{sigma+(d-1)/2} r^{d-2} dr
///     * Lambda^{sigma+(d-1)/2},
/// with per-j adaptive quadrature and an Euler-Maclaurin tail for the j-sum.
/// omega_{d-1} is the volume of the unit ball in R^{d-1} (equals 2 in the
/// planar case); this is the convention under which the integral reproduces
/// the closed form exactly.
double riesz_bound_by_quadrature(const HornRegion& h, double sigma,
                                 double lambda, double quad_tol);

/// Counting bound R_0(Lambda) <= C_{d,nu} Lambda^{(d-1+nu)/2} obtained by
/// optimizing the sigma = 3/2 bound; the report carries tau_min = 3/(d+nu-1).
BoundReport counting_bound(const HornRegion& h, double lambda);

/// Planar critical horn (nu = 1): zero below pi^2/16, otherwise
///   Lambda^{sigma+1} ln(Lambda) / (pi (sigma+1)) + C Lambda^{sigma+1} / (sigma+1)
/// with C = (33 + 16 ln(4/pi)) / (8 pi).
BoundReport critical_riesz_bound(double sigma, double lambda);

/// Counting bound for the planar critical horn: zero below pi^2/16, otherwise
/// (5/3)^{3/2} Lambda ln(Lambda) / pi + C Lambda with
/// C = sqrt(5/3) (825 + 400 ln(4/pi) + 360 pi ln(5/3)) / (72 pi).
BoundReport critical_counting_bound(double lambda);

/// Leading term of the planar (d = 2) semiclassical limit:
///   nu > 1 : zeta(nu) (2/pi)^nu B(nu/2+1, sigma+1)/B(sigma+(nu+3)/2, 1/2)
///            * Lambda^{sigma+(nu+1)/2}
///   nu = 1 : Lambda^{sigma+1} ln(Lambda) / (pi (sigma+1)).
double asymptotic_leading(const HornRegion& h, double sigma, double lambda);

/// One-dimensional sections of the planar critical horn in the frame rotated
/// by pi/4: one interval of length 2 sqrt(x1^2+2) for |x1| <= sqrt(2), two
/// intervals of length sqrt(x1^2+2) - sqrt(x1^2-2) otherwise.
IntervalPartition critical_rotated_section(double x1);

}  // namespace specbound::horn
