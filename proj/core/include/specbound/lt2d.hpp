#pragma once

#include <functional>
#include <vector>

#include "specbound/report.hpp"

namespace specbound::lt2d {

/// One open interval of a one-dimensional section together with the potential
/// restricted to it.
struct Section {
    double a = 0.0;
    double b = 0.0;
    std::function<double(double)> trace;  // V(x', t) as a function of t
    std::vector<double> kinks;            // sampled traces: interpolation nodes
};

/// Domain-with-potential presented through its sections: for each splitting
/// coordinate x' the sectioner returns the intervals J_k(x') and the
/// potential trace on each.  dim = 2 uses a scalar x' in R; for dim >= 3 the
/// sections must depend on |x'| only and the sectioner receives the radius.
struct SectionedPotential {
    enum class Provenance { analytic, raster };

    int dim = 2;
    std::function<std::vector<Section>(double)> sectioner;
    Provenance provenance = Provenance::analytic;
    double raster_h = 0.0;
};

/// Dimensionless well strength A = |J| Int_J V, line density B = Int_J V, and
/// membership in the binding index set (A > 2 ln 3).
struct SectionStats {
    double A = 0.0;
    double B = 0.0;
    bool in_kappa = false;
};

SectionStats section_stats(const Section& s, double quad_tol);

/// Lieb-Thirring bound with remainder over a sectioned domain:
///   Lcl_{sigma,d} Int_{Omega_V} V^{sigma+d/2}
///   - Lcl_{sigma,d-1} Int rho(x') dx',
/// rho(x') = sum_{k in kappa} (2 B_k^2 / (e^{A_k} - 1))^{sigma+(d-1)/2}.
/// The outer integral runs over |x'| <= outer_radius; pass
/// outer_radius_covers_kappa = true when every section beyond it is known to
/// have empty kappa (otherwise the report is flagged as truncated).
BoundReport sectioned_lt_bound(const SectionedPotential& sd, double sigma,
                               double quad_tol, double outer_radius,
                               bool outer_radius_covers_kappa);

/// Scale-covariant power potential on the planar critical horn:
/// V(x, y) = lambda |x|^alpha |y|^{-alpha} on {|x||y| < 1} with 0 < alpha < 2/5.
/// Closed-form bound
///   Lcl_{sigma,2} * 4 / (2 alpha (sigma+1) (1 - alpha (sigma+1)))
///   * (2 / ((1-alpha) ln 3))^{alpha(sigma+1)/(1-alpha)}
///   * lambda^{(sigma+1)/(1-alpha)},
/// valid for 3/2 <= sigma < (1-alpha)/alpha.
BoundReport horn_power_bound(double alpha, double sigma, double lambda);

/// The same quantity by direct two-dimensional quadrature of
/// 4 Lcl_{sigma,2} Int_0^{x_alpha} Int_0^{1/x} x^{a(s+1)} y^{-a(s+1)} dy dx
/// * lambda^{sigma+1}; the independent cross-check of the closed form.
double horn_power_bound_by_quadrature(double alpha, double sigma, double lambda,
                                      double quad_tol);

/// Binding cutoff x_alpha(lambda) = (2 lambda / ((1-alpha) ln 3))^{1/(2-2alpha)};
/// sections with |x'| beyond it have A <= 2 ln 3.
double horn_power_cutoff(double alpha, double lambda);

/// Truncated integral Int_{|x| <= X} V^{sigma+1} over the horn (quadrant
/// symmetric); grows without bound in X since the potential is not in
/// L^{sigma+1} of the full domain.
double horn_power_unrestricted_integral(double alpha, double sigma, double lambda,
                                        double truncation, double quad_tol);

/// Generic fallback sectioner: samples the domain predicate along t with
/// spacing h, turns maximal in-domain runs into intervals (endpoints at
/// half-sample resolution) and samples the potential on each run.
std::vector<Section> raster_sectioner(const std::function<bool(double, double)>& inside,
                                      const std::function<double(double, double)>& potential,
                                      double xprime, double t_min, double t_max, double h);

}  // namespace specbound::lt2d
