#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "specbound/report.hpp"

namespace specbound::schrodinger1d {

/// Non-negative potential supported in (0, length); outside it is extended by
/// zero for whole-line problems.  Sampled data is treated as piecewise linear.
struct Potential1D {
    enum class Smoothness { smooth, piecewise, sampled };

    double length = 1.0;
    std::function<double(double)> eval;
    Smoothness smoothness = Smoothness::smooth;
    double quadrature_tol = 1e-10;
    std::vector<double> kinks;               // interior discontinuities / sample nodes
    std::optional<double> exact_integral;    // closed-form Int V when available
    std::function<double(double)> exact_power_integral;  // p -> Int V^p, optional

    static Potential1D square_well(double depth, double interval_length,
                                   double well_width, double well_center);
    static Potential1D gaussian(double amplitude, double interval_length,
                                double width, double center);
    static Potential1D from_samples(std::vector<double> t, std::vector<double> v);

    double integral() const;               // Int_0^l V
    double integral_power(double p) const; // Int_0^l V^p
    double max_value() const;
};

/// Angles of third-kind boundary conditions u'(0) = cot(alpha) u(0),
/// u'(l) = -cot(beta) u(l); alpha = beta = 0 is Dirichlet.
struct BoundaryAngles {
    double alpha = 0.0;
    double beta = 0.0;
};

struct ShotResult {
    double u_end = 0.0;
    double du_end = 0.0;
    int node_count = 0;     // interior sign changes
    double norm_sq = 0.0;   // Int_0^l u^2
};

/// Integrates -u'' - V u = -nu u from 0 to l with initial data
/// (sin alpha, cos alpha), adaptive embedded Runge-Kutta (order 5(4)).
ShotResult shoot(const Potential1D& pot, double nu, double alpha);

/// Mirror problem: integrates from l down to 0 with terminal data
/// (sin beta, -cos beta); u_end/du_end then refer to t = 0.
ShotResult shoot_reverse(const Potential1D& pot, double nu, double beta);

/// Negative spectrum { -nu_k }, returned as nu sorted descending
/// (nu[0] is the deepest level); the k-th eigenfunction has k-1 interior
/// nodes.  Empty when there is no negative spectrum.
struct NegativeEigenvalues {
    std::vector<double> nu;
    std::size_t count() const { return nu.size(); }
};

NegativeEigenvalues interval_eigenvalues(const Potential1D& pot, BoundaryAngles bc);

/// Whole-line negative spectrum { -mu_k } of -d^2/dt^2 - V; found by shooting
/// with the energy-dependent angle omega = arccot(sqrt(mu)).
NegativeEigenvalues line_eigenvalues(const Potential1D& pot);

/// k-th eigenvalue (k >= 1) of the (alpha, beta) problem restricted to the
/// window (lo, hi); node-count verified.  Used by the identity checks.
double eigenvalue_k(const Potential1D& pot, BoundaryAngles bc, int k, double lo, double hi);

/// Both sides of d nu_k / d alpha = ||u(.; nu_k, alpha)||^{-2}: a central
/// finite difference with step h_alpha, and the inverse squared norm of the
/// shooting solution normalized by its initial data.
struct DerivativePair {
    double fd_value;
    double norm_value;
};
DerivativePair eigenvalue_derivative_check(const Potential1D& pot, BoundaryAngles bc,
                                           int k, double h_alpha);

/// mu_k - lambda_k computed directly and through the angle-integral identity
///   Int_0^{omega_k} ||u(.; nu_k(a, omega_k), a)||^{-2} da
///   + Int_0^{omega_k} ||u~(.; nu_k(0, b), b)||^{-2} db.
struct GapPair {
    double direct;
    double integral;
    double mu_k;
    double lambda_k;
    double omega_k;
};
GapPair gap_identity_check(const Potential1D& pot, int k, double quad_tol);

/// Ground-state gap bound mu_1 - lambda_1 >= 2 (Int V)^2 / (exp(l Int V) - 1);
/// reports whether the zero criterion l Int V <= 2 ln 3 fires, and when mu_1
/// is supplied also the intermediate value 8 mu_1 / (exp(2 l sqrt(mu_1)) - 1).
BoundReport ground_state_gap_bound(const Potential1D& pot,
                                   std::optional<double> mu1 = std::nullopt);

/// Interval Lieb-Thirring bound with remainder: zero when A = l Int V <= 2 ln 3,
/// otherwise max(0, Lcl_{sigma,1} Int V^{sigma+1/2} - (2 (Int V)^2 / (e^A - 1))^sigma).
BoundReport lt_bound_with_remainder(const Potential1D& pot, double sigma);

/// sum_k nu_k^sigma over a computed negative spectrum.
double riesz_mean_of(const NegativeEigenvalues& ev, double sigma);

}  // namespace specbound::schrodinger1d
