#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specbound/report.hpp"

namespace specbound::urchin {

/// Radii r_n (n >= 1, r_0 = 0) of the slit generations of a spiny-urchin
/// domain: the plane minus the rays { r >= r_n, phi = (k-1) pi / 2^{n+1} }.
/// Admissible sequences are strictly increasing with r_{n+1} <= 2 r_n and
/// r_n 2^{-n} -> 0 (the decay that keeps the spectrum discrete).
struct UrchinSequence {
    enum class Kind { linear, geometric, exp_over_sqrt, explicit_list };

    Kind kind = Kind::linear;
    double delta = 0.0;          // geometric: r_n = 2^{delta n}, 0 < delta < 1
    std::vector<double> radii;   // explicit_list only

    static UrchinSequence linear();
    static UrchinSequence geometric(double delta);
    static UrchinSequence exp_over_sqrt();
    static UrchinSequence explicit_list(std::vector<double> radii);

    double radius(int n) const;  // r_n, n >= 0 (r_0 = 0)
    int horizon() const;         // largest index the validators scan
};

struct SequenceValidation {
    bool increasing = true;
    bool doubling_ok = true;      // r_{n+1} <= 2 r_n on the horizon
    bool decay_confirmed = true;  // r_n 2^{-n} dropped below 1e-6 r_1
    int horizon_used = 0;
    std::vector<std::string> flags;
    bool ok() const { return increasing && doubling_ok && decay_confirmed; }
};

SequenceValidation validate(const UrchinSequence& seq);

/// Unique index with Lambda > 2^{2n}/r_n^2 - 1/(4 r_n^2) for n <= n_hat and
/// <= for n = n_hat + 1.  Empty when Lambda <= 15/(4 r_1^2) (no spectrum
/// below Lambda).
struct UrchinIndex {
    double lambda;
    int n_hat;
    double r_hat;
};

std::optional<UrchinIndex> index_for(const UrchinSequence& seq, double lambda);

/// Angular-section trace at radius r: with n0 such that r_{n0-1} < r <= r_{n0},
///   2^{n0+1} sum_j (Lambda + 1/(4r^2) - 2^{2 n0} j^2 / r^2)_+^gamma.
double section_trace(const UrchinSequence& seq, double r, double lambda, double gamma);

/// Two-term upper bound for R_sigma(Lambda):
///   r_hat^2 Lambda^{sigma+1} / (4(sigma+1))
///   + 16^{sigma-1}/15^sigma Lambda^sigma ln(4 Lambda r_hat^2),
/// zero at or below 15/(4 r_1^2).  Requires sigma >= 3/2 and a valid sequence.
BoundReport riesz_upper_bound(const UrchinSequence& seq, double sigma, double lambda);

/// Constructive lower bound: disjoint squares of side l_n = r_n / 2^{n+1}
/// packed in a radial row along each sector bisector of the annulus
/// (r_{n-1}, r_n); each accepted square contributes the exact square Riesz
/// mean through the variational principle.  square_riesz(side, lambda) must
/// return the exact R_sigma of the Dirichlet square of that side.
BoundReport riesz_lower_bound(const UrchinSequence& seq, double sigma, double lambda,
                              const std::function<double(double, double)>& square_riesz);

/// Crude comparison counting bound 50 (1/8 + 8 pi)^2 Lambda r_K^2 with
/// K(Lambda) = max{ n : r_n 2^{-n} > 1/(32 sqrt(Lambda)) }.  Stated for
/// sequences with r_0 > 0 and Lambda > 2^14 / r_0^2; sequences with r_0 = 0
/// are evaluated with r_1 as base and flagged.
BoundReport vdb_counting_bound(const UrchinSequence& seq, double lambda);

/// Bound with the growth order made explicit for the three model sequences:
/// linear -> Lambda^{sigma+1} (ln Lambda)^2, geometric(delta) ->
/// Lambda^{sigma+1/(1-delta)}, exp_over_sqrt -> 2^{2 Lambda} Lambda^sigma.
/// For sigma >= 3/2 the value is the two-term upper bound; for sigma < 3/2 it
/// is assembled numerically by converting the sigma = 3/2 bound to a counting
/// bound and lifting back to order sigma.
BoundReport order_bound(const UrchinSequence& seq, double sigma, double lambda);

}  // namespace specbound::urchin
