#include "specbound/urchin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specbound/riesz.hpp"

namespace specbound::urchin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGeneratedHorizon = 10000;

double pow2(double e) { return std::pow(2.0, e); }

// r_n^2 evaluated per kind; keeps powers of two exact where possible.
double radius_squared(const UrchinSequence& seq, int n) {
    switch (seq.kind) {
        case UrchinSequence::Kind::linear: return static_cast<double>(n) * n;
        case UrchinSequence::Kind::geometric: return pow2(2.0 * seq.delta * n);
        case UrchinSequence::Kind::exp_over_sqrt: return pow2(2.0 * n) / n;
        default: {
            const double r = seq.radius(n);
            return r * r;
        }
    }
}

// 2^{2n} / r_n^2 in an overflow-safe form.
double mode_over_radius_sq(const UrchinSequence& seq, int n) {
    switch (seq.kind) {
        case UrchinSequence::Kind::geometric:
            return pow2(2.0 * n * (1.0 - seq.delta));
        case UrchinSequence::Kind::exp_over_sqrt: return static_cast<double>(n);
        default: return pow2(2.0 * n) / radius_squared(seq, n);
    }
}

// Threshold sequence t_n = 2^{2n}/r_n^2 - 1/(4 r_n^2); increasing under the
// doubling condition, and t_1 = 15/(4 r_1^2).
double threshold(const UrchinSequence& seq, int n) {
    return mode_over_radius_sq(seq, n) * (1.0 - 0.25 * pow2(-2.0 * n));
}

double positive_part_power(double gap, double gamma) {
    if (gap <= 0.0) return 0.0;
    if (gamma == 0.0) return 1.0;
    return std::pow(gap, gamma);
}

}  // namespace

UrchinSequence UrchinSequence::linear() { return {Kind::linear, 0.0, {}}; }

UrchinSequence UrchinSequence::geometric(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw std::domain_error("urchin: geometric kind requires 0 < delta < 1");
    return {Kind::geometric, delta, {}};
}

UrchinSequence UrchinSequence::exp_over_sqrt() { return {Kind::exp_over_sqrt, 0.0, {}}; }

UrchinSequence UrchinSequence::explicit_list(std::vector<double> radii) {
    if (radii.empty()) throw std::invalid_argument("urchin: explicit list must be non-empty");
    return {Kind::explicit_list, 0.0, std::move(radii)};
}

double UrchinSequence::radius(int n) const {
    if (n < 0) throw std::invalid_argument("urchin: radius index must be >= 0");
    if (n == 0) return 0.0;
    switch (kind) {
        case Kind::linear: return static_cast<double>(n);
        case Kind::geometric: return pow2(delta * n);
        case Kind::exp_over_sqrt: return pow2(n) / std::sqrt(static_cast<double>(n));
        case Kind::explicit_list:
            if (n > static_cast<int>(radii.size()))
                throw std::out_of_range("urchin: explicit sequence exhausted");
            return radii[n - 1];
    }
    throw std::logic_error("urchin: unknown kind");
}

int UrchinSequence::horizon() const {
    if (kind == Kind::explicit_list) return static_cast<int>(radii.size());
    return kGeneratedHorizon;
}

SequenceValidation validate(const UrchinSequence& seq) {
    SequenceValidation v;
    // The three model kinds satisfy all conditions analytically: strict growth
    // and r_{n+1} <= 2 r_n by inspection of the ratios, and r_n 2^{-n} equal to
    // n 2^{-n}, 2^{(delta-1) n}, 1/sqrt(n) respectively, all null sequences.
    if (seq.kind != UrchinSequence::Kind::explicit_list) {
        v.horizon_used = 0;
        return v;
    }

    const double r1 = seq.radius(1);
    if (!(r1 > 0.0)) {
        v.increasing = false;
        v.flags.push_back("r_1 must be positive");
        return v;
    }
    const double decay_target = 1e-6 * r1;
    double prev = 0.0;
    int n;
    for (n = 1; n <= seq.horizon(); ++n) {
        const double r = seq.radius(n);
        if (r <= prev) {
            v.increasing = false;
            v.flags.push_back("sequence not strictly increasing at n = " + std::to_string(n));
            break;
        }
        if (n >= 2 && r > 2.0 * prev) {
            v.doubling_ok = false;
            v.flags.push_back("r_{n+1} <= 2 r_n fails at n = " + std::to_string(n - 1));
        }
        prev = r;
        if (r * pow2(-static_cast<double>(n)) < decay_target) break;
    }
    v.horizon_used = std::min(n, seq.horizon());
    return v;
}

std::optional<UrchinIndex> index_for(const UrchinSequence& seq, double lambda) {
    if (lambda <= threshold(seq, 1)) return std::nullopt;
    int n = 1;
    while (n < seq.horizon() && lambda > threshold(seq, n + 1)) ++n;
    if (n >= seq.horizon() && seq.kind != UrchinSequence::Kind::explicit_list)
        throw std::runtime_error("urchin: index scan exceeded horizon");
    return UrchinIndex{lambda, n, seq.radius(n)};
}

double section_trace(const UrchinSequence& seq, double r, double lambda, double gamma) {
    if (!(r > 0.0)) throw std::domain_error("urchin::section_trace: requires r > 0");
    if (gamma < 0.0) throw std::domain_error("urchin::section_trace: requires gamma >= 0");

    int n0 = 1;
    while (r > seq.radius(n0)) {
        ++n0;
        if (n0 > seq.horizon())
            throw std::out_of_range("urchin::section_trace: radius beyond last slit generation");
    }
    const double level = lambda + 1.0 / (4.0 * r * r);
    const double mode = pow2(2.0 * n0) / (r * r);
    double sum = 0.0;
    for (double j = 1.0; mode * j * j < level; j += 1.0)
        sum += positive_part_power(level - mode * j * j, gamma);
    return pow2(n0 + 1.0) * sum;
}

BoundReport riesz_upper_bound(const UrchinSequence& seq, double sigma, double lambda) {
    BoundReport rep;
    rep.bound_name = "urchin_riesz_upper";
    if (sigma < 1.5) rep.flag("sigma below 3/2");
    const auto validation = validate(seq);
    if (!validation.ok())
        for (const auto& f : validation.flags) rep.flag(f);

    const auto idx = index_for(seq, lambda);
    rep.details["threshold"] = threshold(seq, 1);
    if (!idx) {
        rep.value = 0.0;
        rep.details["spectrum_empty"] = 1.0;
        return rep;
    }
    rep.details["n_hat"] = idx->n_hat;
    rep.details["r_hat"] = idx->r_hat;
    const double r2 = radius_squared(seq, idx->n_hat);
    const double main = r2 * std::pow(lambda, sigma + 1.0) / (4.0 * (sigma + 1.0));
    const double log_term = std::pow(16.0, sigma - 1.0) / std::pow(15.0, sigma) *
                            std::pow(lambda, sigma) * std::log(4.0 * lambda * r2);
    rep.value = main + log_term;
    rep.details["main_term"] = main;
    rep.details["log_term"] = log_term;
    return rep;
}

BoundReport riesz_lower_bound(const UrchinSequence& seq, double sigma, double lambda,
                              const std::function<double(double, double)>& square_riesz) {
    if (sigma < 0.0) throw std::domain_error("urchin::riesz_lower_bound: requires sigma >= 0");
    BoundReport rep;
    rep.bound_name = "urchin_riesz_lower";
    rep.value = 0.0;
    if (!(lambda > 0.0)) return rep;

    // Largest generation whose packing squares still admit a state below
    // Lambda: 2 pi^2 / l_n^2 < Lambda with l_n = r_n / 2^{n+1}.
    int n_star = 0;
    for (int n = 1; n <= seq.horizon(); ++n) {
        const double r = seq.radius(n);
        if (!std::isfinite(r)) break;
        const double l = r / pow2(n + 1.0);
        if (2.0 * kPi * kPi / (l * l) < lambda) n_star = n;
        if (r * pow2(-static_cast<double>(n)) <
            1e-9 * std::max(1.0, kPi / std::sqrt(lambda)))
            break;  // l_n has decayed; no further generation can qualify
    }
    if (n_star == 0) return rep;

    // Separation condition r_{n-1} < (1 - 2^{-n}) r_n, required from the
    // starting generation onward.
    int n_first = -1;
    for (int n = n_star; n >= 1; --n) {
        if (seq.radius(n - 1) < (1.0 - pow2(-static_cast<double>(n))) * seq.radius(n))
            n_first = n;
        else
            break;
    }
    rep.details["n_star"] = n_star;
    if (n_first < 0) {
        rep.details["packing_vacuous"] = 1.0;
        return rep;
    }
    rep.details["n_first"] = n_first;

    double total = 0.0;
    double squares_total = 0.0;
    for (int n = n_first; n <= n_star; ++n) {
        const double r_in = seq.radius(n - 1);
        const double r_out = seq.radius(n);
        const double l = r_out / pow2(n + 1.0);
        const double half_angle = kPi / pow2(n + 1.0);  // sector width pi / 2^n

        // Squares sit at radial offsets a_i = r_{n-1} + i l, aligned with the
        // sector bisector.  Acceptance: the inner corners stay strictly inside
        // the sector (their angular offset atan(l / (2a)) < half_angle) and
        // the outer corners stay within radius r_out, which also keeps the
        // square clear of the generation-n slit on the bisector.
        const double tan_half = std::tan(half_angle);
        double a_min = l / (2.0 * tan_half);  // angular feasibility: a > a_min
        const double reach = std::sqrt(r_out * r_out - 0.25 * l * l) - l;  // a <= reach
        long i_lo = 0;
        if (a_min > r_in) i_lo = static_cast<long>(std::ceil((a_min - r_in) / l));
        // strict inequality at the angular limit
        while (std::atan2(0.5 * l, r_in + i_lo * l) >= half_angle) ++i_lo;
        const long i_hi = static_cast<long>(std::floor((reach - r_in) / l));
        const long count = std::max<long>(0, i_hi - i_lo + 1);
        if (count == 0) continue;

        const double per_square = square_riesz(l, lambda);
        total += pow2(n + 1.0) * static_cast<double>(count) * per_square;
        squares_total += pow2(n + 1.0) * static_cast<double>(count);
        rep.details["tau_" + std::to_string(n)] = static_cast<double>(count);
    }
    rep.value = total;
    rep.details["squares_packed"] = squares_total;
    return rep;
}

BoundReport vdb_counting_bound(const UrchinSequence& seq, double lambda) {
    BoundReport rep;
    rep.bound_name = "urchin_vdb_counting";
    const double r0 = seq.radius(0);
    double base = r0;
    if (!(r0 > 0.0)) {
        base = seq.radius(1);
        rep.flag("r_0 = 0: using r_1 as base radius");
    }
    if (!(lambda > std::pow(2.0, 14) / (base * base)))
        rep.flag("lambda below the stated validity range 2^14 / r_0^2");

    const double cutoff = 1.0 / (32.0 * std::sqrt(lambda));
    int k = 0;
    for (int n = 1; n <= seq.horizon(); ++n) {
        const double decay = seq.radius(n) * pow2(-static_cast<double>(n));
        if (decay > cutoff) k = n;
        if (decay < 1e-3 * cutoff) break;
    }
    if (k == 0) {
        rep.value = 0.0;
        rep.details["spectrum_empty"] = 1.0;
        return rep;
    }
    const double prefactor = 50.0 * std::pow(0.125 + 8.0 * kPi, 2.0);
    rep.details["K"] = k;
    rep.details["r_K"] = seq.radius(k);
    rep.details["prefactor"] = prefactor;
    rep.value = prefactor * lambda * seq.radius(k) * seq.radius(k);
    return rep;
}

BoundReport order_bound(const UrchinSequence& seq, double sigma, double lambda) {
    if (seq.kind == UrchinSequence::Kind::explicit_list)
        throw std::domain_error("urchin::order_bound: model sequences only");
    if (sigma < 0.0) throw std::domain_error("urchin::order_bound: requires sigma >= 0");

    BoundReport rep;
    rep.bound_name = "urchin_order";
    rep.details["threshold"] = threshold(seq, 1);
    switch (seq.kind) {
        case UrchinSequence::Kind::linear:
            rep.details["order_power"] = sigma + 1.0;
            rep.details["order_log_squared"] = 1.0;
            break;
        case UrchinSequence::Kind::geometric:
            rep.details["order_power"] = sigma + 1.0 / (1.0 - seq.delta);
            rep.details["order_log_squared"] = 0.0;
            break;
        case UrchinSequence::Kind::exp_over_sqrt:
            rep.details["order_power"] = sigma;  // times 2^{2 Lambda}
            rep.details["order_log_squared"] = 0.0;
            rep.details["order_exponential"] = 1.0;
            break;
        default: break;
    }

    if (lambda <= threshold(seq, 1)) {
        rep.value = 0.0;
        return rep;
    }
    if (sigma >= 1.5) {
        BoundReport upper = riesz_upper_bound(seq, sigma, lambda);
        rep.value = upper.value;
        for (const auto& [k, v] : upper.details) rep.details[k] = v;
        return rep;
    }

    // sigma < 3/2: convert the sigma = 3/2 bound to a counting bound and lift
    // back up to order sigma.
    auto counting = [&](double lam) {
        if (lam <= threshold(seq, 1)) return 0.0;
        auto r32 = [&](double l2) { return riesz_upper_bound(seq, 1.5, l2).value; };
        static const std::vector<double> taus = riesz::default_tau_grid();
        return riesz::counting_from_riesz(r32, lam, 1.5, taus);
    };
    if (sigma == 0.0) {
        rep.value = counting(lambda);
        return rep;
    }
    rep.value = riesz::aizenman_lieb_lift(counting, lambda, sigma, 0.0,
                                          1e-8 * counting(lambda) + 1e-300);
    return rep;
}

}  // namespace specbound::urchin
