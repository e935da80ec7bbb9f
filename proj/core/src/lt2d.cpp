#include "specbound/lt2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specbound/quadrature.hpp"
#include "specbound/specfun.hpp"

namespace specbound::lt2d {

namespace {

constexpr double kPi = std::numbers::pi;
const double kTwoLn3 = 2.0 * std::log(3.0);

using specfun::gamma_fn;
using specfun::lcl_value;

double section_integral(const Section& s, const std::function<double(double)>& f,
                        double quad_tol) {
    return quad::integrate(f, s.a, s.b, quad_tol, 0.0, s.kinks).value;
}

}  // namespace

SectionStats section_stats(const Section& s, double quad_tol) {
    if (!(s.b > s.a)) throw std::invalid_argument("section_stats: empty interval");
    SectionStats st;
    st.B = section_integral(s, s.trace, quad_tol);
    if (!std::isfinite(st.B)) throw std::domain_error("section_stats: Int V diverges");
    st.A = (s.b - s.a) * st.B;
    st.in_kappa = st.A > kTwoLn3;
    return st;
}

BoundReport sectioned_lt_bound(const SectionedPotential& sd, double sigma,
                               double quad_tol, double outer_radius,
                               bool outer_radius_covers_kappa) {
    BoundReport rep;
    rep.bound_name = "sectioned_lt";
    if (sigma < 1.5) rep.flag("sigma below 3/2");
    if (sd.dim < 2) throw std::domain_error("sectioned_lt_bound: requires dim >= 2");
    if (!outer_radius_covers_kappa)
        rep.flags.push_back("outer integral truncated at user radius");

    const int d = sd.dim;
    const double inner_exp = sigma + 0.5 * d;
    const double rem_exp = sigma + 0.5 * (d - 1);

    long binding_sections = 0;
    // Per-x' contributions to the main term and the remainder term.
    auto per_section_pair = [&](double xp, double& main_out, double& rem_out) {
        main_out = 0.0;
        rem_out = 0.0;
        for (const Section& s : sd.sectioner(xp)) {
            SectionStats st = section_stats(s, quad_tol);
            if (!st.in_kappa) continue;
            ++binding_sections;
            auto vpow = [&](double t) { return std::pow(s.trace(t), inner_exp); };
            main_out += section_integral(s, vpow, quad_tol);
            rem_out += std::pow(2.0 * st.B * st.B / std::expm1(st.A), rem_exp);
        }
    };

    double main_integral = 0.0, remainder_integral = 0.0;
    if (d == 2) {
        auto main_f = [&](double xp) {
            double m, r;
            per_section_pair(xp, m, r);
            return m;
        };
        auto rem_f = [&](double xp) {
            double m, r;
            per_section_pair(xp, m, r);
            return r;
        };
        main_integral =
            quad::integrate(main_f, -outer_radius, outer_radius, quad_tol, 0.0).value;
        remainder_integral =
            quad::integrate(rem_f, -outer_radius, outer_radius, quad_tol, 0.0).value;
    } else {
        // radial sections: integrate with the surface factor of S^{d-2}
        const double surface =
            2.0 * std::pow(kPi, 0.5 * (d - 1)) / gamma_fn(0.5 * (d - 1));
        auto main_f = [&](double r) {
            double m, rm;
            per_section_pair(r, m, rm);
            return m * std::pow(r, d - 2.0);
        };
        auto rem_f = [&](double r) {
            double m, rm;
            per_section_pair(r, m, rm);
            return rm * std::pow(r, d - 2.0);
        };
        main_integral =
            surface * quad::integrate(main_f, 0.0, outer_radius, quad_tol, 0.0).value;
        remainder_integral =
            surface * quad::integrate(rem_f, 0.0, outer_radius, quad_tol, 0.0).value;
    }

    const double main_term = lcl_value(sigma, d) * main_integral;
    const double remainder = lcl_value(sigma, d - 1) * remainder_integral;
    rep.value = main_term - remainder;
    rep.details["main_term"] = main_term;
    rep.details["remainder"] = remainder;
    rep.details["outer_radius"] = outer_radius;
    rep.details["binding_section_evals"] = static_cast<double>(binding_sections);
    return rep;
}

double horn_power_cutoff(double alpha, double lambda) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("horn_power_cutoff: requires 0 < alpha < 1");
    return std::pow(2.0 * lambda / ((1.0 - alpha) * std::log(3.0)),
                    1.0 / (2.0 - 2.0 * alpha));
}

BoundReport horn_power_bound(double alpha, double sigma, double lambda) {
    BoundReport rep;
    rep.bound_name = "horn_power_potential";
    if (!(alpha > 0.0) || !(alpha < 0.4)) rep.flag("alpha outside (0, 2/5)");
    if (sigma < 1.5) rep.flag("sigma below 3/2");
    if (alpha > 0.0 && alpha < 1.0 && !(sigma < (1.0 - alpha) / alpha))
        rep.flag("sigma must stay below (1-alpha)/alpha for integrability");

    const double p = alpha * (sigma + 1.0);
    rep.details["growth_exponent"] = (sigma + 1.0) / (1.0 - alpha);
    if (p >= 1.0 || !(lambda > 0.0)) {
        rep.value = std::numeric_limits<double>::quiet_NaN();
        return rep;
    }
    rep.details["x_alpha"] = horn_power_cutoff(alpha, lambda);
    const double coef = lcl_value(sigma, 2) * 4.0 / (2.0 * alpha * (sigma + 1.0) * (1.0 - p)) *
                        std::pow(2.0 / ((1.0 - alpha) * std::log(3.0)), p / (1.0 - alpha));
    rep.value = coef * std::pow(lambda, (sigma + 1.0) / (1.0 - alpha));
    rep.details["coefficient"] = coef;
    return rep;
}

double horn_power_bound_by_quadrature(double alpha, double sigma, double lambda,
                                      double quad_tol) {
    const double p = alpha * (sigma + 1.0);
    if (p >= 1.0) throw std::domain_error("horn_power_bound_by_quadrature: divergent");
    const double xa = horn_power_cutoff(alpha, lambda);
    auto outer = [&](double x) {
        if (x <= 0.0) return 0.0;
        auto inner = [&](double y) { return (y <= 0.0) ? 0.0 : std::pow(y, -p); };
        const double iy = quad::integrate(inner, 0.0, 1.0 / x, quad_tol * 1e-2, 0.0).value;
        return std::pow(x, p) * iy;
    };
    const double ix = quad::integrate(outer, 0.0, xa, quad_tol, 0.0).value;
    return 4.0 * lcl_value(sigma, 2) * ix * std::pow(lambda, sigma + 1.0);
}

double horn_power_unrestricted_integral(double alpha, double sigma, double lambda,
                                        double truncation, double quad_tol) {
    const double p = alpha * (sigma + 1.0);
    if (p >= 1.0) throw std::domain_error("horn_power_unrestricted_integral: inner integral diverges");
    auto outer = [&](double x) {
        if (x <= 0.0) return 0.0;
        auto inner = [&](double y) { return (y <= 0.0) ? 0.0 : std::pow(y, -p); };
        const double iy = quad::integrate(inner, 0.0, 1.0 / x, quad_tol * 1e-2, 0.0).value;
        return std::pow(x, p) * iy;
    };
    return 4.0 * quad::integrate(outer, 0.0, truncation, quad_tol, 0.0).value *
           std::pow(lambda, sigma + 1.0);
}

std::vector<Section> raster_sectioner(const std::function<bool(double, double)>& inside,
                                      const std::function<double(double, double)>& potential,
                                      double xprime, double t_min, double t_max, double h) {
    if (!(h > 0.0)) throw std::domain_error("raster_sectioner: requires h > 0");
    std::vector<Section> sections;
    if (!(t_max > t_min)) return sections;

    const long n = static_cast<long>(std::floor((t_max - t_min) / h));
    long run_start = -1;
    auto close_run = [&](long first, long last) {
        Section s;
        s.a = t_min + first * h - 0.5 * h;
        s.b = t_min + last * h + 0.5 * h;
        std::vector<double> ts, vs;
        ts.reserve(last - first + 3);
        ts.push_back(s.a);
        vs.push_back(potential(xprime, t_min + first * h));
        for (long i = first; i <= last; ++i) {
            ts.push_back(t_min + i * h);
            vs.push_back(potential(xprime, t_min + i * h));
        }
        ts.push_back(s.b);
        vs.push_back(potential(xprime, t_min + last * h));
        s.kinks = ts;
        s.trace = [ts, vs](double t) {
            if (t <= ts.front()) return vs.front();
            if (t >= ts.back()) return vs.back();
            auto it = std::upper_bound(ts.begin(), ts.end(), t);
            const size_t i = static_cast<size_t>(it - ts.begin()) - 1;
            const double w = (t - ts[i]) / (ts[i + 1] - ts[i]);
            return vs[i] + w * (vs[i + 1] - vs[i]);
        };
        sections.push_back(std::move(s));
    };

    for (long i = 0; i <= n; ++i) {
        const double t = t_min + i * h;
        if (inside(xprime, t)) {
            if (run_start < 0) run_start = i;
        } else if (run_start >= 0) {
            close_run(run_start, i - 1);
            run_start = -1;
        }
    }
    if (run_start >= 0) close_run(run_start, n);
    return sections;
}

}  // namespace specbound::lt2d
