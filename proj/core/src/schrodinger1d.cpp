#include "specbound/schrodinger1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "specbound/quadrature.hpp"
#include "specbound/specfun.hpp"

namespace specbound::schrodinger1d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRelTol = 1e-12;
constexpr double kAbsTol = 1e-14;

struct State {
    double u, du, w;  // w accumulates Int u^2
};

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;

// Integrates y' = f(t, y) for the shooting system over [t0, t1] (t1 may be
// below t0), recording u at accepted steps for node counting.
template <typename Rhs>
State integrate_segment(const Rhs& f, State y, double t0, double t1, double h_max,
                        std::vector<double>* u_trace) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    if (span == 0.0) return y;

    double t = t0;
    double h = std::min(h_max, span);

    auto rhs = [&](double tt, const State& s) {
        State d;
        f(tt, s, d);
        return d;
    };

    State k1 = rhs(t, y);
    int guard = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++guard > 2000000)
            throw std::runtime_error("schrodinger1d: integrator exceeded step budget");
        h = std::min(h, std::fabs(t1 - t));
        const double hs = dir * h;

        auto axpy = [&](std::initializer_list<std::pair<double, const State*>> terms) {
            State s = y;
            for (auto& [c, d] : terms) {
                s.u += hs * c * d->u;
                s.du += hs * c * d->du;
                s.w += hs * c * d->w;
            }
            return s;
        };

        State k2 = rhs(t + kC2 * hs, axpy({{kA21, &k1}}));
        State k3 = rhs(t + kC3 * hs, axpy({{kA31, &k1}, {kA32, &k2}}));
        State k4 = rhs(t + kC4 * hs, axpy({{kA41, &k1}, {kA42, &k2}, {kA43, &k3}}));
        State k5 = rhs(t + kC5 * hs, axpy({{kA51, &k1}, {kA52, &k2}, {kA53, &k3}, {kA54, &k4}}));
        State k6 = rhs(t + hs, axpy({{kA61, &k1}, {kA62, &k2}, {kA63, &k3}, {kA64, &k4}, {kA65, &k5}}));
        State y5 = axpy({{kB1, &k1}, {kB3, &k3}, {kB4, &k4}, {kB5, &k5}, {kB6, &k6}});
        State k7 = rhs(t + hs, y5);

        const double scale_u = kAbsTol + kRelTol * std::max(std::fabs(y.u), std::fabs(y5.u));
        const double scale_du = kAbsTol + kRelTol * std::max(std::fabs(y.du), std::fabs(y5.du));
        const double err_u = hs * (kE1 * k1.u + kE3 * k3.u + kE4 * k4.u + kE5 * k5.u +
                                   kE6 * k6.u + kE7 * k7.u);
        const double err_du = hs * (kE1 * k1.du + kE3 * k3.du + kE4 * k4.du + kE5 * k5.du +
                                    kE6 * k6.du + kE7 * k7.du);
        const double err = std::max(std::fabs(err_u) / scale_u, std::fabs(err_du) / scale_du);

        if (err <= 1.0) {
            t += hs;
            y = y5;
            k1 = k7;  // FSAL
            if (u_trace) u_trace->push_back(y.u);
        }
        double factor = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
        factor = std::clamp(factor, 0.2, 5.0);
        h = std::min(h * factor, h_max);
        if (h < span * 1e-15)
            throw std::runtime_error("schrodinger1d: integrator step underflow");
    }
    return y;
}

int count_sign_changes(const std::vector<double>& trace) {
    int count = 0;
    int prev = 0;
    for (size_t i = 0; i + 1 < trace.size(); ++i) {  // last entry is t = l (or 0)
        const double u = trace[i];
        if (u == 0.0) continue;
        const int s = u > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

ShotResult run_shoot(const Potential1D& pot, double nu, double u0, double du0, bool reverse) {
    if (!(nu > 0.0)) throw std::domain_error("shoot: requires nu > 0");
    const double l = pot.length;
    const double vmax = pot.max_value();
    const double h_max = std::min(l / 64.0, kPi / (4.0 * std::sqrt(std::max(vmax, 1.0))));

    std::vector<double> cuts{0.0, l};
    for (double c : pot.kinks)
        if (c > 0.0 && c < l) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Stage evaluations are clamped to the open segment so that a stage
    // landing exactly on a kink reads the side being integrated.
    auto segment_rhs = [&](double seg_lo, double seg_hi) {
        const double nudge = 1e-12 * (seg_hi - seg_lo);
        return [&, seg_lo, seg_hi, nudge](double t, const State& s, State& d) {
            const double tc = std::clamp(t, seg_lo + nudge, seg_hi - nudge);
            d.u = s.du;
            d.du = (nu - pot.eval(tc)) * s.u;
            d.w = s.u * s.u;
        };
    };

    State y{u0, du0, 0.0};
    std::vector<double> trace;
    trace.reserve(256);
    if (!reverse) {
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            y = integrate_segment(segment_rhs(cuts[i], cuts[i + 1]), y, cuts[i], cuts[i + 1],
                                  h_max, &trace);
    } else {
        for (size_t i = cuts.size(); i-- > 1;)
            y = integrate_segment(segment_rhs(cuts[i - 1], cuts[i]), y, cuts[i], cuts[i - 1],
                                  h_max, &trace);
    }

    ShotResult r;
    r.u_end = y.u;
    r.du_end = y.du;
    r.norm_sq = std::fabs(y.w);
    r.node_count = count_sign_changes(trace);
    return r;
}

// Boundary mismatch whose zeros are the eigenvalues.
double mismatch_forward(const Potential1D& pot, double nu, BoundaryAngles bc, int* nodes,
                        double* norm_sq = nullptr) {
    ShotResult s = shoot(pot, nu, bc.alpha);
    if (nodes) *nodes = s.node_count;
    if (norm_sq) *norm_sq = s.norm_sq;
    return s.du_end * std::sin(bc.beta) + s.u_end * std::cos(bc.beta);
}

double mismatch_reverse(const Potential1D& pot, double nu, BoundaryAngles bc, int* nodes,
                        double* norm_sq = nullptr) {
    ShotResult s = shoot_reverse(pot, nu, bc.beta);
    if (nodes) *nodes = s.node_count;
    if (norm_sq) *norm_sq = s.norm_sq;
    return s.du_end * std::sin(bc.alpha) - s.u_end * std::cos(bc.alpha);
}

struct Mismatch {
    std::function<double(double, int*)> eval;  // nu, out nodes -> mismatch
};

// Locates all staircase transitions of the node count in (lo, hi); the node
// count is a non-increasing step function of nu.
void find_transitions(const Mismatch& m, double lo, int n_lo, double hi, int n_hi,
                      std::vector<double>& out) {
    if (n_lo == n_hi) return;
    if (hi - lo < 1e-13 * std::max(1.0, hi)) {
        for (int i = 0; i < n_lo - n_hi; ++i) out.push_back(0.5 * (lo + hi));
        return;
    }
    const double mid = 0.5 * (lo + hi);
    int n_mid = 0;
    m.eval(mid, &n_mid);
    find_transitions(m, lo, n_lo, mid, n_mid, out);
    find_transitions(m, mid, n_mid, hi, n_hi, out);
}

double refine_root(const Mismatch& m, double lo, double f_lo, double hi, double f_hi) {
    // Bisection with a secant polish; the mismatch is smooth in nu.
    for (int it = 0; it < 200; ++it) {
        double mid;
        if (std::fabs(f_hi - f_lo) > 0.0) {
            mid = hi - f_hi * (hi - lo) / (f_hi - f_lo);  // secant proposal
            const double margin = 0.1 * (hi - lo);
            if (!(mid > lo + margin) || !(mid < hi - margin)) mid = 0.5 * (lo + hi);
        } else {
            mid = 0.5 * (lo + hi);
        }
        const double f_mid = m.eval(mid, nullptr);
        if (f_mid == 0.0) return mid;
        if ((f_lo < 0.0) != (f_mid < 0.0)) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        if (hi - lo < 1e-14 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

// Shared solver: all mismatch roots in (floor, ceiling), descending.
std::vector<double> solve_spectrum(const Mismatch& m, double floor_nu, double ceiling) {
    std::vector<double> roots;
    int n_lo = 0, n_hi = 0;
    m.eval(floor_nu, &n_lo);
    m.eval(ceiling, &n_hi);

    std::vector<double> trans;
    find_transitions(m, floor_nu, n_lo, ceiling, n_hi, trans);
    std::sort(trans.begin(), trans.end());

    // Candidate brackets: the open intervals between consecutive transitions
    // (at most one eigenvalue each, by node-count uniqueness) plus a thin
    // bracket around every transition (Dirichlet-type roots sit exactly there).
    std::vector<std::pair<double, double>> brackets;
    std::vector<double> pts{floor_nu};
    pts.insert(pts.end(), trans.begin(), trans.end());
    pts.push_back(ceiling);
    const double eps = 1e-9;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double a = pts[i], b = pts[i + 1];
        const double pad = eps * std::max(1.0, b);
        if (b - a > 4.0 * pad) brackets.emplace_back(a + pad, b - pad);
    }
    for (double tmid : trans) {
        const double pad = 2.0 * eps * std::max(1.0, tmid);
        brackets.emplace_back(std::max(floor_nu, tmid - pad), std::min(ceiling, tmid + pad));
    }

    for (auto [a, b] : brackets) {
        if (!(b > a)) continue;
        const double fa = m.eval(a, nullptr);
        const double fb = m.eval(b, nullptr);
        if (fa == 0.0) {
            roots.push_back(a);
            continue;
        }
        if ((fa < 0.0) == (fb < 0.0)) continue;
        roots.push_back(refine_root(m, a, fa, b, fb));
    }

    std::sort(roots.begin(), roots.end());
    // Merge near-duplicates from overlapping brackets.
    std::vector<double> unique_roots;
    for (double r : roots) {
        if (unique_roots.empty() ||
            r - unique_roots.back() > 1e-8 * std::max(1.0, r))
            unique_roots.push_back(r);
    }
    std::reverse(unique_roots.begin(), unique_roots.end());  // deepest first
    return unique_roots;
}

double spectrum_floor(const Potential1D& pot) {
    return std::max(1e-12, 1e-13 * pot.max_value());
}

void check_angles(BoundaryAngles bc) {
    if (bc.alpha < 0.0 || bc.alpha > 0.5 * kPi || bc.beta < 0.0 || bc.beta > 0.5 * kPi)
        throw std::domain_error("boundary angles must lie in [0, pi/2]");
}

}  // namespace

Potential1D Potential1D::square_well(double depth, double interval_length,
                                     double well_width, double well_center) {
    if (!(depth >= 0.0) || !(interval_length > 0.0) || !(well_width > 0.0))
        throw std::domain_error("square_well: bad parameters");
    const double a = well_center - 0.5 * well_width;
    const double b = well_center + 0.5 * well_width;
    if (a < 0.0 || b > interval_length)
        throw std::domain_error("square_well: well must sit inside (0, l)");
    Potential1D p;
    p.length = interval_length;
    p.eval = [=](double t) { return (t >= a && t <= b) ? depth : 0.0; };
    p.smoothness = Smoothness::piecewise;
    p.kinks = {a, b};
    p.exact_integral = depth * well_width;
    p.exact_power_integral = [=](double q) { return std::pow(depth, q) * well_width; };
    return p;
}

Potential1D Potential1D::gaussian(double amplitude, double interval_length,
                                  double width, double center) {
    if (!(amplitude >= 0.0) || !(interval_length > 0.0) || !(width > 0.0))
        throw std::domain_error("gaussian: bad parameters");
    Potential1D p;
    p.length = interval_length;
    p.eval = [=](double t) {
        const double z = (t - center) / width;
        return amplitude * std::exp(-0.5 * z * z);
    };
    p.smoothness = Smoothness::smooth;
    return p;
}

Potential1D Potential1D::from_samples(std::vector<double> t, std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("from_samples: need matching arrays of length >= 2");
    for (size_t i = 0; i < t.size(); ++i) {
        if (i > 0 && !(t[i] > t[i - 1]))
            throw std::invalid_argument("from_samples: abscissae must be strictly increasing");
        if (v[i] < 0.0) throw std::invalid_argument("from_samples: potential must be >= 0");
    }
    if (t.front() < 0.0) throw std::invalid_argument("from_samples: abscissae must be >= 0");

    Potential1D p;
    p.length = t.back();
    // trapezoid is exact for the piecewise-linear interpolant
    double integral = 0.0;
    for (size_t i = 0; i + 1 < t.size(); ++i)
        integral += 0.5 * (v[i] + v[i + 1]) * (t[i + 1] - t[i]);
    p.exact_integral = integral;
    p.kinks = t;
    p.smoothness = Smoothness::sampled;
    p.eval = [ts = std::move(t), vs = std::move(v)](double x) {
        if (x <= ts.front() || x >= ts.back()) {
            if (x == ts.front()) return vs.front();
            if (x == ts.back()) return vs.back();
            return 0.0;
        }
        const auto it = std::upper_bound(ts.begin(), ts.end(), x);
        const size_t i = static_cast<size_t>(it - ts.begin()) - 1;
        const double w = (x - ts[i]) / (ts[i + 1] - ts[i]);
        return vs[i] + w * (vs[i + 1] - vs[i]);
    };
    return p;
}

double Potential1D::integral() const {
    if (exact_integral) return *exact_integral;
    return quad::integrate(eval, 0.0, length, quadrature_tol, 0.0, kinks).value;
}

double Potential1D::integral_power(double p) const {
    if (p == 1.0) return integral();
    if (exact_power_integral) return exact_power_integral(p);
    auto f = [&](double t) { return std::pow(eval(t), p); };
    return quad::integrate(f, 0.0, length, quadrature_tol, 0.0, kinks).value;
}

double Potential1D::max_value() const {
    double m = 0.0;
    const int n = 4096;
    for (int i = 0; i <= n; ++i) m = std::max(m, eval(length * i / n));
    for (double k : kinks)
        if (k >= 0.0 && k <= length) m = std::max(m, eval(k));
    return m;
}

ShotResult shoot(const Potential1D& pot, double nu, double alpha) {
    return run_shoot(pot, nu, std::sin(alpha), std::cos(alpha), false);
}

ShotResult shoot_reverse(const Potential1D& pot, double nu, double beta) {
    return run_shoot(pot, nu, std::sin(beta), -std::cos(beta), true);
}

NegativeEigenvalues interval_eigenvalues(const Potential1D& pot, BoundaryAngles bc) {
    check_angles(bc);
    Mismatch m{[&](double nu, int* nodes) { return mismatch_forward(pot, nu, bc, nodes); }};
    const double ceiling = pot.max_value() + 1.0;
    NegativeEigenvalues ev;
    ev.nu = solve_spectrum(m, spectrum_floor(pot), ceiling);
    return ev;
}

NegativeEigenvalues line_eigenvalues(const Potential1D& pot) {
    Mismatch m{[&](double mu, int* nodes) {
        const double omega = std::atan(1.0 / std::sqrt(mu));
        return mismatch_forward(pot, mu, {omega, omega}, nodes);
    }};
    const double ceiling = pot.max_value() + 1.0;
    NegativeEigenvalues ev;
    ev.nu = solve_spectrum(m, spectrum_floor(pot), ceiling);
    return ev;
}

double eigenvalue_k(const Potential1D& pot, BoundaryAngles bc, int k, double lo, double hi) {
    check_angles(bc);
    if (k < 1) throw std::invalid_argument("eigenvalue_k: k >= 1");
    Mismatch m{[&](double nu, int* nodes) { return mismatch_forward(pot, nu, bc, nodes); }};
    auto roots = solve_spectrum(m, lo, hi);
    for (double r : roots) {
        int nodes = 0;
        mismatch_forward(pot, r * (1.0 + 1e-9) + 1e-12, bc, &nodes);
        if (nodes == k - 1) return r;
    }
    throw std::runtime_error("eigenvalue_k: requested level not found in window");
}

DerivativePair eigenvalue_derivative_check(const Potential1D& pot, BoundaryAngles bc,
                                           int k, double h_alpha) {
    check_angles(bc);
    if (!(bc.alpha - h_alpha > 0.0) || !(bc.alpha + h_alpha < 0.5 * kPi))
        throw std::domain_error("eigenvalue_derivative_check: stencil leaves (0, pi/2)");
    auto kth = [&](double alpha) {
        auto ev = interval_eigenvalues(pot, {alpha, bc.beta});
        if (static_cast<int>(ev.count()) < k)
            throw std::runtime_error("eigenvalue_derivative_check: level disappeared in stencil");
        return ev.nu[k - 1];
    };
    const double above = kth(bc.alpha + h_alpha);
    const double below = kth(bc.alpha - h_alpha);
    const double center = kth(bc.alpha);

    ShotResult s = shoot(pot, center, bc.alpha);
    DerivativePair out;
    out.fd_value = (above - below) / (2.0 * h_alpha);
    out.norm_value = 1.0 / s.norm_sq;
    return out;
}

GapPair gap_identity_check(const Potential1D& pot, int k, double quad_tol) {
    if (k < 1) throw std::invalid_argument("gap_identity_check: k >= 1");
    auto interval = interval_eigenvalues(pot, {0.0, 0.0});
    auto line = line_eigenvalues(pot);
    if (static_cast<int>(interval.count()) < k || static_cast<int>(line.count()) < k)
        throw std::runtime_error("gap_identity_check: level k absent on interval or line");
    const double lambda_k = interval.nu[k - 1];
    const double mu_k = line.nu[k - 1];
    const double omega_k = std::atan(1.0 / std::sqrt(mu_k));

    const double lo = lambda_k * (1.0 - 1e-6);
    const double hi = mu_k * (1.0 + 1e-6);

    auto forward_norm_inv = [&](double alpha) {
        const double nu = eigenvalue_k(pot, {alpha, omega_k}, k, lo, hi);
        ShotResult s = shoot(pot, nu, alpha);
        return 1.0 / s.norm_sq;
    };
    auto reverse_norm_inv = [&](double beta) {
        Mismatch m{[&](double nu, int* nodes) {
            return mismatch_reverse(pot, nu, {0.0, beta}, nodes);
        }};
        auto roots = solve_spectrum(m, lo, hi);
        for (double r : roots) {
            int nodes = 0;
            mismatch_reverse(pot, r * (1.0 + 1e-9) + 1e-12, {0.0, beta}, &nodes);
            if (nodes == k - 1) {
                ShotResult s = shoot_reverse(pot, r, beta);
                return 1.0 / s.norm_sq;
            }
        }
        throw std::runtime_error("gap_identity_check: reverse level not found");
    };

    const double scale = std::max(mu_k - lambda_k, 1e-6 * mu_k);
    const double abs_tol = quad_tol * scale;
    const double i1 =
        quad::integrate(forward_norm_inv, 0.0, omega_k, quad_tol, abs_tol).value;
    const double i2 =
        quad::integrate(reverse_norm_inv, 0.0, omega_k, quad_tol, abs_tol).value;

    GapPair g;
    g.direct = mu_k - lambda_k;
    g.integral = i1 + i2;
    g.mu_k = mu_k;
    g.lambda_k = lambda_k;
    g.omega_k = omega_k;
    return g;
}

BoundReport ground_state_gap_bound(const Potential1D& pot, std::optional<double> mu1) {
    BoundReport rep;
    rep.bound_name = "ground_state_gap";
    const double intv = pot.integral();
    const double a = pot.length * intv;
    rep.details["A"] = a;
    rep.details["zero_criterion"] = (a <= 2.0 * std::log(3.0)) ? 1.0 : 0.0;
    rep.value = (intv > 0.0) ? 2.0 * intv * intv / std::expm1(a) : 0.0;
    if (mu1) {
        rep.details["mu1"] = *mu1;
        rep.details["intermediate_gap_bound"] =
            8.0 * *mu1 / std::expm1(2.0 * pot.length * std::sqrt(*mu1));
    }
    return rep;
}

BoundReport lt_bound_with_remainder(const Potential1D& pot, double sigma) {
    BoundReport rep;
    rep.bound_name = "interval_lt_with_remainder";
    if (sigma < 1.5) rep.flag("sigma below 3/2");
    const double intv = pot.integral();
    const double a = pot.length * intv;
    rep.details["A"] = a;
    if (!std::isfinite(a)) throw std::domain_error("lt_bound_with_remainder: Int V diverges");
    if (a <= 2.0 * std::log(3.0)) {
        rep.value = 0.0;
        return rep;
    }
    const double plain = specfun::lcl_value(sigma, 1) * pot.integral_power(sigma + 0.5);
    if (!std::isfinite(plain))
        throw std::domain_error("lt_bound_with_remainder: Int V^{sigma+1/2} diverges");
    const double remainder = std::pow(2.0 * intv * intv / std::expm1(a), sigma);
    rep.details["plain_lt"] = plain;
    rep.details["remainder"] = remainder;
    rep.value = std::max(0.0, plain - remainder);
    return rep;
}

double riesz_mean_of(const NegativeEigenvalues& ev, double sigma) {
    if (sigma < 0.0) throw std::domain_error("riesz_mean_of: requires sigma >= 0");
    double s = 0.0;
    for (double nu : ev.nu) s += (sigma == 0.0) ? 1.0 : std::pow(nu, sigma);
    return s;
}

}  // namespace specbound::schrodinger1d
