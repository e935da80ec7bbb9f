#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "specbound/riesz.hpp"
#include "specbound/specfun.hpp"
#include <algorithm>
#include <initializer_list>
#include <stdexcept>

TEST_SUITE_BEGIN("riesz");

using namespace specbound;
using namespace specbound::riesz;

namespace {
constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;

EigenvalueSpectrum unit_square_spectrum(double lambda_max) {
    EigenvalueSpectrum s;
    for (int j = 1; j * j * kPi2 * 2.0 <= lambda_max * 2.0; ++j)
        for (int k = 1; k <= j + 40; ++k) {
            const double e = kPi2 * (j * j + k * k);
            if (e <= lambda_max) s.values.push_back(e);
        }
    std::sort(s.values.begin(), s.values.end());
    return s;
}

// brute force sum_j (1 - j^2/A^2)_+^gamma
double lattice_sum(double A, double gamma) {
    double s = 0.0;
    for (double j = 1.0; j < A; j += 1.0) s += std::pow(1.0 - j * j / (A * A), gamma);
    return s;
}
}  // namespace

TEST_CASE("riesz_mean on the exact unit-square spectrum") {
    auto spec = unit_square_spectrum(200.0);
    CHECK(riesz_mean(spec, 50.0, 0.0) == 3.0);  // 2pi^2, 5pi^2, 5pi^2
    CHECK(riesz_mean(spec, 50.0, 1.0) ==
          doctest::Approx(150.0 - 12.0 * kPi2).epsilon(1e-13));
    CHECK(riesz_mean(spec, 10.0, 1.5) == 0.0);  // below the ground state
    CHECK(riesz_mean(spec, 2.0 * kPi2, 0.0) == 0.0);  // strict gap convention
    CHECK_THROWS_AS(riesz_mean(spec, 50.0, -1.0), std::domain_error);
}

TEST_CASE("riesz_mean is non-decreasing and convex in lambda for sigma >= 1") {
    auto spec = unit_square_spectrum(400.0);
    for (double sigma : {1.0, 1.5, 2.0}) {
        std::vector<double> v;
        for (double lam = 5.0; lam <= 320.0; lam += 5.0)
            v.push_back(riesz_mean(spec, lam, sigma));
        for (size_t i = 1; i < v.size(); ++i) CHECK(v[i] >= v[i - 1] - 1e-12);
        for (size_t i = 2; i < v.size(); ++i)
            CHECK(v[i] - v[i - 1] >= v[i - 1] - v[i - 2] - 1e-9 * (1.0 + v[i]));
    }
}

TEST_CASE("interval_trace") {
    CHECK(interval_trace(0.5 * kPi2, 1.0, 1.0) == 0.0);  // below ground state
    CHECK(interval_trace(kPi2, 1.0, 1.0) == 0.0);        // equality -> zero gap
    CHECK(interval_trace(5.0 * kPi2, 1.0, 1.0) ==
          doctest::Approx(5.0 * kPi2).epsilon(1e-13));   // j = 1, 2
    CHECK_THROWS_AS(interval_trace(1.0, -1.0, 1.0), std::domain_error);

    SUBCASE("scaling covariance") {
        // interval_trace(lambda s^2, l/s, gamma) = s^{2 gamma} interval_trace(lambda, l, gamma)
        for (double s : {0.5, 2.0, 3.7})
            for (double gamma : {0.0, 1.0, 2.5}) {
                const double lhs = interval_trace(40.0 * s * s, 1.3 / s, gamma);
                const double rhs = std::pow(s, 2.0 * gamma) * interval_trace(40.0, 1.3, gamma);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
    }
}

TEST_CASE("partition_trace") {
    CHECK(partition_trace(50.0, {{}}, 1.0) == 0.0);
    CHECK(partition_trace(5.0 * kPi2, {{1.0, 1.0}}, 1.0) ==
          doctest::Approx(10.0 * kPi2).epsilon(1e-13));
    CHECK(partition_trace(37.0, {{1.7}}, 2.0) == interval_trace(37.0, 1.7, 2.0));
}

TEST_CASE("lattice_sum_bound dominates the brute-force sum") {
    CHECK(lattice_sum_bound(4.0, 2.0) == doctest::Approx(32.0 / 15.0).epsilon(1e-13));
    CHECK(lattice_sum(4.0, 2.0) == doctest::Approx(418.0 / 256.0));
    CHECK(lattice_sum(4.0, 2.0) < lattice_sum_bound(4.0, 2.0));
    CHECK(lattice_sum(0.5, 1.0) == 0.0);
    CHECK(lattice_sum_bound(0.5, 1.0) > 0.0);
    for (double A : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
        for (double gamma : {0.5, 1.0, 1.5, 2.0, 3.0})
            CHECK(lattice_sum(A, gamma) <= lattice_sum_bound(A, gamma));
}

TEST_CASE("lattice bound composes into the 4/(pi(sigma+1)) step") {
    // 4 Lcl_{sigma,1} * (A/2) B(1/2, sigma+3/2) * Lambda^{sigma+1/2} with
    // A = 4 sqrt(Lambda)/pi collapses to (4/pi) Lambda^{sigma+1} / (sigma+1).
    for (double sigma : {1.5, 2.0}) {
        const double lambda = kPi2;
        const double A = 4.0 * std::sqrt(lambda) / kPi;
        const double lhs = 4.0 * specfun::lcl_value(sigma, 1) *
                           lattice_sum_bound(A, sigma + 0.5) *
                           std::pow(lambda, sigma + 0.5);
        const double rhs = 4.0 / kPi * std::pow(lambda, sigma + 1.0) / (sigma + 1.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("aizenman_lieb_lift reconstructs higher-order means") {
    auto spec = unit_square_spectrum(200.0);
    std::vector<double> brk;
    for (double e : spec.values)
        if (e < 50.0) brk.push_back(50.0 - e);

    auto r0 = [&](double lam) { return riesz_mean(spec, lam, 0.0); };
    auto r1 = [&](double lam) { return riesz_mean(spec, lam, 1.0); };

    const double tol = 1e-8;
    CHECK(aizenman_lieb_lift(r0, 50.0, 1.0, 0.0, tol, brk) ==
          doctest::Approx(riesz_mean(spec, 50.0, 1.0)).epsilon(1e-8));
    CHECK(aizenman_lieb_lift(r1, 50.0, 2.0, 1.0, tol, brk) ==
          doctest::Approx(riesz_mean(spec, 50.0, 2.0)).epsilon(1e-8));
    CHECK(aizenman_lieb_lift(r0, 5.0, 1.5, 0.0, tol) == 0.0);  // below the spectrum
    CHECK_THROWS_AS(aizenman_lieb_lift(r0, 50.0, 1.0, 1.0, tol), std::domain_error);
}

TEST_CASE("counting_from_riesz") {
    auto spec = unit_square_spectrum(4000.0);
    auto grid = default_tau_grid();
    CHECK(grid.size() == 64);
    CHECK(grid.front() == doctest::Approx(1e-2));
    CHECK(grid.back() == doctest::Approx(1e2));

    auto r1 = [&](double lam) { return riesz_mean(spec, lam, 1.0); };
    CHECK(counting_from_riesz(r1, 50.0, 1.0, grid) >= 3.0);  // true count at 50

    auto zero = [](double) { return 0.0; };
    CHECK(counting_from_riesz(zero, 50.0, 1.0, grid) == 0.0);
    CHECK_THROWS_AS(counting_from_riesz(r1, 50.0, 1.0, std::vector<double>{}),
                    std::invalid_argument);
}

TEST_SUITE_END();
