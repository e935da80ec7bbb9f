#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "specbound/fdverify.hpp"
#include "specbound/horn.hpp"
#include "specbound/riesz.hpp"
#include <initializer_list>
#include <stdexcept>

TEST_SUITE_BEGIN("fdverify");

using namespace specbound;
using namespace specbound::fdverify;

namespace {
constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;

RasterDomain unit_square(double h) {
    return RasterDomain::rasterize(
        [](double x, double y) { return x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0; },
        0.0, 1.0, 0.0, 1.0, h);
}
}  // namespace

TEST_CASE("exact square spectra") {
    auto s = square_spectrum(1.0, 50.0);
    REQUIRE(s.values.size() == 3);
    CHECK(s.values[0] == doctest::Approx(2.0 * kPi2));
    CHECK(s.values[1] == doctest::Approx(5.0 * kPi2));
    CHECK(s.values[2] == doctest::Approx(5.0 * kPi2));

    SUBCASE("side scaling") {
        auto a = square_spectrum(2.0, 100.0);
        auto b = square_spectrum(1.0, 400.0);
        REQUIRE(a.values.size() == b.values.size());
        for (size_t i = 0; i < a.values.size(); ++i)
            CHECK(a.values[i] == doctest::Approx(b.values[i] / 4.0));
    }
    SUBCASE("riesz helper agrees with the generic mean") {
        auto spec = square_spectrum(1.0, 320.0);
        CHECK(square_riesz(1.0, 300.0, 1.5) ==
              doctest::Approx(riesz::riesz_mean(spec, 300.0, 1.5)).epsilon(1e-13));
    }
    SUBCASE("phase-space count order") {
        const double count = square_riesz(1.0, 1e6, 0.0);
        CHECK(count / (1e6 / (4.0 * kPi)) == doctest::Approx(1.0).epsilon(0.05));
        const double c3 = square_riesz(1.0, 1e3, 0.0);
        const double slope = std::log(count / c3) / std::log(1e3);
        CHECK(slope == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("five-point Laplacian on the unit square") {
    // FD eigenvalues are (4/h^2)(sin^2(j pi h/2) + sin^2(k pi h/2)) exactly
    auto rd = unit_square(1.0 / 32);
    CHECK(rd.unknowns == 31 * 31);
    auto spec = fd_laplacian_spectrum(rd, 200.0);
    REQUIRE(spec.values.size() >= 3);
    auto fd_exact = [&](int j, int k) {
        const double h = rd.h;
        auto s = [&](int m) { return std::pow(std::sin(0.5 * m * kPi * h) * 2.0 / h, 2.0); };
        return s(j) + s(k);
    };
    CHECK(spec.values[0] == doctest::Approx(fd_exact(1, 1)).epsilon(1e-11));
    CHECK(spec.values[1] == doctest::Approx(fd_exact(1, 2)).epsilon(1e-11));
    CHECK(spec.values[2] == doctest::Approx(fd_exact(2, 1)).epsilon(1e-11));
    CHECK(spec.exactness == EigenvalueSpectrum::Exactness::numerical);
    CHECK(spec.grid_spacing == rd.h);

    SUBCASE("second-order convergence to the continuum") {
        std::vector<double> errs;
        for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
            auto spec_h = fd_laplacian_spectrum(unit_square(h), 100.0);
            errs.push_back(std::fabs(spec_h.values[0] - 2.0 * kPi2));
        }
        const double rate = std::log2(errs[0] / errs[1]);
        const double rate2 = std::log2(errs[1] / errs[2]);
        CHECK(rate == doctest::Approx(2.0).epsilon(0.1));
        CHECK(rate2 == doctest::Approx(2.0).epsilon(0.1));
    }
}

TEST_CASE("disk ground state and the Lanczos path") {
    auto disk = RasterDomain::rasterize(
        [](double x, double y) { return x * x + y * y < 1.0; }, -1.0, 1.0, -1.0, 1.0,
        0.04);
    auto dense = fd_laplacian_spectrum(disk, 30.0);
    REQUIRE(dense.values.size() >= 1);
    // squared first Bessel zero 2.404825557...^2 = 5.78318596...
    CHECK(dense.values[0] == doctest::Approx(5.78318596).epsilon(0.02));

    SUBCASE("Lanczos agrees with the dense factorization on the same matrix") {
        SolverOptions opts;
        opts.dense_limit = 1;  // force the iterative path
        SolveDiagnostics diag;
        auto lanczos = fd_laplacian_spectrum(disk, 30.0, opts, &diag);
        CHECK_FALSE(diag.used_dense);
        CHECK(diag.iterations > 0);
        REQUIRE(lanczos.values.size() == dense.values.size());
        for (size_t i = 0; i < dense.values.size(); ++i)
            CHECK(lanczos.values[i] == doctest::Approx(dense.values[i]).epsilon(1e-8));
    }
}

TEST_CASE("raster and guard edge cases") {
    auto empty = RasterDomain::rasterize([](double, double) { return false; }, 0.0, 1.0,
                                         0.0, 1.0, 0.1);
    CHECK(empty.unknowns == 0);
    CHECK(fd_laplacian_spectrum(empty, 10.0).values.empty());

    auto rd = unit_square(0.2);  // far too coarse for lambda_max = 1000
    CHECK_THROWS_AS(fd_laplacian_spectrum(rd, 1000.0), ResolutionError);
    try {
        fd_laplacian_spectrum(rd, 1000.0);
    } catch (const ResolutionError& e) {
        CHECK(e.suggested_h() == doctest::Approx(resolution_guard_max_h(1000.0)));
    }
}

TEST_CASE("nested masks: adding nodes never raises an eigenvalue") {
    auto pred = [](double x, double y) { return std::fabs(x) * y * y < 1.0; };
    const double h = 0.08;
    auto small = RasterDomain::rasterize(pred, -2.0, 2.0, -2.0, 2.0, h);
    auto large = RasterDomain::rasterize(pred, -4.0, 4.0, -2.0, 2.0, h);
    REQUIRE(large.unknowns > small.unknowns);
    auto es = fd_laplacian_spectrum(small, 40.0);
    auto el = fd_laplacian_spectrum(large, 40.0);
    REQUIRE(el.values.size() >= es.values.size());
    for (size_t i = 0; i < es.values.size(); ++i)
        CHECK(el.values[i] <= es.values[i] * (1.0 + 1e-10));
}

TEST_CASE("truncation radius rule keeps the discarded tails silent") {
    TruncationPolicy policy{2.0};
    for (double lambda : {5.0, 20.0, 80.0}) {
        const double max_width = kPi / std::sqrt(lambda);
        for (double nu : {1.5, 2.0, 3.0}) {
            DomainSpec d{DomainSpec::Kind::horn, nu};
            auto r = truncation_radii(d, lambda, policy);
            CHECK(2.0 * std::pow(r.x, -1.0 / nu) < max_width);       // x-cusp section
            CHECK(2.0 * std::pow(r.y, -nu) < max_width);             // y-cusp section
        }
        DomainSpec crit{DomainSpec::Kind::critical_rotated_horn, 1.0};
        auto r = truncation_radii(crit, lambda, policy);
        CHECK(4.0 / r.x + 2.0 / (r.x * r.x * r.x) < max_width);
    }
}

TEST_CASE("empirical riesz means") {
    TruncationPolicy policy;
    DomainSpec horn2{DomainSpec::Kind::horn, 2.0};

    SUBCASE("dominated by the closed-form bound") {
        // the raw FD value overshoots (discrete eigenvalues sit low); the
        // discretization error is covered by the (h, h/2) refinement delta
        const double lambda = 20.0, sigma = 1.5;
        const double h = 0.9 * resolution_guard_max_h(lambda);
        auto res = empirical_riesz(horn2, sigma, lambda, h, policy);
        const double bound = horn::riesz_bound({2, 2.0}, sigma, lambda).value;
        CHECK(res.value_fine - res.refinement_delta < bound);
        CHECK(res.value_fine > 0.0);
        CHECK(res.unknowns_fine > res.unknowns);
        CHECK(res.trunc_x == doctest::Approx(2.0 * std::pow(2.0 * std::sqrt(lambda) / kPi, 2.0)));
    }

    SUBCASE("critical horn below threshold: empty spectrum") {
        DomainSpec crit{DomainSpec::Kind::critical_rotated_horn, 1.0};
        auto res = empirical_riesz(crit, 1.5, 0.5, 0.12, policy);
        CHECK(res.value == 0.0);
        CHECK(res.spectrum.values.empty());
    }

    SUBCASE("monotone in the truncation radius") {
        const double lambda = 15.0, sigma = 1.5;
        const double h = 0.8 * resolution_guard_max_h(lambda);
        TruncationPolicy tight{2.0}, loose{3.0};
        auto a = empirical_riesz(horn2, sigma, lambda, h, tight);
        auto b = empirical_riesz(horn2, sigma, lambda, h, loose);
        CHECK(b.value >= a.value * (1.0 - 1e-10));
    }

    SUBCASE("refinement deltas shrink") {
        const double lambda = 15.0, sigma = 1.5;
        const double h = 0.9 * resolution_guard_max_h(lambda);
        auto coarse = empirical_riesz(horn2, sigma, lambda, h, policy);
        auto fine = empirical_riesz(horn2, sigma, lambda, 0.5 * h, policy);
        CHECK(fine.refinement_delta < coarse.refinement_delta);
    }

    SUBCASE("safety factor below 2 is rejected") {
        CHECK_THROWS_AS(empirical_riesz(horn2, 1.5, 10.0, 0.1, TruncationPolicy{1.5}),
                        std::domain_error);
    }
}

TEST_SUITE_END();
