#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fibdiff/diffraction.hpp"

using namespace fibdiff;

namespace {

// Independent limit oracle for full Fib: the intensity at a dual point with
// internal coordinate v is |(1/sqrt5) * integral over the window of
// e^{-2 pi i v u} du|^2, and the window has length tau.
double limit_intensity(double v) {
    if (v == 0.0) return kGolden * kGolden / 5.0;
    double x = M_PI * v * kGolden;
    double s = std::sin(x) / x;
    return (kGolden * s) * (kGolden * s) / 5.0;
}

}  // namespace

TEST_CASE("amplitude estimator basics") {
    std::vector<Atom> one{{0.0, {1.0, 0.0}, ExactTag::direct(QuadInt{0, 0})}};
    CHECK(bragg_intensity_amplitude(one, 1.0, 0.0).intensity == doctest::Approx(0.25));
    CHECK(bragg_intensity_amplitude(one, 1.0, 0.7).intensity == doctest::Approx(0.25));
    auto pts = fib_points(2000.0);
    CHECK(bragg_intensity_amplitude(pts, 2000.0, 0.0).intensity ==
          doctest::Approx(kGolden * kGolden / 5.0).epsilon(0.02));
}

TEST_CASE("autocorr estimator matches k=0 identities") {
    auto pts = fib_points(2000.0);
    auto ac = autocorrelation(pts, 2000.0);
    auto est = bragg_intensity_autocorr(ac, 0.0);
    CHECK(est.intensity == doctest::Approx(kGolden * kGolden / 5.0).epsilon(0.02));
    CHECK(std::abs(est.imag_residual) < 1e-12);
    // non-peak k decays
    CHECK(bragg_intensity_autocorr(ac, 1.0 / 3.0).intensity <0.02);
    CHECK(bragg_intensity_amplitude(pts, 2000.0, 1.0 / 3.0).intensity < 0.02);
}

TEST_CASE("integer lattice subsets: every integer k carries the origin intensity") {
    // degenerate check of the estimator on subsets of Z with A_n an integer interval
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Atom> pts;
    for (int x = -500; x <= 500; ++x)
        if (u(rng) < 0.6) pts.push_back({static_cast<double>(x),
                                         {1.0, 0.0},
                                         ExactTag::direct(QuadInt{x, 0})});
    auto ac = autocorrelation(pts, 500.0);
    double i0_amp = bragg_intensity_amplitude(pts, 500.0, 0.0).intensity;
    double i0_ac = bragg_intensity_autocorr(ac, 0.0).intensity;
    for (double m : {1.0, 2.0, -7.0, 13.0}) {
        CHECK(bragg_intensity_amplitude(pts, 500.0, m).intensity ==
              doctest::Approx(i0_amp).epsilon(1e-12));
        CHECK(bragg_intensity_autocorr(ac, m).intensity ==
              doctest::Approx(i0_ac).epsilon(1e-12));
    }
}

TEST_CASE("the two estimators agree across random k") {
    auto pts = fib_points(2000.0);
    auto thinned = bernoulli_thin(pts, 0.5, 42);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> kd(-10.0, 10.0);
    for (const auto* set : {&pts, &thinned}) {
        auto ac = autocorrelation(*set, 2000.0);
        for (int i = 0; i < 50; ++i) {
            double k = kd(rng);
            double a = bragg_intensity_amplitude(*set, 2000.0, k).intensity;
            double b = bragg_intensity_autocorr(ac, k).intensity;
            CHECK(std::abs(a - b) <= 0.02);
        }
    }
}

TEST_CASE("amplitude route tracks the limit oracle on peaks") {
    auto pts = fib_points(5000.0);
    auto peaks = b_epsilon({0.9, kGolden}, -20.0, 20.0);
    for (const auto& pk : peaks) {
        double est = bragg_intensity_amplitude(pts, 5000.0, pk.position).intensity;
        CHECK(est == doctest::Approx(limit_intensity(pk.star)).epsilon(0.01));
    }
}

TEST_CASE("lower bound verification passes for named subsets") {
    double n = 2000.0;
    auto full = fib_points(n);
    SUBCASE("full") {
        auto v = verify_bragg_lower_bounds(full, n, 0.9, -20.0, 20.0);
        CHECK(!v.vacuous);
        CHECK(!v.reports.empty());
        CHECK(v.all_pass());
        CHECK(v.intensity_origin == doctest::Approx(kGolden * kGolden / 5.0).epsilon(0.02));
        for (const auto& r : v.reports) {
            CHECK(r.bound <= r.bound_schi + 1e-12);          // Thm-ordering of the bounds
            CHECK(r.bound_eps <= r.bound_schi + 1e-12);
            CHECK(s_chi(r.k_star, kGolden) <= 2 * M_PI * std::abs(r.k_star) * kGolden + 1e-12);
        }
    }
    SUBCASE("bernoulli and stride subsets") {
        for (std::uint64_t seed : {42ULL, 7ULL, 99ULL}) {
            auto v = verify_bragg_lower_bounds(bernoulli_thin(full, 0.5, seed), n, 0.9, -20., 20.);
            CHECK(v.all_pass());
        }
        for (std::int64_t k : {2LL, 5LL}) {
            auto v = verify_bragg_lower_bounds(stride_thin(full, k), n, 0.9, -20.0, 20.0);
            CHECK(v.all_pass());
        }
    }
    SUBCASE("empty subset is vacuous") {
        auto v = verify_bragg_lower_bounds({}, n, 0.9, -20.0, 20.0);
        CHECK(v.vacuous);
        CHECK(v.all_pass());
        CHECK(v.reports.empty());
    }
}

TEST_CASE("figure1 data") {
    auto rows = figure1_data(-500.0, 500.0);
    REQUIRE(!rows.empty());
    bool has_origin = false;
    std::vector<double> pos;
    for (const auto& r : rows) {
        CHECK(r.lower_bound_fraction > 0.0);
        CHECK(r.lower_bound_fraction <= 1.0);
        if (r.k == 0.0) {
            has_origin = true;
            CHECK(r.lower_bound_fraction == 1.0);
        }
        pos.push_back(r.k);
    }
    CHECK(has_origin);
    CHECK(max_gap(pos, -500.0, 500.0) <= 8.62);
}

TEST_CASE("smoothed periodogram") {
    double n = 2000.0;
    auto full = fib_points(n);

    // pick grid points clear of the strong peaks
    auto strong = enumerate_model_set(
        {Side::dual, Window::closed(-0.75, 0.75), 4.0, 16.0});
    auto clear_of_peaks = [&](double k) {
        for (auto& p : strong.points)
            if (std::abs(k - p.position) < 0.12) return false;
        return true;
    };
    std::vector<double> grid;
    for (double k = 5.0; k < 15.0 && grid.size() < 5; k += 0.01)
        if (clear_of_peaks(k)) {
            grid.push_back(k);
            k += 0.5;
        }
    REQUIRE(grid.size() == 5);

    SUBCASE("deterministic full Fib has vanishing background") {
        auto rows = smoothed_periodogram(full, n, grid, 0.05);
        for (const auto& r : rows) {
            CHECK(r.samples_used > 30);
            CHECK(r.density <= 0.02);
        }
    }
    SUBCASE("bernoulli thinning shows p(1-p) dens background") {
        auto thinned = bernoulli_thin(full, 0.5, 42);
        auto rows = smoothed_periodogram(thinned, n, grid, 0.05);
        double expect = 0.25 * kGolden / kSqrt5;
        for (const auto& r : rows)
            CHECK(std::abs(r.density - expect) / expect <= 0.2);
    }
    SUBCASE("p = 1 thinning equals the full set") {
        auto same = bernoulli_thin(full, 1.0, 9);
        REQUIRE(same.size() == full.size());
        auto a = smoothed_periodogram(full, n, grid, 0.05);
        auto b = smoothed_periodogram(same, n, grid, 0.05);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i].density == doctest::Approx(b[i].density).epsilon(1e-12));
    }
    SUBCASE("grid colliding with a strong peak is rejected") {
        REQUIRE(!strong.points.empty());
        std::vector<double> bad{strong.points.front().position + 0.01};
        CHECK_THROWS_AS(smoothed_periodogram(full, n, bad, 0.05), std::invalid_argument);
    }
}

TEST_CASE("subset spec grammar") {
    CHECK(SubsetSpec::parse("full").kind == SubsetSpec::Kind::full);
    CHECK(SubsetSpec::parse("empty").kind == SubsetSpec::Kind::empty);
    auto b = SubsetSpec::parse("bernoulli:p=0.5:seed=42");
    CHECK(b.kind == SubsetSpec::Kind::bernoulli);
    CHECK(b.p == 0.5);
    CHECK(b.seed == 42);
    CHECK(b.describe() == "bernoulli:p=0.5:seed=42");
    auto s = SubsetSpec::parse("stride:k=3");
    CHECK(s.kind == SubsetSpec::Kind::stride);
    CHECK(s.k == 3);
    auto f = SubsetSpec::parse("file:/tmp/points.csv");
    CHECK(f.kind == SubsetSpec::Kind::file);
    CHECK(f.path == "/tmp/points.csv");
    CHECK_THROWS_AS(SubsetSpec::parse("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(SubsetSpec::parse("bernoulli:p=0.5"), std::invalid_argument);
    CHECK_THROWS_AS(SubsetSpec::parse("stride:k=0"), std::invalid_argument);
    // determinism of bernoulli materialization
    auto x1 = SubsetSpec::parse("bernoulli:p=0.5:seed=42").materialize(500.0);
    auto x2 = SubsetSpec::parse("bernoulli:p=0.5:seed=42").materialize(500.0);
    REQUIRE(x1.size() == x2.size());
    for (std::size_t i = 0; i < x1.size(); ++i) CHECK(x1[i].position == x2[i].position);
}
