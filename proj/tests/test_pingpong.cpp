#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fibdiff/cps.hpp"
#include "fibdiff/pingpong.hpp"

using namespace fibdiff;

TEST_CASE("exact box convolution engine") {
    // box * box at matching halfwidth: triangle with peak 1
    auto tri = PiecewisePoly::box(QuadRat(Rational(-1, 2)), QuadRat(Rational(1, 2)))
                   .convolve_box(QuadRat(Rational(1, 2)));
    CHECK(tri.eval_exact(QuadRat(0)) == QuadRat(1));
    CHECK(tri.support().first == QuadRat(-1));
    CHECK(tri.support().second == QuadRat(1));
    CHECK(tri.degree() == 1);
    CHECK(tri.is_continuous());
    CHECK(tri.integral() == QuadRat(1));
    CHECK(tri(0.5) == doctest::Approx(0.5));

    // plateau cascade of the wide box with three thirds
    QuadRat tau1 = QuadRat::tau() + QuadRat(1);
    QuadRat third(Rational(1, 3));
    auto c1 = PiecewisePoly::box(-tau1, tau1).convolve_box(third);
    CHECK(c1.is_constant_on(QuadRat(Rational(2, 3)), -(QuadRat::tau() + QuadRat(Rational(2, 3))),
                            QuadRat::tau() + QuadRat(Rational(2, 3))));
    auto c2 = c1.convolve_box(third);
    CHECK(c2.is_constant_on(QuadRat(Rational(4, 9)), -(QuadRat::tau() + third),
                            QuadRat::tau() + third));
    auto c3 = c2.convolve_box(third);
    CHECK(c3.is_constant_on(QuadRat(Rational(8, 27)), -QuadRat::tau(), QuadRat::tau()));
}

TEST_CASE("h: plateau, support, continuity, range") {
    auto h = build_h();
    QuadRat tau = QuadRat::tau();
    // plateau is an exact polynomial identity
    CHECK(h.is_constant_on(QuadRat(1), -tau, tau));
    CHECK(h.eval_exact(QuadRat(0)) == QuadRat(1));
    CHECK(h.eval_exact(tau) == QuadRat(1));
    // support is exactly [-(tau+2), tau+2]
    CHECK(h.support().first == -(tau + QuadRat(2)));
    CHECK(h.support().second == tau + QuadRat(2));
    CHECK(h.eval_exact(tau + QuadRat(2)) == QuadRat(0));
    CHECK(h(kGolden + 2.0 + 1e-9) == 0.0);
    CHECK(h.degree() == 3);
    CHECK(h.is_continuous());
    // 0 <= h <= 1 on a dense grid
    for (int i = 0; i <= 20000; ++i) {
        double x = -4.0 + 8.0 * i / 20000.0;
        double v = h(x);
        CHECK(v >= -1e-15);
        CHECK(v <= 1.0 + 1e-12);
    }
    // integral of h = 3 + sqrt5 = 2 + 2 tau, exactly
    CHECK(h.integral() == QuadRat(Rational(2), Rational(2)));
}

TEST_CASE("h equals 1 at the internal coordinate of every Fib point") {
    auto h = build_h();
    ModelSetQuery q{Side::direct, Window::fibonacci(), -100.0, 100.0};
    auto fib = enumerate_model_set(q);
    REQUIRE(fib.points.size() > 100);
    for (const auto& p : fib.points)
        CHECK(h.eval_exact(QuadRat::from_quadint(star(p.q))) == QuadRat(1));
}

TEST_CASE("phi: exact normalization constants") {
    auto phi = build_phi(false);
    CHECK(phi.integral == QuadRat(Rational(1, 16)));
    CHECK(phi.autocorr0 == QuadRat(Rational(1, 96)));
    CHECK(phi.tent.eval_exact(QuadRat(0)) == QuadRat(Rational(1, 4)));
    // convention A integrates to one, exactly
    CHECK(phi.poly_integral_one().integral() == QuadRat(1));
    CHECK(phi.poly_integral_one()(0.0) == doctest::Approx(4.0));
    // convention B: |phi-check|^2(0) = scale^2 * (1/16)^2 = 96/256
    CHECK(phi.check_abs2(0.0, true) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(phi.check_abs2(0.0, false) == doctest::Approx(1.0).epsilon(1e-14));
    // support [-1/4, 1/4]
    CHECK(phi.tent.support().first == QuadRat(Rational(-1, 4)));
    CHECK(phi.tent.support().second == QuadRat(Rational(1, 4)));

    // strict variant fits inside the open interval
    auto strict = build_phi(true);
    CHECK(sign(strict.tent.support().second - QuadRat(Rational(1, 4))) < 0);
    CHECK(strict.integral == QuadRat(Rational(124999, 1000000)) * QuadRat(Rational(124999, 250000)));
    CHECK(strict.integral.to_double() * strict.scale_integral_one() == doctest::Approx(1.0));
}

TEST_CASE("sinc and its derivative") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc_deriv(0.0) == 0.0);
    // branch continuity
    for (double x : {1e-4 - 1e-9, 1e-4 + 1e-9}) {
        CHECK(sinc(x) == doctest::Approx(std::sin(x) / x).epsilon(1e-14));
        CHECK(sinc_deriv(x) ==
              doctest::Approx((x * std::cos(x) - std::sin(x)) / (x * x)).epsilon(1e-9));
    }
    // |sinc'| <= 1/2 and |sinc| <= 1 on a grid
    for (int i = 1; i <= 100000; ++i) {
        double x = 50.0 * i / 100000.0;
        CHECK(std::abs(sinc_deriv(x)) <= 0.5 + 1e-12);
        CHECK(std::abs(sinc(x)) <= 1.0);
    }
}

TEST_CASE("h_hat closed form against quadrature") {
    auto h = build_h();
    CHECK(h_hat(0.0) == doctest::Approx(3.0 + kSqrt5).epsilon(1e-14));
    CHECK(h_hat(1.0 / (2.0 * (kGolden + 1.0))) == doctest::Approx(0.0).epsilon(1e-14));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double k = -5.0 + 10.0 * i / 99.0;
        worst = std::max(worst, std::abs(h_hat(k) - h_hat_quadrature(h, k)));
    }
    CHECK(worst <= 1e-8);
    // the frozen spot value used in the examples
    CHECK(std::abs(h_hat(0.37) - h_hat_quadrature(h, 0.37)) <= 1e-8);
}

TEST_CASE("weight profile bounds") {
    CHECK(pingpong_weight(0.0) == 1.0);
    double c = quartic_tail_constant();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ud(-60.0, 60.0);
    for (int i = 0; i < 5000; ++i) {
        double u = ud(rng);
        double g = pingpong_weight(u);
        CHECK(std::abs(g) <= 1.0);
        if (u != 0.0) CHECK(std::abs(g) <= c / std::pow(std::abs(u), 4.0) + 1e-15);
    }
}

TEST_CASE("omega_hat comb") {
    auto w = omega_hat_comb(10.0, -20.0, 20.0);
    double pre = omega_prefactor();
    CHECK(pre == doctest::Approx(2.3416407864998738).epsilon(1e-14));
    auto at0 = w.comb.weight_at(0.0);
    CHECK(at0.real() == doctest::Approx(pre).epsilon(1e-13));
    for (const auto& a : w.comb.atoms()) {
        CHECK(a.weight.imag() == 0.0);
        CHECK(std::abs(a.weight) <= pre + 1e-12);
    }
    // the window [-1/2, 3/2] over any translate catches at least the origin atom
    auto wn = window_norm(w.comb, -0.5, 1.5);
    CHECK(wn.value >= pre - 1e-12);
    // tail bound: positive, decreasing in Y, dominated by the quartic envelope
    double t10 = omega_tail_bound(10.0, false);
    double t20 = omega_tail_bound(20.0, false);
    double t40 = omega_tail_bound(40.0, false);
    CHECK(t10 > 0.0);
    CHECK(t20 < t10);
    CHECK(t40 < t20);
    // against the raw strip sum with the paper's constant
    double c = quartic_tail_constant();
    double raw = 0.0;
    for (int n = 98; n < 100000; ++n) raw += 2.0 * pre * c * 1e4 / std::pow(n, 4.0);
    CHECK(t10 <= raw * 1.001);
    CHECK(omega_tail_bound(10.0, true) == doctest::Approx(2.0 * t10).epsilon(1e-12));
}

TEST_CASE("almost period certificates") {
    AlmostPeriodOptions opts;
    opts.patch_radius = 60.0;

    SUBCASE("t = 0 is trivially certified") {
        auto rep = certify_almost_period(DualPoint{}, 1e-3, opts);
        CHECK(rep.truncated_norm == 0.0);
        CHECK(rep.pass);
    }

    SUBCASE("sampled t at alpha = 1e-3") {
        auto ts = sample_dual_points(1e-3, 5, 11);
        for (auto& t : ts) {
            auto rep = certify_almost_period(t, 1e-3, opts);
            CHECK(rep.hypothesis_ok);
            CHECK(rep.paper_bound == doctest::Approx(2507.0 * std::pow(1e-3, 0.75)));
            CHECK(rep.truncated_norm <= rep.head_cap + 1e-12);  // sweep below the certified cap
            CHECK(rep.head_cap + rep.tail_bound < rep.paper_bound);
            CHECK(rep.pass);
        }
    }

    SUBCASE("alpha above the hypothesis is flagged") {
        auto ts = sample_dual_points(0.05, 1, 3);
        auto rep = certify_almost_period(ts[0], 0.05, opts);
        CHECK(!rep.hypothesis_ok);
        CHECK(!rep.pass);
    }

    SUBCASE("doubling Y: certified budget shrinks monotonically") {
        auto ts = sample_dual_points(1e-4, 2, 5);
        for (auto& t : ts) {
            AlmostPeriodOptions o1 = opts, o2 = opts;
            o1.Y = 25.0;
            o2.Y = 50.0;
            auto r1 = certify_almost_period(t, 1e-4, o1);
            auto r2 = certify_almost_period(t, 1e-4, o2);
            // enlarging Y moves mass from the tail budget into the measured part
            CHECK(r2.truncated_norm + r2.tail_bound <=
                  r1.truncated_norm + r1.tail_bound + r1.tail_bound);
            CHECK(r2.tail_bound < r1.tail_bound);
        }
    }
}

TEST_CASE("translate re-alignment matches the weight difference formula") {
    // t with moderate internal size: the translated Fourier comb re-aligns on
    // the dual support with weights g(y* - t*) - g(y*)
    auto ts = sample_dual_points(0.2, 1, 21);
    DualPoint t = ts[0];
    double tpos = dual_value(t), tstar = dual_star(t);
    auto base = omega_hat_comb(30.0, -40.0 - std::abs(tpos), 40.0 + std::abs(tpos));
    auto diff = translate_diff(base.comb, tpos, ExactTag::dual(t));
    double pre = omega_prefactor();
    int checked = 0;
    for (const auto& a : diff.atoms()) {
        if (std::abs(a.position) > 10.0) continue;
        REQUIRE(a.tag.kind == ExactTag::Kind::dual);
        DualPoint y(a.tag.q);
        double ystar = dual_star(y);
        if (std::abs(ystar) > 30.0 - 0.3 || std::abs(ystar - tstar) > 30.0 - 0.3) continue;
        double expect = pre * (pingpong_weight(ystar - tstar) - pingpong_weight(ystar));
        CHECK(a.weight.real() == doctest::Approx(expect).epsilon(1e-10));
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("diffraction almost periods at small n") {
    double n = 2000.0;
    auto pts = fib_points(n);
    double alpha_max = 4.0 * std::pow(0.5, 4.0 / 3.0) / 1e5;
    auto ts = sample_dual_points(alpha_max, 3, 9);
    DiffractionAlmostPeriodOptions opts;
    opts.epsilon = 0.5;
    opts.patch_radius = 8.0;
    for (auto& t : ts) {
        auto rep = certify_diffraction_almost_period(pts, n, t, opts);
        CHECK(rep.density == doctest::Approx(kGolden / kSqrt5).epsilon(0.02));
        CHECK(rep.pass_fib3);
        CHECK(rep.pass_epsilon);
        CHECK(rep.norm < 0.1);  // far below the epsilon grade
    }
    // t = 0: zero difference
    auto rep0 = certify_diffraction_almost_period(pts, n, DualPoint{}, opts);
    CHECK(rep0.norm == 0.0);

    // thinned subset: the density factor in the fib3 comparison tightens
    auto thinned = bernoulli_thin(pts, 0.5, 42);
    auto rept = certify_diffraction_almost_period(thinned, n, ts[0], opts);
    CHECK(rept.density == doctest::Approx(0.5 * kGolden / kSqrt5).epsilon(0.1));
    CHECK(rept.fib3_rhs < 0.6 * (kGolden / kSqrt5) * rept.omega_cap);
    CHECK(rept.pass_fib3);
    CHECK(rept.pass_epsilon);
}

TEST_CASE("ping identity at small n") {
    double n = 2000.0;
    auto pts = fib_points(n);

    SUBCASE("auxiliary width 1/8") {
        PingIdentityOptions opts;
        auto rep = ping_identity_check(pts, n, 0.0, 1.0, 50.0, opts);
        CHECK(rep.atoms_checked > 30);
        CHECK(rep.nu_mass == doctest::Approx(kGolden / kSqrt5).epsilon(0.05));
        CHECK(rep.max_abs_error <= 1e-2 + rep.truncation_budget);
        CHECK(rep.pass);
        // the residual is an intrinsic effect of the 1/8 width: supp(phi*~phi)
        // reaches past |2 tau - 3|, so the worst atom carries a stable defect
        CHECK(rep.max_abs_error > 5e-3);
        CHECK(rep.worst_k == doctest::Approx(0.0));
    }

    SUBCASE("auxiliary width below the 2 tau - 3 threshold") {
        PingIdentityOptions opts;
        opts.phi_halfwidth = Rational(1, 18);
        opts.r_nu = 60.0;
        auto rep = ping_identity_check(pts, n, 0.0, 1.0, 50.0, opts);
        CHECK(rep.max_abs_error < 2e-3);
        CHECK(rep.pass);
    }
}

TEST_CASE("lattice Poisson summation oracle") {
    CHECK(lattice_psf_error() < 1e-10);
}

TEST_CASE("sinc product Lipschitz estimate") {
    auto r = sinc_lipschitz_check(2.0 * M_PI * (kGolden + 1.0), 2.0 * M_PI / 3.0, 200000);
    CHECK(r.bound == doctest::Approx(M_PI * (kGolden + 2.0)).epsilon(1e-14));
    CHECK(r.pass);
    auto r2 = sinc_lipschitz_check(1.0, 1.0, 200000);
    CHECK(r2.bound == doctest::Approx(2.0));
    CHECK(r2.pass);
    CHECK(r2.numeric_sup <= 2.0);
}
