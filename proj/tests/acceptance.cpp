// Acceptance suite: every quantitative claim the library certifies, run at
// the declared parameters and tolerances, one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fibdiff/cps.hpp"
#include "fibdiff/diffraction.hpp"
#include "fibdiff/pingpong.hpp"

using namespace fibdiff;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

Outcome duality_inequality() {
    Outcome out;
    double worst_slack = -1e300;
    for (double a : {0.05, 0.1, 0.3}) {
        for (double b : {0.05, 0.1, 0.3}) {
            auto xs = enumerate_model_set({Side::direct, Window::closed(-a, a), -100.0, 100.0});
            auto ys = enumerate_model_set({Side::dual, Window::closed(-b, b), -100.0, 100.0});
            double lim = 2 * M_PI * a * b + 1e-9;
            for (const auto& x : xs.points) {
                for (const auto& y : ys.points) {
                    double d = std::abs(
                        std::exp(std::complex<double>(0, -2 * M_PI * x.position * y.position)) -
                        1.0);
                    worst_slack = std::max(worst_slack, d - 2 * M_PI * a * b);
                    if (d > lim) out.pass = false;
                }
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |e^{-2pi i xy}-1| - 2pi a b = %.3g (allowed 1e-9)",
                  worst_slack);
    out.detail = buf;
    return out;
}

Outcome covering_radius() {
    Outcome out;
    std::string parts;
    const double tau3 = kGolden * kGolden * kGolden;
    for (Rational a : {Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(1, 2)}) {
        auto res = enumerate_model_set(
            {Side::dual, Window::symmetric_exact(a, false), -10000.0, 10000.0});
        std::vector<double> pos;
        pos.reserve(res.points.size());
        for (const auto& p : res.points) pos.push_back(p.position);
        double g = max_gap(pos, -10000.0, 10000.0);
        double bound = tau3 / (5.0 * a.to_double());
        if (!(g <= bound)) out.pass = false;
        char buf[64];
        std::snprintf(buf, sizeof buf, " a=%.2f: %.4f<=%.4f", a.to_double(), g, bound);
        parts += buf;
    }
    out.detail = "max gaps vs tau^3/(5a):" + parts;
    return out;
}

Outcome bragg_lower_bounds() {
    Outcome out;
    std::string parts;
    for (const char* spec_text : {"full", "bernoulli:p=0.5:seed=42"}) {
        auto spec = SubsetSpec::parse(spec_text);
        auto points = spec.materialize(1e4);
        auto v = verify_bragg_lower_bounds(points, 1e4, 0.9, -20.0, 20.0, 0.05, 0.02);
        bool ok = !v.vacuous && !v.reports.empty() && v.all_pass();
        if (!ok) out.pass = false;
        double worst_margin = 1e300, worst_agree = 0.0;
        for (const auto& r : v.reports) {
            worst_margin = std::min(worst_margin,
                                    std::min(r.intensity, r.intensity_autocorr) -
                                        (r.bound - r.finite_size_tol));
            worst_agree = std::max(worst_agree, std::abs(r.intensity - r.intensity_autocorr));
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s: %zu peaks, I=%.4f, min margin %.4f, agree %.2e;",
                      spec_text, v.reports.size(), v.intensity_origin, worst_margin, worst_agree);
        parts += buf;
    }
    out.detail = "n=1e4, eps=0.9, [-20,20]:" + parts;
    return out;
}

Outcome gap_constants() {
    Outcome out;
    auto gap_of = [](double radius, double range) {
        auto res = enumerate_model_set(
            {Side::dual, Window::closed(-radius, radius), -range, range});
        std::vector<double> pos;
        pos.reserve(res.points.size());
        for (const auto& p : res.points) pos.push_back(p.position);
        return max_gap(pos, -range, range);
    };
    double g1 = gap_of(1.0 / (2 * M_PI * kGolden), 500.0);
    double g01 = gap_of(0.1 / (2 * M_PI * kGolden), 5000.0);
    out.pass = g1 <= 8.62 && g01 <= 86.2;
    char buf[96];
    std::snprintf(buf, sizeof buf, "B_1 gap %.4f <= 8.62 on [-500,500]; B_0.1 gap %.3f <= 86.2",
                  g1, g01);
    out.detail = buf;
    return out;
}

Outcome plateau_and_transform() {
    Outcome out;
    auto h = build_h();
    QuadRat tau = QuadRat::tau();
    bool plateau = h.is_constant_on(QuadRat(1), -tau, tau);
    bool support = h.support().first == -(tau + QuadRat(2)) &&
                   h.support().second == tau + QuadRat(2);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double k = -5.0 + 10.0 * i / 99.0;
        worst = std::max(worst, std::abs(h_hat(k) - h_hat_quadrature(h, k)));
    }
    out.pass = plateau && support && worst <= 1e-8;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "plateau exact: %s; supp = [-(tau+2), tau+2]: %s; closed form vs quadrature %.2e",
                  plateau ? "yes" : "NO", support ? "yes" : "NO", worst);
    out.detail = buf;
    return out;
}

Outcome almost_period_certificates() {
    Outcome out;
    std::string parts;
    AlmostPeriodOptions opts;  // Y = 50, K = [-1/2, 3/2]
    int idx = 0;
    for (double alpha : {1e-3, 1e-4, 1e-5}) {
        auto ts = sample_dual_points(alpha, 20, 1000 + idx++);
        double worst = 0.0;
        for (const auto& t : ts) {
            auto rep = certify_almost_period(t, alpha, opts);
            double budget = rep.head_cap + rep.tail_bound;
            if (!(rep.truncated_norm + rep.tail_bound < rep.paper_bound) || !rep.pass)
                out.pass = false;
            worst = std::max(worst, budget / rep.paper_bound);
        }
        char buf[72];
        std::snprintf(buf, sizeof buf, " alpha=%g: max budget/bound %.3f;", alpha, worst);
        parts += buf;
    }
    out.detail = "60 certificates, Y=50:" + parts;
    return out;
}

Outcome diffraction_almost_periods() {
    Outcome out;
    const double eps = 0.5;
    double alpha = 4.0 * std::pow(eps, 4.0 / 3.0) / 1e5;
    auto pts = fib_points(1e4);
    auto ts = sample_dual_points(alpha, 10, 77);
    DiffractionAlmostPeriodOptions opts;
    opts.epsilon = eps;
    double worst = 0.0;
    for (const auto& t : ts) {
        auto rep = certify_diffraction_almost_period(pts, 1e4, t, opts);
        if (!rep.pass_epsilon || !rep.pass_fib3) out.pass = false;
        worst = std::max(worst, rep.norm + rep.tail_budget);
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "10 translates, eps=0.5, n=1e4: max norm+tail %.4f < %.2f (and fib3 chain holds)",
                  worst, eps + 0.05);
    out.detail = buf;
    return out;
}

Outcome ping_identity() {
    Outcome out;
    auto pts = fib_points(1e4);
    auto rep = ping_identity_check(pts, 1e4, 0.0, 1.0, 50.0);
    double psf = lattice_psf_error();
    out.pass = rep.pass && psf < 1e-10;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max atomwise defect %.4f <= 1e-2 + budget %.4f (%d atoms); lattice PSF %.1e",
                  rep.max_abs_error, rep.truncation_budget, rep.atoms_checked, psf);
    out.detail = buf;
    return out;
}

Outcome appendix_lemmas() {
    Outcome out;
    bool a1 = true;
    for (std::int64_t m : {-3LL, -2LL, -1LL, 1LL})
        if (!check_no_integer_in(m)) a1 = false;
    auto disc = check_dual_uniform_discreteness(500, 4242);
    bool a2 = disc.ok();
    bool a3 = true;
    double worst_ratio = 0.0;
    const double pairs[5][2] = {{2 * M_PI * (kGolden + 1), 2 * M_PI / 3},
                                {1.0, 1.0},
                                {2.0, 1.0},
                                {5.0, 0.5},
                                {0.3, 2.0}};
    for (const auto& ab : pairs) {
        auto r = sinc_lipschitz_check(ab[0], ab[1], 1000000);
        if (!r.pass) a3 = false;
        worst_ratio = std::max(worst_ratio, r.numeric_sup / r.bound);
    }
    out.pass = a1 && a2 && a3;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "no-integer intervals: %s; dual box reduction {(0,0)} and translates<=1: %s; "
                  "derivative sup/bound <= %.3f",
                  a1 ? "yes" : "NO", a2 ? "yes" : "NO", worst_ratio);
    out.detail = buf;
    return out;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Outcome()> fn;
    };
    const Entry entries[] = {
        {1, "duality inequality over direct x dual windows", duality_inequality},
        {2, "covering radius of dual model sets", covering_radius},
        {3, "Bragg lower bounds for full and thinned sets", bragg_lower_bounds},
        {4, "common-peak gap constants", gap_constants},
        {5, "plateau identity and transform of h", plateau_and_transform},
        {6, "norm almost period certificates", almost_period_certificates},
        {7, "diffraction almost periods", diffraction_almost_periods},
        {8, "convolution identity on the Fourier side", ping_identity},
        {9, "exact lattice-geometry lemmas", appendix_lemmas},
    };
    int failures = 0;
    for (const auto& e : entries) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = e.fn();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.1fs) -- %s\n", o.pass ? "PASS" : "FAIL", e.id,
                    e.name, secs, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures == 0) std::printf("acceptance: all 9 criteria passed\n");
    else std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures;
}
