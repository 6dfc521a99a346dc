#include "fibdiff/pingpong.hpp"

#include <algorithm>
#include <cmath>

#include "fibdiff/cps.hpp"
#include "fibdiff/parallel.hpp"

namespace fibdiff {

namespace {

constexpr double kSincTaylorCut = 1e-4;
const double kA = 2.0 * M_PI * (kGolden + 1.0);  // frequency of the wide box
const double kB = 2.0 * M_PI / 3.0;              // frequency of the narrow boxes

}  // namespace

double sinc(double x) {
    double ax = std::abs(x);
    if (ax < kSincTaylorCut) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double sinc_deriv(double x) {
    double ax = std::abs(x);
    if (ax < kSincTaylorCut) {
        double x2 = x * x;
        return x * (-1.0 / 3.0 + x2 / 30.0);
    }
    return (x * std::cos(x) - std::sin(x)) / (x * x);
}

double pingpong_weight(double u) {
    double s = sinc(kB * u);
    return sinc(kA * u) * s * s * s;
}

double omega_prefactor() { return (3.0 + kSqrt5) / kSqrt5; }

double quartic_tail_constant() { return 1.0 / (kA * kB * kB * kB); }

double pingpong_lipschitz() { return (kA + 3.0 * kB) / 2.0; }

namespace {

inline double sinc_abs_bound(double x) { return x > 1.0 ? 1.0 / x : 1.0; }
inline double sinc_deriv_abs_bound(double x) { return x > 4.0 ? 2.0 / x : 0.5; }

// |g(u)| bound valid for all |u| >= u0
double g_abs_bound(double u0) {
    if (u0 <= 0.0) return 1.0;
    double s = sinc_abs_bound(kB * u0);
    return std::min(1.0, sinc_abs_bound(kA * u0) * s * s * s);
}

}  // namespace

double pingpong_weight_deriv_bound(double u0) {
    if (u0 < 0.0) u0 = 0.0;
    double sa = sinc_abs_bound(kA * u0), sb = sinc_abs_bound(kB * u0);
    double da = sinc_deriv_abs_bound(kA * u0), db = sinc_deriv_abs_bound(kB * u0);
    return kA * da * sb * sb * sb + 3.0 * kB * sa * db * sb * sb;
}

PiecewisePoly build_h() {
    QuadRat tau1 = QuadRat::tau() + QuadRat(1);
    QuadRat third(Rational(1, 3));
    PiecewisePoly p = PiecewisePoly::box(-tau1, tau1);
    p = p.convolve_box(third);
    p = p.convolve_box(third);
    p = p.convolve_box(third);
    return p.scaled(QuadRat(Rational(27, 8)));
}

Phi build_phi(bool strict_support, Rational box_halfwidth) {
    Phi out;
    Rational h = box_halfwidth;
    if (strict_support) h = h - Rational(1, 1000000);
    if (h.sgn() <= 0) throw std::invalid_argument("build_phi: halfwidth must be positive");
    out.halfwidth = QuadRat(h);
    PiecewisePoly box = PiecewisePoly::box(-out.halfwidth, out.halfwidth);
    out.tent = box.convolve_box(out.halfwidth);
    out.integral = out.tent.integral();
    out.autocorr0 = out.tent.integral_of_square();
    return out;
}

PiecewisePoly Phi::poly_integral_one() const {
    return tent.scaled(QuadRat(1) / integral);
}

double Phi::scale_integral_one() const { return 1.0 / integral.to_double(); }

double Phi::scale_autocorr_one() const { return 1.0 / std::sqrt(autocorr0.to_double()); }

double Phi::check_abs2(double k, bool convention_autocorr_one) const {
    // inverse transform of box[-h,h] is 2h sinc(2 pi h k); the tent squares it
    double h = halfwidth.to_double();
    double base = 2.0 * h * sinc(2.0 * M_PI * h * k);
    double tent_check = base * base;
    double c = convention_autocorr_one ? scale_autocorr_one() : scale_integral_one();
    return c * c * tent_check * tent_check;
}

double h_hat(double k) { return (3.0 + kSqrt5) * pingpong_weight(k); }

double h_hat_quadrature(const PiecewisePoly& h, double k) {
    // 16-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double nodes[8] = {0.0950125098376374, 0.2816035507792589,
                                    0.4580167776572274, 0.6178762444026438,
                                    0.7554044083550030, 0.8656312023878318,
                                    0.9445750230732326, 0.9894009349916499};
    static const double weights[8] = {0.1894506104550685, 0.1826034150449236,
                                      0.1691565193950025, 0.1495959888165767,
                                      0.1246289712555339, 0.0951585116824928,
                                      0.0622535239386479, 0.0271524594117541};
    const auto& breaks = h.breakpoints();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double lo = breaks[i].to_double(), hi = breaks[i + 1].to_double();
        int nseg = std::max(1, static_cast<int>(std::ceil((hi - lo) * (4.0 * std::abs(k) + 2.0))));
        double step = (hi - lo) / nseg;
        for (int s = 0; s < nseg; ++s) {
            double a = lo + s * step, b = a + step;
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int j = 0; j < 8; ++j) {
                for (double sgn : {-1.0, 1.0}) {
                    double x = mid + sgn * half * nodes[j];
                    total += half * weights[j] * h(x) * std::cos(2.0 * M_PI * k * x);
                }
            }
        }
    }
    return total;
}

OmegaHatComb omega_hat_comb(double truncation_y, double x_min, double x_max) {
    if (!(truncation_y > 0)) throw std::invalid_argument("omega_hat_comb: Y must be positive");
    OmegaHatComb out;
    out.truncation_y = truncation_y;
    out.x_min = x_min;
    out.x_max = x_max;
    ModelSetQuery q{Side::dual, Window::closed(-truncation_y, truncation_y), x_min, x_max};
    auto res = enumerate_model_set(q);
    std::vector<Atom> atoms;
    atoms.reserve(res.points.size());
    double pre = omega_prefactor();
    for (const auto& p : res.points)
        atoms.push_back({p.position,
                         {pre * pingpong_weight(p.star), 0.0},
                         ExactTag::dual(DualPoint(p.q))});
    out.comb = WeightedComb::from_atoms(std::move(atoms));
    out.tail_per_len2_window = omega_tail_bound(truncation_y, false);
    return out;
}

double omega_tail_bound(double truncation_y, bool difference) {
    // Strips of internal height 1/10 hold at most one dual point per window of
    // length 2. Points with |y*| > Y live in strips n >= floor(10 Y); the
    // quartic decay and the integral test close the sum. The difference
    // variant also counts the shifted profile |g(y* - t*)| with |t*| <= 1/10.
    auto ny = static_cast<std::int64_t>(std::floor(10.0 * truncation_y));
    if (ny < 3) throw std::invalid_argument("omega_tail_bound: Y too small for the strip bound");
    double c = quartic_tail_constant();
    double pre = omega_prefactor();
    double base = 1e4 * c / (3.0 * std::pow(static_cast<double>(ny - 2), 3.0));
    // one-sided single comb: sum_{n >= NY} C (10/n)^4 <= 1e4 C / (3 (NY-1)^3);
    // use the coarser (NY-2) root for both variants
    double per_side = difference ? 2.0 * base : base;
    return 2.0 * pre * per_side;
}

namespace {

// difference comb of the truncated Fourier side under an exact dual shift:
// atoms at dual points y with weight pre*(gY(y*-t*) - gY(y*)), gY = g cut to
// [-Y, Y]
WeightedComb omega_diff_comb(DualPoint t, double Y, double patch_radius) {
    double alpha = std::abs(dual_star(t));
    double t_star = dual_star(t);
    ModelSetQuery q{Side::dual, Window::closed(-(Y + alpha), Y + alpha), -patch_radius,
                    patch_radius};
    auto res = enumerate_model_set(q);
    double pre = omega_prefactor();
    std::vector<Atom> atoms;
    atoms.reserve(res.points.size());
    for (const auto& p : res.points) {
        double shifted = p.star - t_star;
        double w = 0.0;
        if (std::abs(shifted) <= Y) w += pingpong_weight(shifted);
        if (std::abs(p.star) <= Y) w -= pingpong_weight(p.star);
        if (w != 0.0) atoms.push_back({p.position, {pre * w, 0.0}, ExactTag::dual(DualPoint(p.q))});
    }
    return WeightedComb::from_atoms(std::move(atoms));
}

// certified strip-by-strip cap of sup_s sum_{y in s+K, |y*|<=Y+alpha} |dg(y*)|
double omega_diff_head_cap(double alpha, double Y) {
    double pre = omega_prefactor();
    double lip = pingpong_lipschitz();
    auto ny = static_cast<std::int64_t>(std::ceil(10.0 * (Y + alpha))) + 1;
    double total = 0.0;
    for (std::int64_t n = -ny; n < ny; ++n) {
        // strip [n/10, (n+1)/10): closest point of the strip to the origin
        double lo = n / 10.0, hi = (n + 1) / 10.0;
        double u0 = (lo > 0.0) ? lo : (hi < 0.0 ? -hi : 0.0);
        double far = std::max(0.0, u0 - alpha);
        double by_lipschitz = alpha * std::min(lip, pingpong_weight_deriv_bound(far));
        double by_decay = g_abs_bound(far) + g_abs_bound(u0);
        total += std::min(by_lipschitz, by_decay);
    }
    return pre * total;
}

}  // namespace

AlmostPeriodReport certify_almost_period(DualPoint t, double alpha,
                                         const AlmostPeriodOptions& opts) {
    AlmostPeriodReport rep;
    rep.t = t;
    rep.t_position = dual_value(t);
    rep.t_star = dual_star(t);
    rep.alpha = alpha;
    rep.Y = opts.Y;
    rep.k_lo = opts.k_lo;
    rep.k_hi = opts.k_hi;
    if (std::abs(rep.t_star) > alpha + 1e-15)
        throw std::invalid_argument("certify_almost_period: |t*| exceeds alpha");
    rep.hypothesis_ok = alpha > 0.0 && alpha < 1.0 / 81.0;
    rep.paper_bound = 2507.0 * std::pow(alpha, 0.75);

    if (t.is_zero()) {
        rep.truncated_norm = 0.0;
        rep.head_cap = 0.0;
        rep.tail_bound = omega_tail_bound(opts.Y, true);
        rep.pass = rep.hypothesis_ok && rep.tail_bound < rep.paper_bound;
        return rep;
    }

    auto diff = omega_diff_comb(t, opts.Y, opts.patch_radius);
    rep.truncated_norm = window_norm(diff, opts.k_lo, opts.k_hi).value;
    rep.head_cap = omega_diff_head_cap(std::abs(rep.t_star), opts.Y);
    rep.tail_bound = omega_tail_bound(opts.Y, true);
    rep.pass = rep.hypothesis_ok && (rep.head_cap + rep.tail_bound < rep.paper_bound);
    return rep;
}

DiffractionAlmostPeriodReport certify_diffraction_almost_period(
    const std::vector<Atom>& points, double n, DualPoint t,
    const DiffractionAlmostPeriodOptions& opts) {
    DiffractionAlmostPeriodReport rep;
    rep.t = t;
    rep.t_position = dual_value(t);
    rep.t_star = dual_star(t);
    rep.alpha = std::abs(rep.t_star);
    rep.epsilon = opts.epsilon;
    rep.finite_size_tol = opts.finite_size_tol * std::sqrt(1e4 / n);

    auto ac_density = [&]() {
        double s = 0.0;
        for (const auto& a : points) s += std::norm(a.weight);
        return s / (2.0 * n);
    };
    rep.density = ac_density();

    // pure point approximant: I_n at dual atoms, difference after exact
    // re-alignment by t
    double Yg = opts.y_gamma;
    double ts = rep.t_star;
    ModelSetQuery q{Side::dual, Window::closed(-(Yg + rep.alpha), Yg + rep.alpha),
                    -opts.patch_radius, opts.patch_radius};
    auto res = enumerate_model_set(q);
    std::vector<double> weights(res.points.size());
    parallel_for(res.points.size(), [&](std::size_t i) {
        const auto& p = res.points[i];
        double w = 0.0;
        if (std::abs(p.star - ts) <= Yg) {
            // the atom of T_t gamma_hat at p comes from the dual point p - t
            DualPoint shifted = DualPoint(p.q) - t;
            w += bragg_intensity_amplitude(points, n, dual_value(shifted)).intensity;
        }
        if (std::abs(p.star) <= Yg)
            w -= bragg_intensity_amplitude(points, n, p.position).intensity;
        weights[i] = w;
    });
    std::vector<Atom> diff_atoms;
    diff_atoms.reserve(res.points.size());
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        const auto& p = res.points[i];
        if (weights[i] != 0.0)
            diff_atoms.push_back({p.position, {weights[i], 0.0}, ExactTag::dual(DualPoint(p.q))});
    }
    auto diff = WeightedComb::from_atoms(std::move(diff_atoms));
    rep.norm = window_norm(diff, 0.0, 1.0).value;

    // limit-measure budget for the discarded |k*| > Yg atoms: intensities decay
    // like (1/5)(1/(pi v))^2 and strips carry at most one atom per unit window
    auto nyg = static_cast<std::int64_t>(std::floor(10.0 * Yg));
    rep.tail_budget = 2.0 * 2.0 * (100.0 / (5.0 * M_PI * M_PI)) / (static_cast<double>(nyg) - 1.0);

    // fib3 comparison: || T_t gamma_hat - gamma_hat ||_[0,1] <= d * || T_t omega_hat - omega_hat ||_[-1/2,3/2]
    AlmostPeriodOptions aopts;
    aopts.Y = opts.Y;
    auto arep = certify_almost_period(t, std::max(rep.alpha, 1e-300), aopts);
    rep.omega_norm = arep.truncated_norm;
    rep.omega_cap = arep.head_cap + arep.tail_bound;
    rep.fib3_rhs = rep.density * rep.omega_cap;
    rep.pass_fib3 = rep.norm <= rep.fib3_rhs + rep.finite_size_tol;
    if (opts.epsilon > 0.0)
        rep.pass_epsilon = rep.norm + rep.tail_budget < opts.epsilon + rep.finite_size_tol;
    return rep;
}

PingIdentityReport ping_identity_check(const std::vector<Atom>& points, double n, double k_lo,
                                       double k_hi, double truncation_y,
                                       const PingIdentityOptions& opts) {
    if (points.empty()) throw std::invalid_argument("ping_identity_check: empty point set");
    PingIdentityReport rep;
    rep.tol = opts.tol;
    double pre = omega_prefactor();
    double c = quartic_tail_constant();

    {
        double s = 0.0;
        for (const auto& a : points) s += std::norm(a.weight);
        rep.density = s / (2.0 * n);
    }

    Phi phi = build_phi(false, opts.phi_halfwidth);

    // nu = |phi-check|^2 gamma_hat, truncated to |k| <= r_nu, |k*| <= y_nu
    ModelSetQuery qnu{Side::dual, Window::closed(-opts.y_nu, opts.y_nu), -opts.r_nu, opts.r_nu};
    auto nu_pts = enumerate_model_set(qnu);
    struct NuAtom {
        double pos, star, mass;
    };
    std::vector<NuAtom> nu(nu_pts.points.size());
    parallel_for(nu_pts.points.size(), [&](std::size_t i) {
        const auto& p = nu_pts.points[i];
        double inten = bragg_intensity_amplitude(points, n, p.position).intensity;
        nu[i] = {p.position, p.star, phi.check_abs2(p.position, true) * inten};
    });
    for (const auto& a : nu) rep.nu_mass += a.mass;

    // gamma_hat atoms in the k-window
    ModelSetQuery qg{Side::dual, Window::closed(-truncation_y, truncation_y), k_lo, k_hi};
    auto gamma_pts = enumerate_model_set(qg);
    std::vector<double> errors(gamma_pts.points.size(), -1.0);
    parallel_for(gamma_pts.points.size(), [&](std::size_t i) {
        const auto& p = gamma_pts.points[i];
        if (std::abs(p.star) > opts.y_gamma) return;
        double lhs = bragg_intensity_amplitude(points, n, p.position).intensity;
        double rhs = 0.0;
        for (const auto& a : nu) {
            double v = p.star - a.star;
            if (std::abs(v) <= truncation_y) rhs += pre * pingpong_weight(v) * a.mass;
        }
        errors[i] = std::abs(lhs - rhs);
    });
    for (std::size_t i = 0; i < gamma_pts.points.size(); ++i) {
        if (errors[i] < 0.0) continue;
        ++rep.atoms_checked;
        if (errors[i] > rep.max_abs_error) {
            rep.max_abs_error = errors[i];
            rep.worst_k = gamma_pts.points[i].position;
        }
    }

    // certified truncation budget
    const double i_sup = kGolden * kGolden / 5.0;   // intensity never exceeds I(0)
    const double phi0 = phi.check_abs2(0.0, true);
    // |phi-check|^2 <= phi_c / k^4 from |sinc| <= 1/|x|
    const double phi_c = 1.0 / (phi.autocorr0.to_double() * std::pow(M_PI, 4.0));
    // physical nu tail: windows of length 2 beyond r_nu, <= 20*y_nu + 2 atoms each
    double strips = 2.0 * 10.0 * opts.y_nu + 2.0;
    double tail_phys = 2.0 * strips * phi_c * i_sup /
                       (6.0 * std::pow(opts.r_nu - 2.0, 3.0));
    // internal nu tail: strips beyond y_nu, intensity <= (1/5)(10/(pi n))^2, and
    // the per-unit phi envelope sums to S_phi
    double s_phi = 2.0 * phi0;
    for (int j = 1; j < 10000; ++j) s_phi += 2.0 * phi_c / std::pow(2.0 * j, 4.0);
    double tail_int =
        s_phi * 2.0 * (20.0 / (M_PI * M_PI)) / (10.0 * opts.y_nu - 1.0);
    // omega weight truncation for |p* - k'*| > Y
    double tail_g = (c / std::pow(truncation_y, 4.0)) * rep.nu_mass;
    rep.truncation_budget = pre * (tail_phys + tail_int + tail_g);
    rep.pass = rep.max_abs_error <= rep.tol + rep.truncation_budget;
    return rep;
}

double lattice_psf_error(std::int64_t m_max) {
    // Poisson summation for the tent under the autocorrelation normalization:
    // sum over integers of |phi-check|^2 = (phi * ~phi)(0) = 1.
    Phi phi = build_phi(false);
    double s = 0.0;
    for (std::int64_t m = m_max; m >= 1; --m) {
        double v = phi.check_abs2(static_cast<double>(m), true);
        s += 2.0 * v;
    }
    s += phi.check_abs2(0.0, true);
    return std::abs(s - 1.0);
}

SincLipschitzResult sinc_lipschitz_check(double a, double b, std::int64_t grid_points) {
    if (!(a > 0) || !(b > 0)) throw std::invalid_argument("sinc_lipschitz_check: need a, b > 0");
    SincLipschitzResult out;
    out.bound = (a + 3.0 * b) / 2.0;
    // |g'| decays quartically; pick L so the analytic bound beyond L is below
    // the grid resolution of the supremum
    double L = 60.0 / std::min(a, b) + 10.0;
    auto deriv = [&](double x) {
        double sa = sinc(a * x), sb = sinc(b * x);
        return a * sinc_deriv(a * x) * sb * sb * sb +
               3.0 * b * sa * sinc_deriv(b * x) * sb * sb;
    };
    double sup = 0.0;
    double h = 2.0 * L / static_cast<double>(grid_points);
    for (std::int64_t i = 0; i <= grid_points; ++i) {
        double x = -L + h * static_cast<double>(i);
        sup = std::max(sup, std::abs(deriv(x)));
    }
    // second-derivative pad: |g''| <= a^2/2 + 3ab/2 + 3b^2
    double m2 = 0.5 * a * a + 1.5 * a * b + 3.0 * b * b;
    out.numeric_sup = sup + 0.5 * m2 * h;
    out.pass = out.numeric_sup <= out.bound;
    return out;
}

}  // namespace fibdiff
