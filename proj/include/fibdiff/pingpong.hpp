#pragma once

// The ping-pong machinery for the Fibonacci scheme: the bump h built from an
// exact box-convolution cascade, the auxiliary function phi, the pure point
// Fourier side with sinc-product weights, norm-almost-period certificates and
// the atomwise convolution identity check.

#include <cstdint>
#include <string>
#include <vector>

#include "fibdiff/diffraction.hpp"
#include "fibdiff/measures.hpp"
#include "fibdiff/piecewise_poly.hpp"

namespace fibdiff {

// sin(x)/x with a Taylor branch near zero
double sinc(double x);
double sinc_deriv(double x);

// g(u) = sinc(2 pi (tau+1) u) * sinc^3((2 pi / 3) u): the weight profile of
// the Fourier transform of the ping-pong measure, as a function of the
// internal coordinate.
double pingpong_weight(double u);

// (3 + sqrt5)/sqrt5, the atom weight at the origin of the Fourier side
double omega_prefactor();

// |g(u)| <= quartic_tail_constant()/u^4
double quartic_tail_constant();

// global Lipschitz constant of g: (a + 3b)/2 = pi (tau + 2)
double pingpong_lipschitz();

// upper bound for |g'(u)| valid for all |u| >= u0 >= 0
double pingpong_weight_deriv_bound(double u0);

// --- exact constructions ----------------------------------------------------

// h = (27/8) box[-(tau+1), tau+1] * box[-1/3,1/3]^{*3}; plateau of height 1 on
// [-tau, tau], support [-(tau+2), tau+2].
PiecewisePoly build_h();

struct Phi {
    PiecewisePoly tent;    // unnormalized box[-h0,h0]*box[-h0,h0]
    QuadRat halfwidth;     // h0 (1/8, or 1/8 - 1e-6 in strict mode)
    QuadRat integral;      // exact integral of the tent
    QuadRat autocorr0;     // exact (tent * ~tent)(0) = integral of tent^2

    // normalization A: integral of phi = 1 (exact rational scale)
    PiecewisePoly poly_integral_one() const;
    double scale_integral_one() const;
    // normalization B: (phi * ~phi)(0) = 1 (irrational scale, applied at
    // evaluation time)
    double scale_autocorr_one() const;
    // |inverse Fourier transform of phi|^2 under either convention
    double check_abs2(double k, bool convention_autocorr_one) const;
};

// The default box halfwidth 1/8 gives supp(phi) = [-1/4, 1/4]. Note that the
// atomwise convolution identity is exact only when supp(phi * ~phi) avoids
// the smallest nonzero difference between the supports of the autocorrelation
// and of the ping-pong measure, |2 tau - 3| = 0.2360...; halfwidths at or
// below 1/18 are inside that threshold, 1/8 is not (see ping_identity_check).
Phi build_phi(bool strict_support = false, Rational box_halfwidth = Rational(1, 8));

// closed form (3 + sqrt5) g(k) for the Fourier transform of h
double h_hat(double k);

// independent oracle: composite Gauss-Legendre quadrature of
// int h(x) e^{2 pi i k x} dx (real part; h is even)
double h_hat_quadrature(const PiecewisePoly& h, double k);

// --- Fourier side of the ping-pong measure ----------------------------------

struct OmegaHatComb {
    WeightedComb comb;           // atoms at dual positions, weight pre * g(y*)
    double truncation_y = 0.0;   // |y*| <= Y
    double x_min = 0.0, x_max = 0.0;
    double tail_per_len2_window = 0.0;  // certified |weight| tail for any window of length 2
};

OmegaHatComb omega_hat_comb(double truncation_y, double x_min, double x_max);

// Certified bound on the discarded |g| mass per window of length <= 2, for a
// single comb (difference = false) or for a translate difference whose shift
// has internal size at most 1/10 (difference = true).
double omega_tail_bound(double truncation_y, bool difference);

// --- almost-period certificates ----------------------------------------------

struct AlmostPeriodReport {
    DualPoint t;
    double t_position = 0.0;
    double t_star = 0.0;
    double alpha = 0.0;           // window radius with |t*| <= alpha
    double truncated_norm = 0.0;  // sliding-window sweep over the patch
    double head_cap = 0.0;        // certified strip upper bound for the |y*| <= Y part
    double tail_bound = 0.0;      // certified |y*| > Y budget
    double paper_bound = 0.0;     // 2507 alpha^{3/4}
    double Y = 0.0;
    double k_lo = -0.5, k_hi = 1.5;
    bool hypothesis_ok = false;   // alpha < 1/81
    bool pass = false;            // head_cap + tail_bound < paper_bound
};

struct AlmostPeriodOptions {
    double Y = 50.0;
    double k_lo = -0.5;
    double k_hi = 1.5;
    double patch_radius = 120.0;  // enumeration range for the sweep
};

// || T_t omega_hat - omega_hat ||_K against the 2507 alpha^{3/4} bound.
AlmostPeriodReport certify_almost_period(DualPoint t, double alpha,
                                         const AlmostPeriodOptions& opts = {});

// --- diffraction almost periods ----------------------------------------------

struct DiffractionAlmostPeriodReport {
    DualPoint t;
    double t_position = 0.0;
    double t_star = 0.0;
    double alpha = 0.0;
    double norm = 0.0;            // || T_t gamma_hat - gamma_hat ||_[0,1] on the patch
    double tail_budget = 0.0;     // limit-measure bound for the discarded |k*| > Ygamma atoms
    double density = 0.0;         // measured eta(0)
    double omega_norm = 0.0;      // sweep norm of T_t omega_hat - omega_hat
    double omega_cap = 0.0;       // certified head cap + tail for the same
    double fib3_rhs = 0.0;        // density * omega_cap
    double epsilon = 0.0;         // requested grade (0 if not requested)
    double finite_size_tol = 0.0;
    bool pass_fib3 = false;       // norm <= fib3_rhs + tol
    bool pass_epsilon = false;    // norm + tail < epsilon + tol (when epsilon > 0)
};

struct DiffractionAlmostPeriodOptions {
    double Y = 50.0;              // omega-hat truncation for the fib3 comparison
    double y_gamma = 20.0;        // internal truncation of the diffraction approximant
    double patch_radius = 12.0;   // positions [-R, R] carry the approximant atoms
    double finite_size_tol = 0.05;
    double epsilon = 0.0;
};

DiffractionAlmostPeriodReport certify_diffraction_almost_period(
    const std::vector<Atom>& points, double n, DualPoint t,
    const DiffractionAlmostPeriodOptions& opts = {});

// --- ping identity ------------------------------------------------------------

struct PingIdentityReport {
    double max_abs_error = 0.0;       // max over gamma-hat atoms in the k-window
    double worst_k = 0.0;
    double nu_mass = 0.0;             // total mass of nu (close to the density)
    double density = 0.0;
    double truncation_budget = 0.0;   // certified bound for the discarded nu mass
    int atoms_checked = 0;
    bool pass = false;                // max_abs_error <= tol + truncation_budget
    double tol = 0.0;
};

struct PingIdentityOptions {
    double y_gamma = 20.0;   // internal truncation of gamma-hat atoms
    double y_nu = 50.0;      // internal truncation of nu
    double r_nu = 40.0;      // physical truncation of nu
    double tol = 1e-2;
    Rational phi_halfwidth{1, 8};  // box halfwidth of the auxiliary function
};

// Checks gamma_hat = omega_hat * nu atomwise on the pure point approximant,
// nu = |phi-check|^2 gamma_hat under the (phi*~phi)(0) = 1 convention.
PingIdentityReport ping_identity_check(const std::vector<Atom>& points, double n, double k_lo,
                                       double k_hi, double truncation_y,
                                       const PingIdentityOptions& opts = {});

// Degenerate lattice oracle: for the integer lattice the identity collapses to
// sum over integers of |phi-check|^2 = 1 (Poisson summation). Returns the
// absolute defect of the truncated sum.
double lattice_psf_error(std::int64_t m_max = 100000);

// --- Lipschitz estimate --------------------------------------------------------

struct SincLipschitzResult {
    double numeric_sup = 0.0;  // max |g'| on the grid plus a second-derivative pad
    double bound = 0.0;        // (a + 3b)/2
    bool pass = false;
};

SincLipschitzResult sinc_lipschitz_check(double a, double b, std::int64_t grid_points = 1000000);

}  // namespace fibdiff
