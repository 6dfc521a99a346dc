#pragma once

// Bragg intensity estimation at finite averaging radius by two independent
// routes, lower-bound verification for arbitrary subsets of the Fibonacci
// model set, and smoothed-periodogram estimation of the continuous background.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fibdiff/cps.hpp"
#include "fibdiff/measures.hpp"

namespace fibdiff {

enum class BraggMethod { autocorr_sum, amplitude_sq };

struct BraggEstimate {
    double k = 0.0;
    std::optional<DualPoint> k_point;
    double intensity = 0.0;
    double n = 0.0;
    BraggMethod method = BraggMethod::amplitude_sq;
    double imag_residual = 0.0;  // autocorr route consistency diagnostic
};

// |(1/2n) sum_x c_x e^{-2 pi i k x}|^2
BraggEstimate bragg_intensity_amplitude(const std::vector<Atom>& points, double n, double k);

// (1/2r) sum_{|z| <= r} e^{-2 pi i k z} eta_n(z) * 2n/(2n - |z|)
// The edge factor undoes the triangular pair-count taper of eta_n so the sum
// averages the unbiased autocorrelation coefficients; r defaults to n.
BraggEstimate bragg_intensity_autocorr(const AutocorrEstimate& ac, double k,
                                       double sum_radius = 0.0);

struct LowerBoundReport {
    double k = 0.0;
    double k_star = 0.0;
    DualPoint k_point;
    double intensity = 0.0;           // amplitude-squared estimate
    double intensity_autocorr = 0.0;  // independent route
    double bound = 0.0;               // (1 - 2 pi |k*| tau) I
    double bound_eps = 0.0;           // (1 - eps) I
    double bound_schi = 0.0;          // (1 - s(chi)) I
    double finite_size_tol = 0.0;
    bool pass = false;     // both estimates >= bound - tol
    bool agree = false;    // |amplitude - autocorr| <= agreement tol
};

struct BraggVerification {
    double n = 0.0;
    double eps = 0.0;
    double intensity_origin = 0.0;       // I estimate (amplitude route)
    double intensity_origin_ac = 0.0;
    bool vacuous = false;                // I <= 0: the lower bounds are vacuous
    double finite_size_tol = 0.0;
    double agreement_tol = 0.0;
    std::vector<LowerBoundReport> reports;
    bool all_pass() const {
        if (vacuous) return true;
        for (const auto& r : reports)
            if (!r.pass || !r.agree) return false;
        return true;
    }
};

// For every k in B_eps with position in [x_min, x_max], check that the
// measured intensity clears (1 - 2 pi |k*| tau) I - tol. tol defaults to
// 0.05 * I at n = 1e4 and scales as n^{-1/2}.
BraggVerification verify_bragg_lower_bounds(const std::vector<Atom>& points, double n, double eps,
                                            double x_min, double x_max,
                                            double tol_scale = 0.05, double agree_scale = 0.02);

struct Figure1Row {
    double k = 0.0;
    double k_star = 0.0;
    double lower_bound_fraction = 0.0;  // 1 - 2 pi |k*| tau, in (0, 1]
};

// Data behind the common-Bragg-peak picture: every k in B_1 with a positive
// bound fraction, over [x_min, x_max].
std::vector<Figure1Row> figure1_data(double x_min, double x_max);

struct PeriodogramPoint {
    double k = 0.0;
    double density = 0.0;
    int samples_used = 0;
};

struct PeriodogramOptions {
    int samples_per_side = 100;      // grid offsets on each side of k0
    double peak_mask_star = 12.0;    // mask dual points with |k*| below this
    double strong_peak_star = 0.75;  // peaks below this |k*| get the wide mask
    double core_mask_scale = 25.0;   // narrow mask radius = scale / (2n)
};

// Kernel-smoothed |amplitude|^2 estimate (scaled by 2n) of the absolutely
// continuous density between Bragg peaks. Samples within the peak masks are
// skipped. Each k0 must stay at least 2*bandwidth away from the strong peaks.
std::vector<PeriodogramPoint> smoothed_periodogram(const std::vector<Atom>& points, double n,
                                                   const std::vector<double>& k_grid,
                                                   double bandwidth,
                                                   const PeriodogramOptions& opts = {});

// --- named point sets -------------------------------------------------------

// Fib intersected with [-n, n], unit weights, exact tags.
std::vector<Atom> fib_points(double n);

std::vector<Atom> bernoulli_thin(const std::vector<Atom>& points, double p, std::uint64_t seed);
std::vector<Atom> stride_thin(const std::vector<Atom>& points, std::int64_t k);

// Subset grammar: full | bernoulli:p=<f>:seed=<u64> | stride:k=<int> | file:<path>
struct SubsetSpec {
    enum class Kind { full, bernoulli, stride, file, empty } kind = Kind::full;
    double p = 1.0;
    std::uint64_t seed = 0;
    std::int64_t k = 1;
    std::string path;

    static SubsetSpec parse(const std::string& text);
    std::vector<Atom> materialize(double n) const;
    std::string describe() const;
};

}  // namespace fibdiff
