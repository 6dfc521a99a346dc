#pragma once

// Model set enumeration for the Fibonacci cut-and-project scheme.
//
// Direct side:  points x = m + n*tau with star(x) = m + n*tau' in a window.
// Dual side:    points u/sqrt5 with internal part (m*tau - n)/sqrt5 in a window,
//               u = n - m*tau'.
//
// Window endpoints are either exact elements of Q(tau) (membership decided by
// integer sign tests) or plain doubles (membership decided in floating point
// with a guard band; near-boundary hits are counted and reported).

#include <cstdint>
#include <optional>
#include <vector>

#include "fibdiff/quadfield.hpp"

namespace fibdiff {

struct WindowBound {
    double value = 0.0;
    std::optional<QuadRat> exact;

    WindowBound() = default;
    WindowBound(double v) : value(v) {}                                  // NOLINT: implicit by design
    WindowBound(const QuadRat& q) : value(q.to_double()), exact(q) {}    // NOLINT
};

struct Window {
    WindowBound lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    Window() = default;
    Window(WindowBound lo_, WindowBound hi_, bool lc = true, bool hc = true)
        : lo(lo_), hi(hi_), lo_closed(lc), hi_closed(hc) {}

    static Window closed(double a, double b) { return Window(a, b, true, true); }
    static Window open(double a, double b) { return Window(a, b, false, false); }
    // The Fibonacci window [-1, tau-1), exact.
    static Window fibonacci();
    // [-a, a] or (-a, a) with exact rational radius
    static Window symmetric_exact(Rational a, bool closed_ends);
    static Window symmetric_exact(QuadRat a, bool closed_ends);

    double width() const { return hi.value - lo.value; }
    bool is_exact() const { return lo.exact && hi.exact; }
};

enum class Side { direct, dual };

struct ModelSetQuery {
    Side side = Side::direct;
    Window window;
    double x_min = 0.0;
    double x_max = 0.0;
};

struct ModelPoint {
    QuadInt q;        // direct: the element itself; dual: the numerator u
    double position;  // direct: embed(q); dual: embed(u)/sqrt5
    double star;      // internal coordinate
};

struct EnumerationResult {
    std::vector<ModelPoint> points;  // sorted by position
    std::int64_t guard_hits = 0;     // float comparisons within the guard band
};

inline constexpr double kGuardBand = 1e-12;

// Exact-when-possible membership of a point's internal coordinate in a window.
// For direct points pass star(q); for dual points pass star_numerator(u) and
// set dual = true (the value tested is then numerator/sqrt5).
bool window_contains_direct(const Window& w, QuadInt star_q, std::int64_t* guard_hits);
bool window_contains_dual(const Window& w, QuadInt star_numerator, std::int64_t* guard_hits);

// All points of the (direct or dual) model set with position in
// [x_min, x_max] and internal coordinate in the window. Sorted by position.
EnumerationResult enumerate_model_set(const ModelSetQuery& query);

// Largest gap between consecutive points inside [a, b], counting the boundary
// gaps from a to the first point and from the last point to b.
// Throws if fewer than two points lie in [a, b].
double max_gap(const std::vector<double>& sorted_positions, double a, double b);

// sup of |e^{2 pi i chi_star t} - 1| over t in [-c, c]:
// 2*sin(pi*|chi_star|*c) when |chi_star|*c <= 1/2, else 2.
double s_chi(double chi_star, double window_halfwidth);

struct EpsDualParams {
    double epsilon = 0.5;                 // in (0,1)
    double window_halfwidth = kGolden;    // c with W-W contained in (-c, c); tau for Fib
};

struct DualSetPoint {
    DualPoint p;
    double position;
    double star;
};

// B_eps: dual model set of the closed window [-eps/(2 pi tau), eps/(2 pi tau)],
// restricted to positions in [x_min, x_max].
std::vector<DualSetPoint> b_epsilon(const EpsDualParams& params, double x_min, double x_max);

// Exact check that [m*tau, m*tau + 1/5] contains no integer, m in {-3,-2,-1,1}.
bool check_no_integer_in(std::int64_t m);

struct UniformDiscretenessResult {
    bool exact_reduction_ok = false;   // dual lattice meets [-1,3]x[0,1/5] only at (0,0)
    std::vector<DualPoint> reduction;  // the points found by the exact reduction
    std::int64_t max_count = 0;        // max hits over sampled translates of [-1/2,3/2]x[0,1/10]
    std::int64_t zero_count = 0;       // sampled translates containing no point
    bool ok() const { return exact_reduction_ok && max_count <= 1; }
};

UniformDiscretenessResult check_dual_uniform_discreteness(int num_trials, std::uint64_t rng_seed);

// Dual points t with |t_star| <= alpha, 0 < |t| bounded by a range wide enough
// to contain at least `count` of them; a deterministic sample of `count`
// points drawn with the given seed. Used for almost-period certificates.
std::vector<DualPoint> sample_dual_points(double alpha, int count, std::uint64_t rng_seed);

}  // namespace fibdiff
