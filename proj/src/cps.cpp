#include "fibdiff/cps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fibdiff {

Window Window::fibonacci() {
    return Window(QuadRat(Rational(-1)), QuadRat(Rational(-1), Rational(1)), true, false);
}

Window Window::symmetric_exact(Rational a, bool closed_ends) {
    return Window(QuadRat(-a), QuadRat(a), closed_ends, closed_ends);
}

Window Window::symmetric_exact(QuadRat a, bool closed_ends) {
    return Window(-a, a, closed_ends, closed_ends);
}

namespace {

// value vs bound comparison shared by both sides. `cmp_exact` decides the sign
// of (coordinate - bound) exactly when the bound is exact; otherwise the float
// coordinate is compared against the float bound with the guard band.
template <typename ExactCmp>
bool side_ok(double coord, const WindowBound& bound, bool closed, bool is_lower,
             ExactCmp cmp_exact, std::int64_t* guard_hits) {
    if (bound.exact) {
        int s = cmp_exact(*bound.exact);
        if (s == 0) return closed;
        return is_lower ? s > 0 : s < 0;
    }
    double diff = coord - bound.value;
    if (std::abs(diff) <= kGuardBand && guard_hits) ++(*guard_hits);
    if (diff == 0.0) return closed;
    return is_lower ? diff > 0.0 : diff < 0.0;
}

}  // namespace

bool window_contains_direct(const Window& w, QuadInt star_q, std::int64_t* guard_hits) {
    double coord = embed(star_q);
    QuadRat sq = QuadRat::from_quadint(star_q);
    bool lo_ok = side_ok(
        coord, w.lo, w.lo_closed, true,
        [&](const QuadRat& b) { return sign(sq - b); }, guard_hits);
    if (!lo_ok) return false;
    return side_ok(
        coord, w.hi, w.hi_closed, false,
        [&](const QuadRat& b) { return sign(sq - b); }, guard_hits);
}

bool window_contains_dual(const Window& w, QuadInt star_numerator, std::int64_t* guard_hits) {
    double coord = embed(star_numerator) / kSqrt5;
    QuadRat sn = QuadRat::from_quadint(star_numerator);
    // compare numerator/sqrt5 with bound b: sign(numerator - b*sqrt5)
    bool lo_ok = side_ok(
        coord, w.lo, w.lo_closed, true,
        [&](const QuadRat& b) { return sign(sn - b * QuadRat::sqrt5()); }, guard_hits);
    if (!lo_ok) return false;
    return side_ok(
        coord, w.hi, w.hi_closed, false,
        [&](const QuadRat& b) { return sign(sn - b * QuadRat::sqrt5()); }, guard_hits);
}

namespace {

void validate_query(const ModelSetQuery& q) {
    if (!(q.x_min <= q.x_max) || !std::isfinite(q.x_min) || !std::isfinite(q.x_max))
        throw std::invalid_argument("enumerate_model_set: range must be finite with x_min <= x_max");
    if (!std::isfinite(q.window.lo.value) || !std::isfinite(q.window.hi.value) ||
        !(q.window.lo.value <= q.window.hi.value))
        throw std::invalid_argument("enumerate_model_set: window must be bounded with lo <= hi");
}

constexpr int kPad = 2;  // coefficient box padding against float rounding

}  // namespace

EnumerationResult enumerate_model_set(const ModelSetQuery& query) {
    validate_query(query);
    EnumerationResult out;
    const double wlo = query.window.lo.value, whi = query.window.hi.value;
    const double xmin = query.x_min, xmax = query.x_max;

    if (query.side == Side::direct) {
        // x = m + n*tau in [xmin, xmax], x* = m + n*tau' in [wlo, whi]
        // n = (x - x*)/sqrt5, m from either constraint.
        auto n_lo = static_cast<std::int64_t>(std::floor((xmin - whi) / kSqrt5)) - kPad;
        auto n_hi = static_cast<std::int64_t>(std::ceil((xmax - wlo) / kSqrt5)) + kPad;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            double m_from_range_lo = xmin - n * kGolden;
            double m_from_range_hi = xmax - n * kGolden;
            double m_from_win_lo = wlo - n * kGoldenConj;
            double m_from_win_hi = whi - n * kGoldenConj;
            auto m_lo = static_cast<std::int64_t>(
                            std::floor(std::max(m_from_range_lo, m_from_win_lo))) -
                        kPad;
            auto m_hi = static_cast<std::int64_t>(
                            std::ceil(std::min(m_from_range_hi, m_from_win_hi))) +
                        kPad;
            for (std::int64_t m = m_lo; m <= m_hi; ++m) {
                QuadInt x{m, n};
                double pos = embed(x);
                if (pos < xmin || pos > xmax) continue;
                QuadInt xs = star(x);
                if (!window_contains_direct(query.window, xs, &out.guard_hits)) continue;
                out.points.push_back({x, pos, embed(xs)});
            }
        }
    } else {
        // position p = (n - m*tau')/sqrt5, internal s = (m*tau - n)/sqrt5;
        // p + s = m, so m runs over [xmin + wlo, xmax + whi].
        auto m_lo = static_cast<std::int64_t>(std::floor(xmin + wlo)) - kPad;
        auto m_hi = static_cast<std::int64_t>(std::ceil(xmax + whi)) + kPad;
        for (std::int64_t m = m_lo; m <= m_hi; ++m) {
            // n in [m*tau - sqrt5*whi, m*tau - sqrt5*wlo]
            double base = m * kGolden;
            auto n_lo = static_cast<std::int64_t>(std::floor(base - kSqrt5 * whi)) - kPad;
            auto n_hi = static_cast<std::int64_t>(std::ceil(base - kSqrt5 * wlo)) + kPad;
            for (std::int64_t n = n_lo; n <= n_hi; ++n) {
                DualPoint p = DualPoint::from_mn(m, n);
                double pos = dual_value(p);
                if (pos < xmin || pos > xmax) continue;
                if (!window_contains_dual(query.window, p.star_numerator(), &out.guard_hits))
                    continue;
                out.points.push_back({p.u, pos, dual_star(p)});
            }
        }
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const ModelPoint& a, const ModelPoint& b) { return a.position < b.position; });
    return out;
}

double max_gap(const std::vector<double>& sorted_positions, double a, double b) {
    if (!(a <= b)) throw std::invalid_argument("max_gap: need a <= b");
    auto first = std::lower_bound(sorted_positions.begin(), sorted_positions.end(), a);
    auto last = std::upper_bound(first, sorted_positions.end(), b);
    auto count = static_cast<std::size_t>(last - first);
    if (count < 2) throw std::invalid_argument("max_gap: fewer than two points in segment");
    double best = *first - a;
    for (auto it = first + 1; it != last; ++it) best = std::max(best, *it - *(it - 1));
    best = std::max(best, b - *(last - 1));
    return best;
}

double s_chi(double chi_star, double window_halfwidth) {
    if (!(window_halfwidth > 0)) throw std::invalid_argument("s_chi: halfwidth must be positive");
    double x = std::abs(chi_star) * window_halfwidth;
    if (x >= 0.5) return 2.0;
    return 2.0 * std::sin(M_PI * x);
}

std::vector<DualSetPoint> b_epsilon(const EpsDualParams& params, double x_min, double x_max) {
    if (!(params.epsilon > 0.0) || !(params.epsilon < 1.0))
        throw std::invalid_argument("b_epsilon: epsilon must lie in (0,1)");
    double radius = params.epsilon / (2.0 * M_PI * kGolden);
    ModelSetQuery q{Side::dual, Window::closed(-radius, radius), x_min, x_max};
    auto res = enumerate_model_set(q);
    std::vector<DualSetPoint> out;
    out.reserve(res.points.size());
    for (const auto& mp : res.points) out.push_back({DualPoint(mp.q), mp.position, mp.star});
    return out;
}

bool check_no_integer_in(std::int64_t m) {
    if (m != 1 && m != -1 && m != -2 && m != -3)
        throw std::invalid_argument("check_no_integer_in: m must be in {-3,-2,-1,1}");
    QuadRat mtau = QuadRat(Rational(0), Rational(m));
    std::int64_t k = floor_exact(mtau) + 1;  // = ceil, m*tau irrational
    // no integer in [m*tau, m*tau + 1/5]  <=>  k > m*tau + 1/5
    return sign(QuadRat(Rational(k)) - mtau - QuadRat(Rational(1, 5))) > 0;
}

UniformDiscretenessResult check_dual_uniform_discreteness(int num_trials, std::uint64_t rng_seed) {
    UniformDiscretenessResult res;

    // Exact reduction: differences of two points of a translate of
    // [-1/2, 3/2] x [0, 1/10] lie in [-2, 2] x [-1/10, 1/10]; the dual lattice
    // meets that box only at the origin.
    {
        Window internal(QuadRat(Rational(-1, 10)), QuadRat(Rational(1, 10)), true, true);
        ModelSetQuery q{Side::dual, internal, -2.5, 2.5};  // float range with margin
        auto found = enumerate_model_set(q);
        QuadRat lo_bound = QuadRat(-2) * QuadRat::sqrt5();  // position >= -2 <=> u >= -2 sqrt5
        QuadRat hi_bound = QuadRat(2) * QuadRat::sqrt5();
        for (const auto& mp : found.points) {
            QuadRat u = QuadRat::from_quadint(mp.q);
            if (sign(u - lo_bound) < 0 || sign(u - hi_bound) > 0) continue;  // exact range filter
            res.reduction.push_back(DualPoint(mp.q));
        }
        res.exact_reduction_ok =
            res.reduction.size() == 1 && res.reduction.front().is_zero();
    }

    // Random translates of [-1/2, 3/2] x [0, 1/10]: the dual lattice meets each
    // at most once.
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> pos_dist(-50.0, 50.0);
    std::uniform_real_distribution<double> star_dist(-60.0, 60.0);
    for (int i = 0; i < num_trials; ++i) {
        double c1 = pos_dist(rng), c2 = star_dist(rng);
        ModelSetQuery q{Side::dual, Window::closed(c2, c2 + 0.1), c1 - 0.5, c1 + 1.5};
        auto found = enumerate_model_set(q);
        auto cnt = static_cast<std::int64_t>(found.points.size());
        res.max_count = std::max(res.max_count, cnt);
        if (cnt == 0) ++res.zero_count;
    }
    return res;
}

std::vector<DualPoint> sample_dual_points(double alpha, int count, std::uint64_t rng_seed) {
    if (!(alpha > 0)) throw std::invalid_argument("sample_dual_points: alpha must be positive");
    if (count <= 0) return {};
    // Density of the dual set with |star| <= alpha is 2*alpha*sqrt5 per unit
    // length; widen the range until enough candidates exist.
    double range = std::max(100.0, 3.0 * count / (2.0 * alpha * std::sqrt(5.0)));
    std::vector<DualSetPoint> candidates;
    for (int attempt = 0; attempt < 8; ++attempt) {
        ModelSetQuery q{Side::dual, Window::closed(-alpha, alpha), -range, range};
        auto res = enumerate_model_set(q);
        candidates.clear();
        for (const auto& mp : res.points)
            if (!mp.q.is_zero()) candidates.push_back({DualPoint(mp.q), mp.position, mp.star});
        if (static_cast<int>(candidates.size()) >= count) break;
        range *= 2.0;
    }
    if (static_cast<int>(candidates.size()) < count)
        throw std::runtime_error("sample_dual_points: not enough candidates");
    std::vector<std::size_t> idx(candidates.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::mt19937_64 rng(rng_seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<DualPoint> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(candidates[idx[i]].p);
    std::sort(out.begin(), out.end(),
              [](DualPoint a, DualPoint b) { return dual_value(a) < dual_value(b); });
    return out;
}

}  // namespace fibdiff
