#include "fibdiff/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>

namespace fibdiff {

namespace {

// value of sum c_k u^k at exact u
QuadRat poly_eval(const std::vector<QuadRat>& c, const QuadRat& u) {
    QuadRat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

double poly_eval(const std::vector<QuadRat>& c, double u) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + it->to_double();
    return acc;
}

// rewrite sum c_k u^k as a polynomial in v = u - s  (u = v + s)
std::vector<QuadRat> poly_shift(const std::vector<QuadRat>& c, const QuadRat& s) {
    std::vector<QuadRat> out(c.size(), QuadRat(0));
    // Horner on coefficients: repeatedly multiply by (v + s)
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        // out = out * (v + s) + c_k
        QuadRat carry(0);
        for (std::size_t i = out.size(); i-- > 0;) {
            QuadRat next = (i > 0 ? out[i - 1] : QuadRat(0));
            out[i] = next + out[i] * s;
        }
        (void)carry;
        out[0] = out[0] + *it;
    }
    return out;
}

std::vector<QuadRat> poly_antiderivative(const std::vector<QuadRat>& c) {
    std::vector<QuadRat> out(c.size() + 1, QuadRat(0));
    for (std::size_t k = 0; k < c.size(); ++k)
        out[k + 1] = QuadRat(Rational(1, static_cast<std::int64_t>(k + 1))) * c[k];
    return out;
}

std::vector<QuadRat> poly_mul(const std::vector<QuadRat>& a, const std::vector<QuadRat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<QuadRat> out(a.size() + b.size() - 1, QuadRat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

bool poly_is_zero(const std::vector<QuadRat>& c) {
    for (const auto& q : c)
        if (!q.is_zero()) return false;
    return true;
}

}  // namespace

void PiecewisePoly::cache_floats() {
    fbreaks_.clear();
    fbreaks_.reserve(breaks_.size());
    for (const auto& b : breaks_) fbreaks_.push_back(b.to_double());
}

PiecewisePoly PiecewisePoly::box(const QuadRat& lo, const QuadRat& hi) {
    if (sign(hi - lo) <= 0) throw std::invalid_argument("PiecewisePoly::box: need lo < hi");
    PiecewisePoly p;
    p.breaks_ = {lo, hi};
    p.pieces_ = {{QuadRat(1)}};
    p.cache_floats();
    return p;
}

std::pair<QuadRat, QuadRat> PiecewisePoly::support() const {
    if (empty()) return {QuadRat(0), QuadRat(0)};
    return {breaks_.front(), breaks_.back()};
}

int PiecewisePoly::degree() const {
    int d = 0;
    for (const auto& c : pieces_)
        for (std::size_t k = 0; k < c.size(); ++k)
            if (!c[k].is_zero()) d = std::max(d, static_cast<int>(k));
    return d;
}

double PiecewisePoly::operator()(double x) const {
    if (empty() || x < fbreaks_.front() || x >= fbreaks_.back()) {
        // closed upper endpoint evaluates by continuity to 0 for compactly
        // supported continuous functions; evaluate the last piece when exactly
        // at the endpoint
        if (!empty() && x == fbreaks_.back()) {
            const auto& c = pieces_.back();
            return poly_eval(c, x - fbreaks_[fbreaks_.size() - 2]);
        }
        return 0.0;
    }
    auto it = std::upper_bound(fbreaks_.begin(), fbreaks_.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - fbreaks_.begin());
    if (idx == 0) return 0.0;
    --idx;
    if (idx >= pieces_.size()) idx = pieces_.size() - 1;
    return poly_eval(pieces_[idx], x - fbreaks_[idx]);
}

QuadRat PiecewisePoly::eval_exact(const QuadRat& x) const {
    if (empty()) return QuadRat(0);
    if (sign(x - breaks_.front()) < 0 || sign(x - breaks_.back()) > 0) return QuadRat(0);
    // find piece with breaks_[i] <= x < breaks_[i+1] (last piece closed above)
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        bool upper_ok = (i + 1 == pieces_.size()) ? sign(x - breaks_[i + 1]) <= 0
                                                  : sign(x - breaks_[i + 1]) < 0;
        if (sign(x - breaks_[i]) >= 0 && upper_ok) return poly_eval(pieces_[i], x - breaks_[i]);
    }
    return QuadRat(0);
}

PiecewisePoly PiecewisePoly::scaled(const QuadRat& c) const {
    PiecewisePoly out = *this;
    for (auto& piece : out.pieces_)
        for (auto& coef : piece) coef = coef * c;
    return out;
}

QuadRat PiecewisePoly::integral() const {
    QuadRat total(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        auto F = poly_antiderivative(pieces_[i]);
        total = total + poly_eval(F, breaks_[i + 1] - breaks_[i]);
    }
    return total;
}

QuadRat PiecewisePoly::integral_of_square() const {
    QuadRat total(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        auto F = poly_antiderivative(poly_mul(pieces_[i], pieces_[i]));
        total = total + poly_eval(F, breaks_[i + 1] - breaks_[i]);
    }
    return total;
}

PiecewisePoly PiecewisePoly::convolve_box(const QuadRat& halfwidth) const {
    if (sign(halfwidth) <= 0)
        throw std::invalid_argument("convolve_box: halfwidth must be positive");
    if (empty()) return {};

    // Piecewise antiderivative A with A(breaks_.front()) = 0, extended as a
    // constant (the total integral) to the right of the support.
    std::vector<std::vector<QuadRat>> anti(pieces_.size());
    std::vector<QuadRat> lead(pieces_.size() + 1, QuadRat(0));  // A at each breakpoint
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        anti[i] = poly_antiderivative(pieces_[i]);
        anti[i][0] = lead[i];
        lead[i + 1] = poly_eval(anti[i], breaks_[i + 1] - breaks_[i]);
    }
    QuadRat total = lead.back();

    // A restricted to the piece containing the open interval (ylo, yhi),
    // expressed in powers of (y - ylo); intervals outside the support give
    // constants.
    auto piece_A = [&](const QuadRat& ylo) -> std::vector<QuadRat> {
        if (sign(ylo - breaks_.front()) < 0) return {QuadRat(0)};
        if (sign(ylo - breaks_.back()) >= 0) return {total};
        for (std::size_t i = 0; i < pieces_.size(); ++i)
            if (sign(ylo - breaks_[i]) >= 0 && sign(ylo - breaks_[i + 1]) < 0)
                return poly_shift(anti[i], ylo - breaks_[i]);
        return {total};
    };

    // result(x) = A(x + h) - A(x - h); breakpoints at b -* h
    std::vector<QuadRat> cand;
    for (const auto& b : breaks_) {
        cand.push_back(b - halfwidth);
        cand.push_back(b + halfwidth);
    }
    std::sort(cand.begin(), cand.end(), [](const QuadRat& a, const QuadRat& b) {
        return sign(a - b) < 0;
    });
    cand.erase(std::unique(cand.begin(), cand.end(),
                           [](const QuadRat& a, const QuadRat& b) { return a == b; }),
               cand.end());

    PiecewisePoly out;
    out.breaks_ = cand;
    out.pieces_.resize(cand.size() - 1);
    for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
        // on (cand[i], cand[i+1]), both x+h and x-h stay within single pieces of A
        auto plus = piece_A(cand[i] + halfwidth);    // in powers of (x - cand[i])
        auto minus = piece_A(cand[i] - halfwidth);
        std::vector<QuadRat> diff(std::max(plus.size(), minus.size()), QuadRat(0));
        for (std::size_t k = 0; k < plus.size(); ++k) diff[k] = diff[k] + plus[k];
        for (std::size_t k = 0; k < minus.size(); ++k) diff[k] = diff[k] - minus[k];
        out.pieces_[i] = std::move(diff);
    }

    // trim identically-zero leading/trailing pieces (support bookkeeping)
    while (!out.pieces_.empty() && poly_is_zero(out.pieces_.front())) {
        out.pieces_.erase(out.pieces_.begin());
        out.breaks_.erase(out.breaks_.begin());
    }
    while (!out.pieces_.empty() && poly_is_zero(out.pieces_.back())) {
        out.pieces_.pop_back();
        out.breaks_.pop_back();
    }
    out.cache_floats();
    return out;
}

bool PiecewisePoly::is_constant_on(const QuadRat& value, const QuadRat& lo,
                                   const QuadRat& hi) const {
    if (empty()) return value.is_zero();
    if (sign(lo - breaks_.front()) < 0 || sign(hi - breaks_.back()) > 0) return false;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        // does piece i intersect (lo, hi)?
        if (sign(breaks_[i + 1] - lo) <= 0 || sign(hi - breaks_[i]) <= 0) continue;
        const auto& c = pieces_[i];
        if (c.empty() || c[0] != value) return false;
        for (std::size_t k = 1; k < c.size(); ++k)
            if (!c[k].is_zero()) return false;
    }
    return true;
}

bool PiecewisePoly::is_continuous() const {
    if (empty()) return true;
    // zero at the outer edges
    if (!poly_eval(pieces_.front(), QuadRat(0)).is_zero()) return false;
    if (!(poly_eval(pieces_.back(), breaks_.back() - breaks_[breaks_.size() - 2]).is_zero()))
        return false;
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        QuadRat left = poly_eval(pieces_[i], breaks_[i + 1] - breaks_[i]);
        QuadRat right = poly_eval(pieces_[i + 1], QuadRat(0));
        if (left != right) return false;
    }
    return true;
}

}  // namespace fibdiff
