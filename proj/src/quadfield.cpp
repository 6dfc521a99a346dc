#include "fibdiff/quadfield.hpp"

#include <array>
#include <cmath>

namespace fibdiff {
namespace detail {

namespace {

// 256-bit value as four 64-bit limbs, least significant first.
using Limbs = std::array<std::uint64_t, 4>;

Limbs square_u128(unsigned __int128 x) {
    std::uint64_t lo = static_cast<std::uint64_t>(x);
    std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
    unsigned __int128 ll = (unsigned __int128)lo * lo;
    unsigned __int128 lh = (unsigned __int128)lo * hi;
    unsigned __int128 hh = (unsigned __int128)hi * hi;

    Limbs r{0, 0, 0, 0};
    r[0] = static_cast<std::uint64_t>(ll);
    unsigned __int128 carry = (ll >> 64);
    // middle term 2*lh contributes at limb 1
    unsigned __int128 mid_lo = (unsigned __int128)static_cast<std::uint64_t>(lh) * 2;
    unsigned __int128 mid_hi = (lh >> 64) * 2;
    carry += static_cast<std::uint64_t>(mid_lo);
    r[1] = static_cast<std::uint64_t>(carry);
    carry = (carry >> 64) + (mid_lo >> 64) + static_cast<std::uint64_t>(mid_hi);
    carry += static_cast<std::uint64_t>(hh);
    r[2] = static_cast<std::uint64_t>(carry);
    carry = (carry >> 64) + (mid_hi >> 64) + (hh >> 64);
    r[3] = static_cast<std::uint64_t>(carry);
    return r;
}

Limbs mul_small(const Limbs& x, std::uint64_t k) {
    Limbs r{0, 0, 0, 0};
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 t = (unsigned __int128)x[i] * k + carry;
        r[i] = static_cast<std::uint64_t>(t);
        carry = t >> 64;
    }
    if (carry != 0) throw OverflowError("256-bit overflow in sign test");
    return r;
}

int cmp_limbs(const Limbs& x, const Limbs& y) {
    for (int i = 3; i >= 0; --i) {
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int cmp_sq_vs_5sq(unsigned __int128 a, unsigned __int128 b) {
    return cmp_limbs(square_u128(a), mul_small(square_u128(b), 5));
}

int sign_a_plus_b_sqrt5(__int128 a, __int128 b) {
    if (b == 0) return (a > 0) - (a < 0);
    if (a == 0) return (b > 0) - (b < 0);
    if (a > 0 && b > 0) return 1;
    if (a < 0 && b < 0) return -1;
    unsigned __int128 ua = a > 0 ? (unsigned __int128)a : (unsigned __int128)(-a);
    unsigned __int128 ub = b > 0 ? (unsigned __int128)b : (unsigned __int128)(-b);
    int c = cmp_sq_vs_5sq(ua, ub);  // compares |a| with sqrt5*|b|
    // a, b have opposite signs; the larger magnitude wins. c = 0 cannot happen
    // for nonzero integers since 5 is squarefree.
    if (a > 0) return c >= 0 ? 1 : -1;
    return c >= 0 ? -1 : 1;
}

}  // namespace detail

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    unsigned __int128 un = n < 0 ? (unsigned __int128)(-n) : (unsigned __int128)n;
    unsigned __int128 ud = (unsigned __int128)d;
    // Euclid on 128-bit magnitudes
    unsigned __int128 x = un, y = ud;
    while (y != 0) {
        unsigned __int128 t = x % y;
        x = y;
        y = t;
    }
    if (x > 1) {
        n /= (__int128)x;
        d /= (__int128)x;
    }
    constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
    if (n > lim || n < -lim || d > lim) throw OverflowError("Rational overflow");
    Rational r;
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
}

int sign(const QuadRat& q) {
    // q = a + b*tau = (2a + b)/2 + (b/2) sqrt5; scale by 2*den(a)*den(b) > 0.
    __int128 an = q.a.num, ad = q.a.den;
    __int128 bn = q.b.num, bd = q.b.den;
    __int128 p = 2 * an * bd + bn * ad;
    __int128 s = bn * ad;
    return detail::sign_a_plus_b_sqrt5(p, s);
}

std::int64_t floor_exact(const QuadRat& q) {
    double approx = q.to_double();
    auto k = static_cast<std::int64_t>(std::floor(approx));
    // correct the float estimate with exact comparisons
    while (sign(q - QuadRat(k)) < 0) --k;
    while (sign(q - QuadRat(detail::checked_add(k, 1))) >= 0) ++k;
    return k;
}

std::int64_t ceil_exact(const QuadRat& q) {
    std::int64_t f = floor_exact(q);
    if (q == QuadRat(f)) return f;
    return detail::checked_add(f, 1);
}

}  // namespace fibdiff
