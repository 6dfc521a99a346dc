#pragma once

// Exact arithmetic in Z[tau] and (1/sqrt5)Z[tau], tau = (1+sqrt5)/2.
//
// All set-membership decisions downstream (window tests, floors, lattice
// geometry) reduce to sign tests of numbers of the form a + b*sqrt5 with
// integer or rational a, b. Those signs are decided exactly here; sqrt5
// itself is never stored as a constant of any type.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fibdiff {

inline constexpr double kSqrt5 = 2.23606797749978969640917366873;
inline constexpr double kGolden = 1.61803398874989484820458683437;      // tau
inline constexpr double kGoldenConj = 1.0 - kGolden;                    // tau' = (1-sqrt5)/2

struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 add overflow");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 sub overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 mul overflow");
    return r;
}

inline std::int64_t checked_neg(std::int64_t a) {
    if (a == std::numeric_limits<std::int64_t>::min()) throw OverflowError("int64 neg overflow");
    return -a;
}

// Compares a^2 with 5*b^2 for non-negative 128-bit a, b, using 256-bit
// intermediates split into 64-bit limbs. Returns -1, 0, +1.
int cmp_sq_vs_5sq(unsigned __int128 a, unsigned __int128 b);

// Sign of a + b*sqrt5 with 128-bit integer a, b. Exact.
int sign_a_plus_b_sqrt5(__int128 a, __int128 b);

}  // namespace detail

// ---------------------------------------------------------------------------
// QuadInt: m + n*tau with 64-bit integer coefficients, checked arithmetic.
// ---------------------------------------------------------------------------
struct QuadInt {
    std::int64_t m = 0;
    std::int64_t n = 0;

    constexpr QuadInt() = default;
    constexpr QuadInt(std::int64_t m_, std::int64_t n_) : m(m_), n(n_) {}

    friend QuadInt operator+(QuadInt a, QuadInt b) {
        return {detail::checked_add(a.m, b.m), detail::checked_add(a.n, b.n)};
    }
    friend QuadInt operator-(QuadInt a, QuadInt b) {
        return {detail::checked_sub(a.m, b.m), detail::checked_sub(a.n, b.n)};
    }
    friend QuadInt operator-(QuadInt a) {
        return {detail::checked_neg(a.m), detail::checked_neg(a.n)};
    }
    // tau^2 = tau + 1
    friend QuadInt operator*(QuadInt a, QuadInt b) {
        using detail::checked_add;
        using detail::checked_mul;
        std::int64_t mm = checked_mul(a.m, b.m);
        std::int64_t nn = checked_mul(a.n, b.n);
        std::int64_t cross = checked_add(checked_mul(a.m, b.n), checked_mul(a.n, b.m));
        return {checked_add(mm, nn), checked_add(cross, nn)};
    }
    friend bool operator==(QuadInt a, QuadInt b) { return a.m == b.m && a.n == b.n; }
    friend bool operator!=(QuadInt a, QuadInt b) { return !(a == b); }

    bool is_zero() const { return m == 0 && n == 0; }
    std::string str() const { return std::to_string(m) + (n >= 0 ? "+" : "") + std::to_string(n) + "t"; }
};

// Galois conjugation: tau -> tau' = 1 - tau, so m + n*tau -> (m+n) - n*tau.
inline QuadInt star(QuadInt q) { return {detail::checked_add(q.m, q.n), detail::checked_neg(q.n)}; }

inline double embed(QuadInt q) {
    return static_cast<double>(q.m) + static_cast<double>(q.n) * kGolden;
}

// Exact sign of m + n*tau  (= (2m+n)/2 + (n/2)*sqrt5).
inline int sign(QuadInt q) {
    __int128 a = (__int128)2 * q.m + q.n;
    return detail::sign_a_plus_b_sqrt5(a, q.n);
}

inline int compare(QuadInt a, QuadInt b) { return sign(a - b); }

// ---------------------------------------------------------------------------
// Rational: int64 fraction, always normalized with positive denominator.
// ---------------------------------------------------------------------------
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    Rational(std::int64_t n_, std::int64_t d_ = 1) : num(n_), den(d_) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = detail::checked_neg(num);
            den = detail::checked_neg(den);
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static Rational from_i128(__int128 n, __int128 d);

    friend Rational operator+(Rational a, Rational b) {
        return from_i128((__int128)a.num * b.den + (__int128)b.num * a.den, (__int128)a.den * b.den);
    }
    friend Rational operator-(Rational a, Rational b) {
        return from_i128((__int128)a.num * b.den - (__int128)b.num * a.den, (__int128)a.den * b.den);
    }
    friend Rational operator*(Rational a, Rational b) {
        return from_i128((__int128)a.num * b.num, (__int128)a.den * b.den);
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num == 0) throw std::invalid_argument("Rational: divide by zero");
        return from_i128((__int128)a.num * b.den, (__int128)a.den * b.num);
    }
    friend Rational operator-(Rational a) { return Rational(detail::checked_neg(a.num), a.den); }
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rational a, Rational b) { return !(a == b); }

    int sgn() const { return (num > 0) - (num < 0); }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline int compare(Rational a, Rational b) {
    __int128 lhs = (__int128)a.num * b.den;
    __int128 rhs = (__int128)b.num * a.den;
    return (lhs > rhs) - (lhs < rhs);
}

// ---------------------------------------------------------------------------
// QuadRat: a + b*tau with rational a, b. Exact field arithmetic in Q(tau).
// ---------------------------------------------------------------------------
struct QuadRat {
    Rational a;  // rational part
    Rational b;  // coefficient of tau

    QuadRat() = default;
    QuadRat(Rational a_, Rational b_ = Rational(0)) : a(a_), b(b_) {}
    QuadRat(std::int64_t v) : a(Rational(v)), b(Rational(0)) {}
    static QuadRat tau() { return QuadRat(Rational(0), Rational(1)); }
    static QuadRat from_quadint(QuadInt q) { return QuadRat(Rational(q.m), Rational(q.n)); }
    static QuadRat sqrt5() { return QuadRat(Rational(-1), Rational(2)); }  // 2*tau - 1

    friend QuadRat operator+(const QuadRat& x, const QuadRat& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadRat operator-(const QuadRat& x, const QuadRat& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadRat operator-(const QuadRat& x) { return {-x.a, -x.b}; }
    friend QuadRat operator*(const QuadRat& x, const QuadRat& y) {
        // (a1 + b1 t)(a2 + b2 t), t^2 = t + 1
        Rational bb = x.b * y.b;
        return {x.a * y.a + bb, x.a * y.b + x.b * y.a + bb};
    }
    friend QuadRat operator/(const QuadRat& x, const QuadRat& y);
    friend bool operator==(const QuadRat& x, const QuadRat& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QuadRat& x, const QuadRat& y) { return !(x == y); }

    QuadRat conj() const { return {a + b, -b}; }          // tau -> 1 - tau
    Rational norm() const { return a * a + a * b - b * b; }  // x * conj(x)
    bool is_zero() const { return a.num == 0 && b.num == 0; }
    double to_double() const { return a.to_double() + b.to_double() * kGolden; }
};

// Exact sign of a + b*tau.
int sign(const QuadRat& q);

inline int compare(const QuadRat& x, const QuadRat& y) { return sign(x - y); }

inline QuadRat operator/(const QuadRat& x, const QuadRat& y) {
    Rational n = y.norm();
    if (n.num == 0) throw std::invalid_argument("QuadRat: divide by zero");
    QuadRat num = x * y.conj();
    return {num.a / n, num.b / n};
}

// Largest integer <= q, exact.
std::int64_t floor_exact(const QuadRat& q);
std::int64_t ceil_exact(const QuadRat& q);

// ---------------------------------------------------------------------------
// DualPoint: element u/sqrt5 of the projected dual lattice, with u in Z[tau].
// For lattice coordinates (m, n) the point is (n - m*tau')/sqrt5 and its
// internal partner is (m*tau - n)/sqrt5.
// ---------------------------------------------------------------------------
struct DualPoint {
    QuadInt u;  // value = u / sqrt5

    DualPoint() = default;
    explicit DualPoint(QuadInt u_) : u(u_) {}
    static DualPoint from_mn(std::int64_t m, std::int64_t n) {
        return DualPoint(QuadInt{detail::checked_sub(n, m), m});
    }
    // inverse of from_mn
    std::int64_t coord_m() const { return u.n; }
    std::int64_t coord_n() const { return detail::checked_add(u.m, u.n); }

    // star(u/sqrt5) = sigma(u)/(-sqrt5), sigma = Galois conjugation
    QuadInt star_numerator() const { return -star(u); }

    friend DualPoint operator+(DualPoint x, DualPoint y) { return DualPoint(x.u + y.u); }
    friend DualPoint operator-(DualPoint x, DualPoint y) { return DualPoint(x.u - y.u); }
    friend DualPoint operator-(DualPoint x) { return DualPoint(-x.u); }
    friend bool operator==(DualPoint x, DualPoint y) { return x.u == y.u; }
    friend bool operator!=(DualPoint x, DualPoint y) { return !(x == y); }
    bool is_zero() const { return u.is_zero(); }
};

inline double dual_value(DualPoint p) { return embed(p.u) / kSqrt5; }
inline double dual_star(DualPoint p) { return embed(p.star_numerator()) / kSqrt5; }

}  // namespace fibdiff
