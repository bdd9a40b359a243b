#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace perturbia {

/// Exact arbitrary-precision integers and rationals.  All symbolic and
/// combinatorial computations in this project are carried out over these
/// types; floating point only appears in the numeric oracles.
using Int = mpz_class;
using Rat = mpq_class;

/// Build a canonical rational from a (possibly non-reduced) fraction.
inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// q^k for integer k (k < 0 requires q != 0).
inline Rat rat_pow(const Rat& q, long k) {
    if (k == 0) return Rat(1);
    if (q == 0 && k < 0) throw std::invalid_argument("rat_pow: zero base, negative exponent");
    Rat base = k > 0 ? q : Rat(1) / q;
    unsigned long e = static_cast<unsigned long>(k > 0 ? k : -k);
    Rat out(1);
    while (e != 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline Int factorial(unsigned long n) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

/// n!! with the empty-product convention (-1)!! = 0!! = 1.
inline Int double_factorial(long n) {
    if (n <= 0) return Int(1);
    Int out(1);
    for (long k = n; k > 1; k -= 2) out *= k;
    return out;
}

/// "num/den" (or just "num" for integers), always in lowest terms.
inline std::string fraction_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat parse_fraction(std::string_view s) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), std::string(s).c_str(), 10) != 0)
        throw std::invalid_argument("parse_fraction: bad rational '" + std::string(s) + "'");
    if (q.get_den() == 0) throw std::invalid_argument("parse_fraction: zero denominator");
    q.canonicalize();
    return q;
}

/// Gaussian rational a + b*i with exact rational components.
struct GRat {
    Rat re;
    Rat im;

    GRat() : re(0), im(0) {}
    GRat(long v) : re(v), im(0) {}                     // NOLINT(google-explicit-constructor)
    GRat(const Rat& r) : re(r), im(0) {}               // NOLINT(google-explicit-constructor)
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GRat i() { return GRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GRat conj() const { return GRat(re, -im); }
    Rat norm() const { return re * re + im * im; }

    friend GRat operator+(const GRat& a, const GRat& b) { return GRat(a.re + b.re, a.im + b.im); }
    friend GRat operator-(const GRat& a, const GRat& b) { return GRat(a.re - b.re, a.im - b.im); }
    friend GRat operator-(const GRat& a) { return GRat(-a.re, -a.im); }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GRat operator/(const GRat& a, const GRat& b) {
        Rat n = b.norm();
        if (n == 0) throw std::invalid_argument("GRat: division by zero");
        GRat num = a * b.conj();
        return GRat(num.re / n, num.im / n);
    }
    GRat& operator+=(const GRat& b) { re += b.re; im += b.im; return *this; }
    GRat& operator-=(const GRat& b) { re -= b.re; im -= b.im; return *this; }
    GRat& operator*=(const GRat& b) { *this = *this * b; return *this; }
    GRat& operator/=(const GRat& b) { *this = *this / b; return *this; }

    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }
    friend bool operator<(const GRat& a, const GRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

inline GRat grat_pow(const GRat& z, long k) {
    if (k < 0) return GRat(1) / grat_pow(z, -k);
    GRat out(1), base = z;
    unsigned long e = static_cast<unsigned long>(k);
    while (e != 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

/// "a", "b*i" or "a+b*i" with rational a, b.
inline std::string to_string(const GRat& z) {
    if (z.im == 0) return fraction_string(z.re);
    std::string im_part = fraction_string(z.im) + "*i";
    if (z.re == 0) return im_part;
    if (z.im > 0) return fraction_string(z.re) + "+" + im_part;
    return fraction_string(z.re) + "-" + fraction_string(-z.im) + "*i";
}

/// Exception taxonomy shared by every module.  The CLI maps these onto its
/// documented exit codes (domain error 3, resource bound 4).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace perturbia
