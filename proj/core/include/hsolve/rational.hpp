#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "hsolve/errors.hpp"

namespace hsolve {

/// Exact rational scalar. GMP keeps values canonical (lowest terms, positive
/// denominator) as long as canonicalize() is called after raw construction;
/// every constructor used in this library goes through rat() or rat_parse().
using Rat = mpq_class;

using Vec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p", "-p", or "p/q" with q > 0. Strict: no whitespace, no signs in
/// the denominator.
Rat rat_parse(const std::string& text);

/// Canonical text form: lowest terms, positive denominator, "/q" omitted when
/// q == 1. This is the format used in files and reports.
std::string rat_str(const Rat& value);

/// Gaussian rational re + im*sqrt(-1). Used only inside the complexified
/// integrability and abelianness checks; never crosses a public interface.
struct GaussRat {
    Rat re;
    Rat im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat sqrt_minus_one() { return GaussRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussRat conj() const { return GaussRat(re, Rat(-im)); }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
        return GaussRat(Rat(a.re + b.re), Rat(a.im + b.im));
    }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
        return GaussRat(Rat(a.re - b.re), Rat(a.im - b.im));
    }
    friend GaussRat operator-(const GaussRat& a) { return GaussRat(Rat(-a.re), Rat(-a.im)); }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(Rat(a.re * b.re - a.im * b.im), Rat(a.re * b.im + a.im * b.re));
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat n(b.re * b.re + b.im * b.im);
        if (n == 0) throw InputError("division by zero Gaussian rational");
        return GaussRat(Rat((a.re * b.re + a.im * b.im) / n), Rat((a.im * b.re - a.re * b.im) / n));
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }

    GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
    GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
};

inline bool scalar_is_zero(const Rat& x) { return x == 0; }
inline bool scalar_is_zero(const GaussRat& x) { return x.is_zero(); }

/// Lexicographic order on rational vectors; used for canonical sorting of
/// report entries and deduplication sets.
bool vec_less(const Vec& a, const Vec& b);

bool vec_is_zero(const Vec& v);

std::string vec_str(const Vec& v);

}  // namespace hsolve
