#pragma once

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace cmnf {

// Exact rational scalar. mpq_class keeps denominator > 0 and gcd(|num|, den) = 1
// as long as values are canonicalized on construction, which rat_from_string does.
using Rat = mpq_class;

inline Rat rat_from_long(long num, long den = 1) {
    if (den == 0) fail_parse("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& r);  // canonical "p/q", used by every serializer

mpz_class factorial(long k);
Rat multiindex_factorial(const std::vector<int>& a);

// Element of Q(i). All coefficient arithmetic in the engine is closed in this field.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long r) : re(rat_from_long(r)), im(0) {}
    GaussRat(const Rat& r) : re(r), im(0) {}
    GaussRat(const Rat& r, const Rat& i) : re(r), im(i) {}
    static GaussRat i_unit() { return GaussRat(Rat(0), Rat(1)); }
    static GaussRat i_pow(long k);

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    GaussRat conj() const { return GaussRat(re, Rat(-im)); }
    Rat norm2() const { return re * re + im * im; }

    GaussRat operator-() const { return GaussRat(Rat(-re), Rat(-im)); }
    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return GaussRat(Rat(a.re * b.re - a.im * b.im), Rat(a.re * b.im + a.im * b.re));
    }
    GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
    GaussRat inverse() const {
        Rat n = norm2();
        if (sgn(n) == 0) fail_internal("division by zero GaussRat");
        return GaussRat(Rat(re / n), Rat(-im / n));
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inverse(); }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    double to_double_re() const { return re.get_d(); }
    double to_double_im() const { return im.get_d(); }
};

std::string gauss_to_string(const GaussRat& c);

}  // namespace cmnf
