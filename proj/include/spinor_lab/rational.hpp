#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>

#include "spinor_lab/error.hpp"

namespace spinor_lab {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Integer& z) { return sgn(z) == 0; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Canonical "p/q" form, q > 0, always with the slash.
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p" or "p/q" with an optional leading sign.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return InputError("malformed rational \"" + s + "\""); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto digits_ok = [](std::string_view part, bool allow_sign) {
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) part.remove_prefix(1);
        if (part.empty()) return false;
        for (char c : part)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num, 10), d(den, 10);
    if (d == 0) throw InputError("zero denominator in \"" + s + "\"");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

/// Exact element of Q(i).
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(int r) : re(r) {}   // NOLINT(google-explicit-constructor)
    GaussianRational(long r, long i) : re(r), im(i) {}

    static GaussianRational i() { return {0L, 1L}; }

    bool is_zero() const { return spinor_lab::is_zero(re) && spinor_lab::is_zero(im); }
    bool is_real() const { return spinor_lab::is_zero(im); }
    bool is_gaussian_integer() const { return is_integer(re) && is_integer(im); }

    GaussianRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.is_real()) {
            re *= o.re;
            im *= o.re;
            return *this;
        }
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw Error("division by zero in Q(i)");
        Rational n = o.norm2();
        *this *= o.conj();
        re /= n;
        im /= n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
        return os << "(" << to_string(z.re) << " + " << to_string(z.im) << "i)";
    }
};

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }

/// True for the four units 1, -1, i, -i.
inline bool is_fourth_root_of_unity(const GaussianRational& z) {
    return (z.im == 0 && (z.re == 1 || z.re == -1)) || (z.re == 0 && (z.im == 1 || z.im == -1));
}

}  // namespace spinor_lab
