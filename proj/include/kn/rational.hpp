#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace kn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r);

// sqrt(r) when r is a square of a rational; returns false otherwise.
bool rational_sqrt(const Rational& r, Rational& root);

// Complex number with exact rational components.
struct CRational {
    Rational re, im;

    CRational() = default;
    CRational(Rational r) : re(std::move(r)) {}
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    CRational(int n) : re(n) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    CRational conj() const { return {re, -im}; }
    Rational norm_sq() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    CRational& operator+=(const CRational& o) { re += o.re; im += o.im; return *this; }
    CRational& operator-=(const CRational& o) { re -= o.re; im -= o.im; return *this; }

    friend CRational operator+(const CRational& a, const CRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CRational operator-(const CRational& a, const CRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CRational operator-(const CRational& a) { return {-a.re, -a.im}; }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRational operator*(const CRational& a, const Rational& s) {
        return {a.re * s, a.im * s};
    }
    friend CRational operator*(const Rational& s, const CRational& a) { return a * s; }
    friend CRational operator/(const CRational& a, const CRational& b);  // throws on zero divisor
    friend bool operator==(const CRational& a, const CRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }
};

std::string to_string(const CRational& c);

// Exact rational from a decimal literal like "1.35" or "0.6".
Rational rational_from_decimal(const std::string& text);

// r^e for integer e (e < 0 requires r != 0).
Rational rational_pow(const Rational& r, long e);

}  // namespace kn
