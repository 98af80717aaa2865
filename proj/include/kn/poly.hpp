#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "kn/rational.hpp"

namespace kn {

// Exponent triple of a monomial z^a zbar^b u^l.
struct Exponents {
    int a = 0;  // z power
    int b = 0;  // zbar power
    int l = 0;  // u power

    int total() const { return a + b + l; }
    int zdeg() const { return a + b; }
    bool z_harmonic() const { return a == 0 || b == 0; }
    Exponents conjugated() const { return {b, a, l}; }
    auto operator<=>(const Exponents&) const = default;
};

// Sparse polynomial in (z, zbar, u) with exact complex-rational
// coefficients. Zero coefficients are never stored. Real-valued
// polynomials are those whose coefficient map satisfies
// coeff(a,b,l) == conj(coeff(b,a,l)); not every Poly is real (Wirtinger
// derivatives in z or zbar break the pairing), so realness is a checked
// property rather than a structural guarantee.
class Poly {
  public:
    using TermMap = std::map<Exponents, CRational>;

    Poly() = default;

    static Poly monomial(int a, int b, int l, CRational c);
    static Poly constant(CRational c);
    static Poly variable_z() { return monomial(1, 0, 0, CRational(1)); }
    static Poly variable_zbar() { return monomial(0, 1, 0, CRational(1)); }
    static Poly variable_u() { return monomial(0, 0, 1, CRational(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int total_degree() const;

    CRational coeff(int a, int b, int l) const;
    CRational coeff(const Exponents& e) const;
    void add_term(const Exponents& e, const CRational& c);

    bool is_real() const;
    // First monomial violating the conjugate-pairing invariant, if any.
    std::optional<Exponents> first_nonreal_term() const;

    Poly conjugated() const;
    Poly truncated(int max_total_degree) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const CRational& s);
    friend Poly operator*(const CRational& s, const Poly& a) { return a * s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    // Product truncated to total degree <= cutoff (cutoff < 0: no limit).
    static Poly mul(const Poly& a, const Poly& b, int cutoff);
    Poly pow(int e, int cutoff = -1) const;

  private:
    TermMap terms_;
};

}  // namespace kn
