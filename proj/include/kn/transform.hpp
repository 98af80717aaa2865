#pragma once

#include <map>
#include <utility>
#include <vector>

#include "kn/poly.hpp"
#include "kn/rational.hpp"

namespace kn {

// Holomorphic polynomial in (z, w) with complex rational coefficients.
class HoloPoly {
  public:
    using TermMap = std::map<std::pair<int, int>, CRational>;  // (z power, w power)

    HoloPoly() = default;
    static HoloPoly monomial(int i, int j, CRational c);
    static HoloPoly variable_z() { return monomial(1, 0, CRational(1)); }
    static HoloPoly variable_w() { return monomial(0, 1, CRational(1)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int total_degree() const;
    CRational coeff(int i, int j) const;
    void add_term(int i, int j, const CRational& c);

    HoloPoly& operator+=(const HoloPoly& o);
    friend HoloPoly operator+(HoloPoly a, const HoloPoly& b) { return a += b; }
    friend HoloPoly operator-(const HoloPoly& a);
    friend HoloPoly operator-(HoloPoly a, const HoloPoly& b) { return a += -b; }
    friend bool operator==(const HoloPoly& a, const HoloPoly& b) { return a.terms_ == b.terms_; }

    static HoloPoly mul(const HoloPoly& a, const HoloPoly& b, int cutoff);
    HoloPoly pow(int e, int cutoff) const;
    HoloPoly truncated(int max_total_degree) const;

    // Composition: substitute polynomials for z and w.
    HoloPoly substituted(const HoloPoly& zrepl, const HoloPoly& wrepl, int cutoff) const;

  private:
    TermMap terms_;
};

// Truncated holomorphic coordinate change z* = z + g(z,w), w* = w + f(z,w)
// normalized so that f, g, f_z, g_z, f_w all vanish at the origin.
struct HoloMap {
    HoloPoly g, f;

    // Throws ContractError if the normalization fails.
    void validate() const;
    bool is_identity() const { return g.is_zero() && f.is_zero(); }
};

// apply `first`, then `second`; truncated at `cutoff`.
HoloMap compose(const HoloMap& second, const HoloMap& first, int cutoff);

// Formal inverse, exact through total degree `cutoff`.
HoloMap invert(const HoloMap& T, int cutoff);

// New defining polynomial F* solving the change-of-variables identity
// F*(z + g(z,w), conj, u + Re f(z,w)) = F + Im f(z,w) with w = u + iF,
// as a formal identity through total degree `cutoff`. The fixed-point
// iteration is exact in rational arithmetic; a nonzero final residual
// aborts.
Poly apply_holomorphic(const Poly& F, const HoloMap& T, int cutoff);

// z -> z + sum_m delta[m-1] u^m with exactly floor(1/(k mu)) coefficients.
struct ShiftMap {
    std::vector<CRational> delta;
};

// Substitutes the shift and keeps terms of lambda-weight <= 1.
Poly apply_shift(const Poly& P, const ShiftMap& S, int k, const Rational& mu);

// Unique delta making the composed map's g strictly superhomogeneous:
// delta_1 = -alpha_1, delta_2 = -alpha_2 - delta_1 epsilon_2, ... up to
// index floor(1/(k mu)). Requires mu > 0.
ShiftMap decompose_delta(const HoloMap& T, int k, const Rational& mu);

}  // namespace kn
