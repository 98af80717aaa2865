#pragma once

#include "kn/poly.hpp"
#include "kn/rational.hpp"

namespace kn {

// Weight of z^a zbar^b u^l under the vector (1/k, mu).
inline Rational monomial_weight(const Exponents& e, int k, const Rational& mu) {
    return Rational(e.zdeg(), k) + mu * e.l;
}

// Terms of P whose weight is <= bound.
Poly weight_filter_le(const Poly& P, int k, const Rational& mu, const Rational& bound);

// Terms of P whose weight is exactly w.
Poly weight_slice(const Poly& P, int k, const Rational& mu, const Rational& w);

// P(r^q z, r^{k p} u) for mu = p/q in lowest terms; exact. For a
// lambda-homogeneous P of weight one this equals r^{k q} P(z, u), which is
// the scaling identity tests assert.
Poly scale_weighted(const Poly& P, const Rational& r, int k, const Rational& mu);

}  // namespace kn
