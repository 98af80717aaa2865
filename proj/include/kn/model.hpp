#pragma once

#include <utility>
#include <vector>

#include "kn/poly.hpp"
#include "kn/rational.hpp"
#include "kn/weights.hpp"

namespace kn {

// Weight vector (1/k, mu) together with an integer witness pair
// (k1, k2), k2 > 0, k1/k + k2*mu = 1.
struct WeightVector {
    int k = 0;
    Rational mu;
    long k1 = 0;
    long k2 = 0;
    Rational lambda1() const { return Rational(1, k); }
};

// Smallest total degree of a mixed (non-z-harmonic) u-free monomial.
// Throws ContractError when no such monomial exists or the degree is odd.
int compute_type(const Poly& F);

// Largest candidate (1 - (a+b)/k)/l over mixed monomials with l >= 1 and
// a+b < k; zero when no such monomial exists. z-harmonic monomials are
// removable and generate no candidate.
Rational compute_weight(const Poly& F, int k);

WeightVector weight_vector(int k, const Rational& mu);

struct ModelReport {
    int type_k = 0;
    Rational mu;
    WeightVector weights;
    Poly model;           // lambda-weight-one part (or P1 when mu = 0)
    Poly standard_model;  // degree-k u-free part P1
    std::vector<std::pair<Exponents, CRational>> residual_terms;  // weight > 1
    std::vector<Exponents> removable_terms;  // z-harmonic, weight < 1
};

// Splits F into model / residual under (1/k, mu). A non-harmonic monomial
// below weight one means the input is not in adapted coordinates and is
// rejected.
ModelReport generalized_model(const Poly& F, int k, const Rational& mu);

struct KappaEntry {
    int l = 0;
    double value = 0.0;       // |a_l| / a_0
    Rational value_sq;        // exact (|a_l| / a_0)^2
    bool exact_known = false; // true when value_sq is a rational square
    Rational exact;           // the exact kappa in that case
};

struct InvariantSet {
    int k = 0;
    Rational a0;
    std::vector<KappaEntry> kappa;  // one entry per even l in 2..k-2
};

// a_0 and the kappa_l = |a_l|/a_0 ladder of a degree-k model polynomial.
// Requires a homogeneous, u-free, real P1 with a positive diagonal
// coefficient.
InvariantSet kn_invariants(const Poly& P1);

}  // namespace kn
