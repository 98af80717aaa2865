#include "kn/weights.hpp"

namespace kn {

Poly weight_filter_le(const Poly& P, int k, const Rational& mu, const Rational& bound) {
    Poly r;
    for (const auto& [e, c] : P.terms())
        if (monomial_weight(e, k, mu) <= bound) r.add_term(e, c);
    return r;
}

Poly weight_slice(const Poly& P, int k, const Rational& mu, const Rational& w) {
    Poly r;
    for (const auto& [e, c] : P.terms())
        if (monomial_weight(e, k, mu) == w) r.add_term(e, c);
    return r;
}

Poly scale_weighted(const Poly& P, const Rational& r, int k, const Rational& mu) {
    long p = numerator(mu).convert_to<long>();
    long q = denominator(mu).convert_to<long>();
    Poly out;
    for (const auto& [e, c] : P.terms()) {
        Rational factor = rational_pow(r, q * e.zdeg() + k * p * e.l);
        out.add_term(e, c * factor);
    }
    return out;
}

}  // namespace kn
