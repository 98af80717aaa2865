#include "kn/model.hpp"

#include <algorithm>
#include <cmath>

#include "kn/errors.hpp"
#include "kn/parser.hpp"

namespace kn {

int compute_type(const Poly& F) {
    int k = -1;
    for (const auto& [e, c] : F.terms()) {
        if (e.l != 0 || e.z_harmonic()) continue;
        if (k < 0 || e.zdeg() < k) k = e.zdeg();
    }
    if (k < 0)
        throw ContractError(
            "no mixed u-free monomial: the point is not of finite type for this input class");
    if (k % 2 != 0)
        throw ContractError("type " + std::to_string(k) +
                            " is odd, which contradicts pseudoconvexity");
    return k;
}

Rational compute_weight(const Poly& F, int k) {
    Rational mu(0);
    for (const auto& [e, c] : F.terms()) {
        if (e.z_harmonic() || e.l < 1 || e.zdeg() >= k) continue;
        Rational candidate = (Rational(1) - Rational(e.zdeg(), k)) / e.l;
        mu = std::max(mu, candidate);
    }
    return mu;
}

WeightVector weight_vector(int k, const Rational& mu) {
    WeightVector wv;
    wv.k = k;
    wv.mu = mu;
    if (mu == 0) {
        wv.k1 = k;
        wv.k2 = 1;
        return wv;
    }
    long limit = (denominator(mu) * k).convert_to<long>();
    for (long k2 = 1; k2 <= limit; ++k2) {
        Rational k1r = Rational(k) * (Rational(1) - mu * k2);
        if (denominator(k1r) == 1) {
            wv.k1 = numerator(k1r).convert_to<long>();
            wv.k2 = k2;
            return wv;
        }
    }
    throw ContractError("no integer weight pair for mu = " + to_string(mu));
}

ModelReport generalized_model(const Poly& F, int k, const Rational& mu) {
    ModelReport r;
    r.type_k = k;
    r.mu = mu;
    r.weights = weight_vector(k, mu);

    for (const auto& [e, c] : F.terms())
        if (e.l == 0 && e.zdeg() == k) r.standard_model.add_term(e, c);

    for (const auto& [e, c] : F.terms()) {
        Rational w = monomial_weight(e, k, mu);
        bool in_model = (mu == 0) ? (e.l == 0 && e.zdeg() == k) : (w == 1);
        if (in_model) {
            r.model.add_term(e, c);
        } else if (w > 1) {
            r.residual_terms.emplace_back(e, c);
        } else if (e.z_harmonic()) {
            r.removable_terms.push_back(e);
        } else {
            throw ContractError("monomial " + monomial_to_string(e) +
                                " has weight below one and is not harmonic; the input is not "
                                "in adapted coordinates (apply a transform first)");
        }
    }
    return r;
}

InvariantSet kn_invariants(const Poly& P1) {
    if (!P1.is_real()) throw ContractError("model polynomial must be real");
    int k = -1;
    for (const auto& [e, c] : P1.terms()) {
        if (e.l != 0)
            throw ContractError("model polynomial must be u-free");
        if (k < 0) k = e.zdeg();
        if (e.zdeg() != k)
            throw ContractError("model polynomial must be homogeneous");
    }
    if (k <= 0 || k % 2 != 0) throw ContractError("model degree must be a positive even integer");

    InvariantSet inv;
    inv.k = k;
    CRational a0 = P1.coeff(k / 2, k / 2, 0);
    // Reality forces the diagonal coefficient to be real.
    if (a0.re <= 0)
        throw ContractError("diagonal coefficient a0 = " + to_string(a0.re) +
                            " is not positive; the model is not pseudoconvex-normalizable");
    inv.a0 = a0.re;

    for (int l = 2; l <= k - 2; l += 2) {
        KappaEntry entry;
        entry.l = l;
        CRational al = P1.coeff((k + l) / 2, (k - l) / 2, 0) * Rational(2);
        entry.value_sq = al.norm_sq() / (inv.a0 * inv.a0);
        entry.value = std::sqrt(to_double(entry.value_sq));
        Rational root;
        if (rational_sqrt(entry.value_sq, root)) {
            entry.exact_known = true;
            entry.exact = root;
            entry.value = to_double(root);
        }
        inv.kappa.push_back(entry);
    }
    return inv;
}

}  // namespace kn
