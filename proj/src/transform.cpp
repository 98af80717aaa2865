#include "kn/transform.hpp"

#include <algorithm>

#include "kn/calculus.hpp"
#include "kn/errors.hpp"
#include "kn/weights.hpp"

namespace kn {

HoloPoly HoloPoly::monomial(int i, int j, CRational c) {
    HoloPoly p;
    p.add_term(i, j, c);
    return p;
}

int HoloPoly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
}

CRational HoloPoly::coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? CRational() : it->second;
}

void HoloPoly::add_term(int i, int j, const CRational& c) {
    if (c.is_zero()) return;
    if (i < 0 || j < 0) throw Error("negative exponent");
    auto [it, inserted] = terms_.emplace(std::make_pair(i, j), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

HoloPoly& HoloPoly::operator+=(const HoloPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
    return *this;
}

HoloPoly operator-(const HoloPoly& a) {
    HoloPoly r;
    for (const auto& [e, c] : a.terms()) r.add_term(e.first, e.second, -c);
    return r;
}

HoloPoly HoloPoly::mul(const HoloPoly& a, const HoloPoly& b, int cutoff) {
    HoloPoly r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            int i = ea.first + eb.first, j = ea.second + eb.second;
            if (cutoff >= 0 && i + j > cutoff) continue;
            r.add_term(i, j, ca * cb);
        }
    }
    return r;
}

HoloPoly HoloPoly::pow(int e, int cutoff) const {
    HoloPoly acc = HoloPoly::monomial(0, 0, CRational(1));
    HoloPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base, cutoff);
        e >>= 1;
        if (e) base = mul(base, base, cutoff);
    }
    return acc;
}

HoloPoly HoloPoly::truncated(int max_total_degree) const {
    HoloPoly r;
    for (const auto& [e, c] : terms_)
        if (e.first + e.second <= max_total_degree) r.add_term(e.first, e.second, c);
    return r;
}

HoloPoly HoloPoly::substituted(const HoloPoly& zrepl, const HoloPoly& wrepl, int cutoff) const {
    std::vector<HoloPoly> zp{HoloPoly::monomial(0, 0, CRational(1))};
    std::vector<HoloPoly> wp{HoloPoly::monomial(0, 0, CRational(1))};
    auto power = [&](std::vector<HoloPoly>& cache, const HoloPoly& base, int e) -> const HoloPoly& {
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(mul(cache.back(), base, cutoff));
        return cache[e];
    };
    HoloPoly out;
    for (const auto& [e, c] : terms_) {
        HoloPoly t = mul(power(zp, zrepl, e.first), power(wp, wrepl, e.second), cutoff);
        for (const auto& [te, tc] : t.terms()) out.add_term(te.first, te.second, tc * c);
    }
    return out;
}

void HoloMap::validate() const {
    if (!g.coeff(0, 0).is_zero() || !f.coeff(0, 0).is_zero())
        throw ContractError("transformation must fix the origin");
    if (!g.coeff(1, 0).is_zero())
        throw ContractError("normalization requires g_z = 0 at the origin");
    if (!f.coeff(1, 0).is_zero())
        throw ContractError("normalization requires f_z = 0 at the origin");
    if (!f.coeff(0, 1).is_zero())
        throw ContractError("normalization requires f_w = 0 at the origin");
}

HoloMap compose(const HoloMap& second, const HoloMap& first, int cutoff) {
    HoloPoly z1 = HoloPoly::variable_z() + first.g;
    HoloPoly w1 = HoloPoly::variable_w() + first.f;
    HoloMap out;
    out.g = first.g + second.g.substituted(z1, w1, cutoff);
    out.f = first.f + second.f.substituted(z1, w1, cutoff);
    out.g = out.g.truncated(cutoff);
    out.f = out.f.truncated(cutoff);
    return out;
}

HoloMap invert(const HoloMap& T, int cutoff) {
    T.validate();
    HoloMap inv;  // starts at 0
    // gtilde = -g(z + gtilde, w + ftilde), same for f. Each pair of passes
    // settles at least one more total degree; detect the exact fixed point.
    int cap = 2 * (cutoff + 3);
    for (int it = 0; it < cap; ++it) {
        HoloPoly z1 = HoloPoly::variable_z() + inv.g;
        HoloPoly w1 = HoloPoly::variable_w() + inv.f;
        HoloPoly ng = (-T.g.substituted(z1, w1, cutoff)).truncated(cutoff);
        HoloPoly nf = (-T.f.substituted(z1, w1, cutoff)).truncated(cutoff);
        if (ng == inv.g && nf == inv.f) return inv;
        inv.g = ng;
        inv.f = nf;
    }
    throw NumericError("formal inverse did not stabilize");
}

namespace {

// sum_{(i,j)} c z^i W^j with W a polynomial in (z, zbar, u).
Poly holo_eval(const HoloPoly& h, const Poly& W, int cutoff) {
    std::vector<Poly> wp{Poly::constant(CRational(1))};
    auto wpower = [&](int e) -> const Poly& {
        while (static_cast<int>(wp.size()) <= e) wp.push_back(Poly::mul(wp.back(), W, cutoff));
        return wp[e];
    };
    Poly out;
    for (const auto& [e, c] : h.terms()) {
        Poly t = Poly::mul(Poly::monomial(e.first, 0, 0, c), wpower(e.second), cutoff);
        out += t;
    }
    return out;
}

// P(Z, Zb, U) truncated at cutoff.
Poly compose_poly(const Poly& P, const Poly& Z, const Poly& Zb, const Poly& U, int cutoff) {
    std::vector<Poly> zp{Poly::constant(CRational(1))}, zbp{Poly::constant(CRational(1))},
        up{Poly::constant(CRational(1))};
    auto power = [&](std::vector<Poly>& cache, const Poly& base, int e) -> const Poly& {
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(Poly::mul(cache.back(), base, cutoff));
        return cache[e];
    };
    Poly out;
    for (const auto& [e, c] : P.terms()) {
        Poly t = Poly::mul(power(zp, Z, e.a), power(zbp, Zb, e.b), cutoff);
        t = Poly::mul(t, power(up, U, e.l), cutoff);
        out += t * c;
    }
    return out;
}

}  // namespace

Poly apply_holomorphic(const Poly& F, const HoloMap& T, int cutoff) {
    T.validate();
    if (!F.is_real()) throw ContractError("defining function must be real");
    for (const auto& [e, c] : F.terms())
        if (e.total() < 2)
            throw ContractError("defining function must vanish to second order at the origin");
    if (cutoff < F.total_degree()) throw ContractError("cutoff below the degree of the input");

    if (T.is_identity()) return F;

    // On the hypersurface w = u + iF.
    Poly W = Poly::variable_u() + F * CRational(Rational(0), Rational(1));
    Poly G = holo_eval(T.g, W, cutoff);
    Poly Ff = holo_eval(T.f, W, cutoff);

    Poly Z = Poly::variable_z() + G;
    Poly Zb = Z.conjugated();
    CRational half(Rational(1, 2));
    CRational neg_half_i(Rational(0), Rational(-1, 2));
    Poly U = Poly::variable_u() + (Ff + Ff.conjugated()) * half;
    Poly R = F + (Ff - Ff.conjugated()) * neg_half_i;

    // Solve Fs(Z, Zb, U) = R degree by degree. The substitution splits as
    // linear part + higher order with the linear part triangular
    // (z -> z + alpha_1 u, u -> u), so the degree-d slice of Fs is the
    // degree-d slice of R minus the already-known contributions of lower
    // slices, pulled back through the inverse linear map z -> z - alpha_1 u.
    CRational alpha1 = T.g.coeff(0, 1);
    std::vector<CRational> lin_inverse{CRational(0), -alpha1};
    Poly Fs;
    Poly lower;  // composition of the settled slices with the full map
    for (int d = 0; d <= cutoff; ++d) {
        Poly goal;
        for (const auto& [e, c] : R.terms())
            if (e.total() == d) goal.add_term(e, c);
        for (const auto& [e, c] : lower.terms())
            if (e.total() == d) goal.add_term(e, -c);
        if (goal.is_zero()) continue;
        Poly slice = substitute_z_shift(goal, lin_inverse, cutoff);
        // The pullback through the triangular inverse is degree preserving.
        Poly slice_d;
        for (const auto& [e, c] : slice.terms())
            if (e.total() == d) slice_d.add_term(e, c);
        Fs += slice_d;
        lower += compose_poly(slice_d, Z, Zb, U, cutoff);
    }

    Poly residual = (compose_poly(Fs, Z, Zb, U, cutoff) - R).truncated(cutoff);
    if (!residual.is_zero())
        throw NumericError("change of variables left a nonzero residual");
    if (!Fs.is_real()) throw NumericError("transformed defining function is not real");
    return Fs;
}

Poly apply_shift(const Poly& P, const ShiftMap& S, int k, const Rational& mu) {
    std::vector<CRational> q(S.delta.size() + 1);
    for (std::size_t m = 0; m < S.delta.size(); ++m) q[m + 1] = S.delta[m];
    int span = std::max<int>(1, static_cast<int>(S.delta.size()));
    int cutoff = P.total_degree() * span + 1;
    Poly shifted = substitute_z_shift(P, q, cutoff);
    return weight_filter_le(shifted, k, mu, Rational(1));
}

ShiftMap decompose_delta(const HoloMap& T, int k, const Rational& mu) {
    if (mu <= 0) throw ContractError("shift decomposition requires mu > 0");
    T.validate();
    Rational inv = Rational(1) / (Rational(k) * mu);
    BigInt n_big = numerator(inv) / denominator(inv);  // floor for positive values
    int N = n_big.convert_to<int>();
    ShiftMap S;
    S.delta.assign(N, CRational());
    if (N == 0) return S;

    // base = w + f(0, w), powers truncated past w^N.
    std::vector<CRational> base(N + 1);
    if (N >= 1) base[1] = CRational(1);
    for (int j = 2; j <= N; ++j) base[j] = T.f.coeff(0, j);

    // c[m][j] = coefficient of w^j in base^m.
    std::vector<std::vector<CRational>> c(N + 1, std::vector<CRational>(N + 1));
    c[0][0] = CRational(1);
    for (int m = 1; m <= N; ++m) {
        for (int j = 0; j <= N; ++j) {
            CRational acc;
            for (int t = 0; t <= j; ++t) {
                if (t <= N) acc += c[m - 1][j - t] * (t == 0 ? CRational() : base[t]);
            }
            c[m][j] = acc;
        }
    }

    for (int j = 1; j <= N; ++j) {
        CRational v = -T.g.coeff(0, j);
        for (int m = 1; m < j; ++m) v -= S.delta[m - 1] * c[m][j];
        // c[j][j] = 1, so delta_j is determined directly.
        S.delta[j - 1] = v;
    }
    return S;
}

}  // namespace kn
