#include "kn/poly.hpp"

#include <algorithm>

#include "kn/errors.hpp"

namespace kn {

Poly Poly::monomial(int a, int b, int l, CRational c) {
    Poly p;
    p.add_term({a, b, l}, c);
    return p;
}

Poly Poly::constant(CRational c) { return monomial(0, 0, 0, std::move(c)); }

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.total());
    return d;
}

CRational Poly::coeff(int a, int b, int l) const { return coeff(Exponents{a, b, l}); }

CRational Poly::coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CRational() : it->second;
}

void Poly::add_term(const Exponents& e, const CRational& c) {
    if (c.is_zero()) return;
    if (e.a < 0 || e.b < 0 || e.l < 0) throw Error("negative exponent");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool Poly::is_real() const { return !first_nonreal_term().has_value(); }

std::optional<Exponents> Poly::first_nonreal_term() const {
    for (const auto& [e, c] : terms_) {
        if (coeff(e.conjugated()) != c.conj()) return e;
    }
    return std::nullopt;
}

Poly Poly::conjugated() const {
    Poly r;
    for (const auto& [e, c] : terms_) r.add_term(e.conjugated(), c.conj());
    return r;
}

Poly Poly::truncated(int max_total_degree) const {
    Poly r;
    for (const auto& [e, c] : terms_)
        if (e.total() <= max_total_degree) r.add_term(e, c);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [e, c] : terms_) r.add_term(e, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) { return Poly::mul(a, b, -1); }

Poly operator*(const Poly& a, const CRational& s) {
    Poly r;
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
    return r;
}

Poly Poly::mul(const Poly& a, const Poly& b, int cutoff) {
    Poly r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exponents e{ea.a + eb.a, ea.b + eb.b, ea.l + eb.l};
            if (cutoff >= 0 && e.total() > cutoff) continue;
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Poly Poly::pow(int e, int cutoff) const {
    if (e < 0) throw Error("negative polynomial power");
    Poly acc = Poly::constant(CRational(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base, cutoff);
        e >>= 1;
        if (e) base = mul(base, base, cutoff);
    }
    return acc;
}

}  // namespace kn
