#include "kn/calculus.hpp"

#include <cmath>
#include <cstdlib>

#include "kn/errors.hpp"

namespace kn {

Poly diff(const Poly& P, Var v) {
    Poly r;
    for (const auto& [e, c] : P.terms()) {
        switch (v) {
            case Var::Z:
                if (e.a > 0) r.add_term({e.a - 1, e.b, e.l}, c * Rational(e.a));
                break;
            case Var::Zbar:
                if (e.b > 0) r.add_term({e.a, e.b - 1, e.l}, c * Rational(e.b));
                break;
            case Var::U:
                if (e.l > 0) r.add_term({e.a, e.b, e.l - 1}, c * Rational(e.l));
                break;
        }
    }
    return r;
}

Poly laplacian_z(const Poly& P) {
    if (!P.is_real()) throw Error("laplacian_z requires a real polynomial");
    Poly r = diff(diff(P, Var::Z), Var::Zbar) * CRational(Rational(4));
    if (!r.is_real()) throw NumericError("laplacian_z produced a non-real result");
    return r;
}

Poly substitute_z_shift(const Poly& P, const std::vector<CRational>& q, int cutoff) {
    if (cutoff < P.total_degree())
        throw Error("substitute cutoff below the degree of the polynomial");
    Poly zrepl = Poly::variable_z();
    Poly zbrepl = Poly::variable_zbar();
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (q[j].is_zero()) continue;
        zrepl.add_term({0, 0, static_cast<int>(j)}, q[j]);
        zbrepl.add_term({0, 0, static_cast<int>(j)}, q[j].conj());
    }
    Poly out;
    // Cache powers per distinct exponent seen, smallest first.
    std::vector<Poly> zpow{Poly::constant(CRational(1))}, zbpow{Poly::constant(CRational(1))};
    auto power = [&](std::vector<Poly>& cache, const Poly& base, int e) -> const Poly& {
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(Poly::mul(cache.back(), base, cutoff));
        return cache[e];
    };
    for (const auto& [e, c] : P.terms()) {
        Poly t = Poly::mul(power(zpow, zrepl, e.a), power(zbpow, zbrepl, e.b), cutoff);
        Poly m = Poly::monomial(0, 0, e.l, c);
        out += Poly::mul(t, m, cutoff);
    }
    return out;
}

namespace {

std::complex<double> eval_impl(const Poly& P, std::complex<double> z, double u, double* abs_sum) {
    int max_a = 0, max_b = 0, max_l = 0;
    for (const auto& [e, c] : P.terms()) {
        max_a = std::max(max_a, e.a);
        max_b = std::max(max_b, e.b);
        max_l = std::max(max_l, e.l);
    }
    std::vector<std::complex<double>> zp(max_a + 1), zbp(max_b + 1);
    std::vector<double> up(max_l + 1);
    zp[0] = zbp[0] = {1.0, 0.0};
    up[0] = 1.0;
    std::complex<double> zb = std::conj(z);
    for (int i = 1; i <= max_a; ++i) zp[i] = zp[i - 1] * z;
    for (int i = 1; i <= max_b; ++i) zbp[i] = zbp[i - 1] * zb;
    for (int i = 1; i <= max_l; ++i) up[i] = up[i - 1] * u;
    std::complex<double> acc{0.0, 0.0};
    double asum = 0.0;
    for (const auto& [e, c] : P.terms()) {
        std::complex<double> t = c.to_complex() * zp[e.a] * zbp[e.b] * up[e.l];
        acc += t;
        asum += std::abs(t);
    }
    if (abs_sum) *abs_sum = asum;
    return acc;
}

}  // namespace

double evaluate(const Poly& P, std::complex<double> z, double u) {
    double asum = 0.0;
    std::complex<double> v = eval_impl(P, z, u, &asum);
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, asum))
        throw NumericError("imaginary residue in evaluation of a real polynomial");
    return v.real();
}

std::complex<double> evaluate_complex(const Poly& P, std::complex<double> z, double u) {
    return eval_impl(P, z, u, nullptr);
}

CRational evaluate_exact(const Poly& P, const CRational& z, const Rational& u) {
    CRational acc;
    CRational zb = z.conj();
    for (const auto& [e, c] : P.terms()) {
        CRational t = c;
        for (int i = 0; i < e.a; ++i) t = t * z;
        for (int i = 0; i < e.b; ++i) t = t * zb;
        t = t * rational_pow(u, e.l);
        acc += t;
    }
    return acc;
}

double hessian_z(const Poly& P, std::complex<double> z, double u, std::complex<double> zeta) {
    Poly pz = diff(P, Var::Z);
    Poly pzz = diff(pz, Var::Z);
    Poly pzzb = diff(pz, Var::Zbar);
    std::complex<double> A = evaluate_complex(pzz, z, u);
    std::complex<double> B = evaluate_complex(pzzb, z, u);
    return 2.0 * (A * zeta * zeta).real() + 2.0 * B.real() * std::norm(zeta);
}

std::array<std::array<double, 3>, 3> real_hessian3(const Poly& P, std::complex<double> z,
                                                   double u) {
    Poly pz = diff(P, Var::Z);
    std::complex<double> pzz = evaluate_complex(diff(pz, Var::Z), z, u);
    std::complex<double> pzzb = evaluate_complex(diff(pz, Var::Zbar), z, u);
    std::complex<double> pzu = evaluate_complex(diff(pz, Var::U), z, u);
    std::complex<double> puu = evaluate_complex(diff(diff(P, Var::U), Var::U), z, u);

    double xx = 2.0 * pzz.real() + 2.0 * pzzb.real();
    double yy = -2.0 * pzz.real() + 2.0 * pzzb.real();
    double xy = -2.0 * pzz.imag();
    double xu = 2.0 * pzu.real();
    double yu = -2.0 * pzu.imag();
    double uu = puu.real();
    return {{{xx, xy, xu}, {xy, yy, yu}, {xu, yu, uu}}};
}

CompiledPoly::CompiledPoly(const Poly& P) {
    for (const auto& [e, c] : P.terms()) {
        terms_.push_back({e.a, e.b, e.l, c.to_complex()});
        max_a_ = std::max(max_a_, e.a);
        max_b_ = std::max(max_b_, e.b);
        max_l_ = std::max(max_l_, e.l);
    }
    if (max_a_ >= 64 || max_b_ >= 64 || max_l_ >= 64)
        throw Error("polynomial degree exceeds the compiled evaluation limit");
}

std::complex<double> CompiledPoly::eval(std::complex<double> z, double u) const {
    // Degrees in this problem domain stay far below the table size.
    constexpr int kMaxPow = 64;
    std::complex<double> zp[kMaxPow], zbp[kMaxPow];
    double up[kMaxPow];
    zp[0] = zbp[0] = {1.0, 0.0};
    up[0] = 1.0;
    std::complex<double> zb = std::conj(z);
    for (int i = 1; i <= max_a_; ++i) zp[i] = zp[i - 1] * z;
    for (int i = 1; i <= max_b_; ++i) zbp[i] = zbp[i - 1] * zb;
    for (int i = 1; i <= max_l_; ++i) up[i] = up[i - 1] * u;
    std::complex<double> acc{0.0, 0.0};
    for (const Term& t : terms_) acc += t.c * zp[t.a] * zbp[t.b] * up[t.l];
    return acc;
}

}  // namespace kn
