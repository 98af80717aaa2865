#pragma once

#include <array>
#include <complex>
#include <vector>

#include "kn/poly.hpp"

namespace kn {

enum class Var { Z, Zbar, U };

// Formal term-by-term derivative. The result is generally not real for
// Var::Z / Var::Zbar; it is real for Var::U when P is real.
Poly diff(const Poly& P, Var v);

// 4 * d/dz d/dzbar P. Requires P real; the result is real and vanishes on
// z-harmonic polynomials.
Poly laplacian_z(const Poly& P);

// z -> z + q(u), zbar -> zbar + conj(q)(u), where q[j] is the coefficient
// of u^j. Exact binomial expansion; terms above `cutoff` total degree are
// discarded. Requires cutoff >= deg P.
Poly substitute_z_shift(const Poly& P, const std::vector<CRational>& q, int cutoff);

// Evaluation of a real polynomial. The imaginary residue of the complex
// accumulation must stay below 1e-12 relative; anything larger signals a
// corrupted coefficient map and throws NumericError.
double evaluate(const Poly& P, std::complex<double> z, double u);

// Evaluation without the reality contract (complex-coefficient results of
// Wirtinger derivatives).
std::complex<double> evaluate_complex(const Poly& P, std::complex<double> z, double u);

// Exact evaluation at a rational point.
CRational evaluate_exact(const Poly& P, const CRational& z, const Rational& u);

// Real Hessian of P restricted to the z-plane, as a quadratic form in the
// direction zeta: 2 Re(P_zz zeta^2) + 2 P_zzbar |zeta|^2.
double hessian_z(const Poly& P, std::complex<double> z, double u, std::complex<double> zeta);

// Full 3x3 real Hessian in the coordinates (x, y, u), z = x + iy.
std::array<std::array<double, 3>, 3> real_hessian3(const Poly& P, std::complex<double> z,
                                                   double u);

// Double-precision snapshot of a Poly for grid evaluation. eval() has no
// reality check; callers take .real() where appropriate.
class CompiledPoly {
  public:
    CompiledPoly() = default;
    explicit CompiledPoly(const Poly& P);

    std::complex<double> eval(std::complex<double> z, double u) const;
    bool empty() const { return terms_.empty(); }

  private:
    struct Term {
        int a, b, l;
        std::complex<double> c;
    };
    std::vector<Term> terms_;
    int max_a_ = 0, max_b_ = 0, max_l_ = 0;
};

}  // namespace kn
