#pragma once

#include <complex>
#include <random>

#include "kn/calculus.hpp"
#include "kn/poly.hpp"

namespace kn::testutil {

inline std::mt19937 make_rng(unsigned seed = 20260810u) { return std::mt19937(seed); }

inline Rational random_rational(std::mt19937& rng, int max_num = 9, int max_den = 9) {
    std::uniform_int_distribution<int> num(-max_num, max_num);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

// Random real polynomial: a few conjugate-paired off-diagonal terms plus
// diagonal and pure-u terms, bounded degree. Reality holds by construction.
inline Poly random_real_poly(std::mt19937& rng, int max_half_deg = 4, int max_u = 3,
                             int n_terms = 5) {
    std::uniform_int_distribution<int> zd(0, max_half_deg);
    std::uniform_int_distribution<int> ud(0, max_u);
    Poly p;
    for (int t = 0; t < n_terms; ++t) {
        int a = zd(rng), b = zd(rng), l = ud(rng);
        if (a == b) {
            p.add_term({a, b, l}, CRational(random_rational(rng)));
        } else {
            CRational c(random_rational(rng), random_rational(rng));
            p.add_term({a, b, l}, c);
            p.add_term({b, a, l}, c.conj());
        }
    }
    return p;
}

inline std::complex<double> random_unit(std::mt19937& rng) {
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    double t = ang(rng);
    return {std::cos(t), std::sin(t)};
}

inline std::complex<double> random_point(std::mt19937& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(rng), d(rng)};
}

// Independent oracle: second central difference of t -> P(z + t*zeta, u).
inline double fd_hessian_z(const Poly& P, std::complex<double> z, double u,
                           std::complex<double> zeta, double h = 1e-4) {
    double fp = evaluate(P, z + h * zeta, u);
    double f0 = evaluate(P, z, u);
    double fm = evaluate(P, z - h * zeta, u);
    return (fp - 2.0 * f0 + fm) / (h * h);
}

}  // namespace kn::testutil
