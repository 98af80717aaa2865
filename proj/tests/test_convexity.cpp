#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "kn/calculus.hpp"
#include "kn/convexity.hpp"
#include "kn/errors.hpp"
#include "kn/parser.hpp"
#include "test_util.hpp"

using namespace kn;
using namespace kn::testutil;

namespace {

GridConfig small_grid() {
    GridConfig g;
    g.n_theta = 128;
    g.n_phi = 128;
    g.n_psi = 64;
    return g;
}

SearchConfig small_search() {
    SearchConfig cfg;
    cfg.grid = small_grid();
    return cfg;
}

}  // namespace

TEST_CASE("threshold closed forms") {
    GammaThreshold g64 = gamma_threshold(6, 4);  // l^2 = 3k - 2: both branches agree
    CHECK(g64.exact_rational);
    CHECK(g64.exact == Rational(3, 5));

    GammaThreshold g86 = gamma_threshold(8, 6);
    CHECK(g86.exact_rational);
    CHECK(g86.exact == Rational(2, 7));

    GammaThreshold g42 = gamma_threshold(4, 2);
    CHECK(!g42.exact_rational);
    CHECK(g42.value_sq == Rational(8, 9));
    CHECK(g42.value == doctest::Approx(std::sqrt(8.0) / 3.0).epsilon(1e-12));

    CHECK(gamma_threshold(10, 8).exact == Rational(5, 27));
    CHECK(gamma_threshold(6, 2).value == doctest::Approx(0.948683298).epsilon(1e-8));

    CHECK_THROWS_AS(gamma_threshold(8, 3), ContractError);
    CHECK_THROWS_AS(gamma_threshold(8, 8), ContractError);
    CHECK_THROWS_AS(gamma_threshold(7, 2), ContractError);
}

TEST_CASE("classification against the threshold") {
    CHECK(kn_classify(8, 6, 15.0 / 7.0) == KnClass::NonconvexifiableCertified);
    CHECK(kn_classify(6, 4, 0.5) == KnClass::Convex);
    CHECK(kn_classify(6, 4, 0.0) == KnClass::Convex);
    CHECK(kn_classify(10, 4, 0.0) == KnClass::Convex);
    // l | k leaves convexifiability beyond the threshold undecided here.
    CHECK(kn_classify(8, 4, 1.0) == KnClass::NonconvexModel);
    CHECK(kn_classify(8, 2, 2.0) == KnClass::NonconvexModel);
}

TEST_CASE("sufficient screen") {
    ScreenSufficiency s1 = screen_sufficient(kn_invariants(parse_real_poly("|z|^6 + 0.1*|z|^2*Re(z^4)")));
    CHECK(s1.holds);
    CHECK(s1.sum == doctest::Approx(1.0 / 6.0).epsilon(1e-9));

    CHECK(screen_sufficient(kn_invariants(parse_real_poly("|z|^8"))).holds);

    ScreenSufficiency s3 =
        screen_sufficient(kn_invariants(parse_real_poly("|z|^8 + (15/7)*|z|^2*Re(z^6)")));
    CHECK(!s3.holds);
    CHECK(s3.sum == doctest::Approx(7.5).epsilon(1e-9));
}

TEST_CASE("necessary screen") {
    ScreenNecessity n1 =
        screen_necessary(kn_invariants(parse_real_poly("|z|^8 + (15/7)*|z|^2*Re(z^6)")));
    CHECK(!n1.pass);
    CHECK(n1.fail_l == 6);
    CHECK(n1.bound == doctest::Approx(2.0 / 7.0).epsilon(1e-12));

    CHECK(screen_necessary(kn_invariants(parse_real_poly("|z|^10"))).pass);

    // kappa_2 = 1.3 <= 2 gamma_{2,6} ~ 1.897: order two is in the doubled regime.
    ScreenNecessity n3 =
        screen_necessary(kn_invariants(parse_real_poly("|z|^6 + 1.3*|z|^4*Re(z^2)")));
    CHECK(n3.pass);

    ScreenNecessity n4 =
        screen_necessary(kn_invariants(parse_real_poly("|z|^6 + 2*|z|^4*Re(z^2)")));
    CHECK(!n4.pass);
    CHECK(n4.fail_l == 2);
}

TEST_CASE("harmonic basis enumeration") {
    auto b0 = harmonic_basis(8, Rational(0));
    REQUIRE(b0.size() == 1);
    CHECK(b0[0].m == 8);
    CHECK(b0[0].l == 0);

    auto b1 = harmonic_basis(8, Rational(1, 8));
    REQUIRE(b1.size() == 7);  // m + l = 8 with m >= 2
    CHECK(b1.front().m == 8);
    CHECK(b1.back().m == 2);
    CHECK(b1.back().l == 6);

    auto b2 = harmonic_basis(6, Rational(1, 3));
    REQUIRE(b2.size() == 3);
    CHECK(b2[1].m == 4);
    CHECK(b2[1].l == 1);
}

TEST_CASE("minimum of the restricted hessian on the sphere") {
    HarmonicCorrection none;

    // |z|^4 degenerates at the poles of the full sphere.
    MinHessianResult pole = min_hessian_on_sphere(parse_real_poly("|z|^4"), none,
                                                  SphereDomain::Full, small_grid());
    CHECK(std::abs(pole.value) <= 1e-9);
    CHECK(std::abs(pole.argmin.u) == doctest::Approx(1.0).epsilon(1e-6));

    // |z|^2 has constant mixed derivative 1, no pole degeneracy.
    MinHessianResult flat = min_hessian_on_sphere(parse_real_poly("|z|^2"), none,
                                                  SphereDomain::Full, small_grid());
    CHECK(flat.value == doctest::Approx(2.0).epsilon(1e-9));

    // The circle domain of a u-free model: |z|^4 is strictly convex there.
    MinHessianResult circ = min_hessian_on_sphere(parse_real_poly("|z|^4"), none,
                                                  SphereDomain::Circle, small_grid());
    CHECK(circ.value == doctest::Approx(4.0).epsilon(1e-9));

    // Beyond the threshold the kohn-nirenberg model dips negative.
    MinHessianResult neg = min_hessian_on_sphere(
        parse_real_poly("|z|^8 + (15/7)*|z|^2*Re(z^6)"), none, SphereDomain::Circle, small_grid());
    CHECK(neg.value < 0.0);

    // Hand value for a weighted model: min of 2(3|z|^4 + u^2 - ... ) is 11/6.
    MinHessianResult mixed = min_hessian_on_sphere(parse_real_poly("|z|^6 + |z|^2*u^2"), none,
                                                   SphereDomain::Full, small_grid());
    CHECK(mixed.value == doctest::Approx(11.0 / 6.0).epsilon(1e-6));

    // Samples stay normalized.
    CHECK(std::norm(mixed.argmin.z) + mixed.argmin.u * mixed.argmin.u ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(mixed.argmin.zeta) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("harmonic corrections move only the pure second derivative") {
    auto rng = make_rng(400);
    Poly model = parse_real_poly("|z|^8 + (|z|^6 + |z|^2*Re(z^4))*u^2");
    auto basis = harmonic_basis(8, Rational(1, 8));
    HarmonicCorrection h;
    h.basis = basis;
    std::vector<CRational> exact_alpha;
    std::uniform_int_distribution<int> num(-12, 12);
    for (std::size_t t = 0; t < basis.size(); ++t) {
        // Dyadic values so the double and rational forms agree exactly.
        CRational a(Rational(num(rng), 8), Rational(num(rng), 8));
        exact_alpha.push_back(a);
        h.alpha.push_back(a.to_complex());
    }

    // As a polynomial, every basis element is annihilated by d/dz d/dzbar.
    for (const auto& e : basis) {
        Poly harm;
        harm.add_term({e.m, 0, e.l}, CRational(Rational(1, 2)));
        harm.add_term({0, e.m, e.l}, CRational(Rational(1, 2)));
        CHECK(diff(diff(harm, Var::Z), Var::Zbar).is_zero());
        for (const auto& [ex, c] : harm.terms()) CHECK(monomial_weight(ex, 8, Rational(1, 8)) == 1);
    }

    for (int i = 0; i < 20; ++i) {
        double phi = std::abs(random_point(rng).real()) * 3.0;
        double theta = random_point(rng).real() * 3.0;
        std::complex<double> z = std::polar(std::abs(std::sin(phi)), theta);
        double u = std::cos(phi);
        std::complex<double> zeta = random_unit(rng);
        double without_h = hessian_z(model, z, u, zeta);
        std::complex<double> hzz = h.hzz(z, u);
        double with_h = without_h + 2.0 * (hzz * zeta * zeta).real();
        // Rebuild h as an exact polynomial and compare.
        Poly hpoly;
        for (std::size_t t = 0; t < basis.size(); ++t) {
            hpoly.add_term({basis[t].m, 0, basis[t].l}, exact_alpha[t] * Rational(1, 2));
            hpoly.add_term({0, basis[t].m, basis[t].l}, exact_alpha[t].conj() * Rational(1, 2));
        }
        double direct = hessian_z(model + hpoly, z, u, zeta);
        CHECK(direct == doctest::Approx(with_h).epsilon(1e-6));
    }
}

TEST_CASE("certificate search on strictly convex circle models") {
    SearchConfig cfg = small_search();

    ConvexityVerdict v4 = certificate_search(parse_real_poly("|z|^4"), 4, Rational(0), cfg);
    CHECK(v4.kind == VerdictKind::Certificate);
    CHECK(v4.domain == SphereDomain::Circle);
    CHECK(v4.margin == doctest::Approx(4.0).epsilon(1e-6));

    ConvexityVerdict v2 = certificate_search(parse_real_poly("|z|^2"), 2, Rational(0), cfg);
    CHECK(v2.kind == VerdictKind::Certificate);
    CHECK(v2.margin == doctest::Approx(2.0).epsilon(1e-6));

    // Below the threshold: convex two-term model stays certifiable.
    ConvexityVerdict vt =
        certificate_search(parse_real_poly("|z|^6 + 0.1*|z|^2*Re(z^4)"), 6, Rational(0), cfg);
    CHECK(vt.kind == VerdictKind::Certificate);
    CHECK(vt.kind != VerdictKind::Refutation);  // refutation soundness
    CHECK(vt.margin > 0.0);
}

TEST_CASE("certificate verifies on a four times finer grid") {
    SearchConfig cfg = small_search();
    ConvexityVerdict v = certificate_search(parse_real_poly("|z|^4"), 4, Rational(0), cfg);
    REQUIRE(v.kind == VerdictKind::Certificate);
    GridConfig fine = cfg.grid;
    fine.n_theta *= 4;
    fine.n_phi *= 4;
    fine.n_psi *= 4;
    MinHessianResult re = min_hessian_on_sphere(parse_real_poly("|z|^4"), v.h, v.domain, fine);
    CHECK(re.value > v.margin / 2.0);
}

TEST_CASE("refutation of the kohn-nirenberg model") {
    SearchConfig cfg = small_search();
    ConvexityVerdict v = certificate_search(parse_real_poly("|z|^8 + (15/7)*|z|^2*Re(z^6)"), 8,
                                            Rational(0), cfg);
    CHECK(v.kind == VerdictKind::Refutation);
    CHECK(v.upper_bound < -cfg.tolerance);
    // LP relaxation values never increase as cuts accumulate.
    for (std::size_t i = 1; i < v.lp_history.size(); ++i)
        CHECK(v.lp_history[i] <= v.lp_history[i - 1] + 1e-9);
}

TEST_CASE("refutation of the weighted family at a = 1") {
    SearchConfig cfg = small_search();
    Poly model = parse_real_poly("|z|^8 + (|z|^6 + |z|^2*Re(z^4))*u^2");
    ConvexityVerdict v = certificate_search(model, 8, Rational(1, 8), cfg);
    CHECK(v.kind == VerdictKind::Refutation);
    CHECK(v.domain == SphereDomain::Full);
    CHECK(v.upper_bound < -cfg.tolerance);
}

TEST_CASE("borderline at the exact threshold") {
    SearchConfig cfg = small_search();
    ConvexityVerdict v =
        certificate_search(parse_real_poly("|z|^6 + (3/5)*|z|^2*Re(z^4)"), 6, Rational(0), cfg);
    CHECK(v.kind == VerdictKind::Borderline);
}

TEST_CASE("weighted certificate when the model controls the poles") {
    SearchConfig cfg = small_search();
    Poly model = parse_real_poly("|z|^6 + |z|^2*u^2");
    ConvexityVerdict v = certificate_search(model, 6, Rational(1, 3), cfg);
    CHECK(v.kind == VerdictKind::Certificate);
    CHECK(v.margin == doctest::Approx(11.0 / 6.0).epsilon(1e-5));
}

TEST_CASE("certificate search validates weight-one input") {
    SearchConfig cfg = small_search();
    CHECK_THROWS_AS(certificate_search(parse_real_poly("|z|^4 + |z|^2"), 4, Rational(0), cfg),
                    ContractError);
}

TEST_CASE("bisection oracle matches the closed forms") {
    CHECK(std::abs(brute_force_threshold(6, 4, 1e-4) - 0.6) < 1e-3);
    CHECK(std::abs(brute_force_threshold(8, 6, 1e-4) - 2.0 / 7.0) < 1e-3);
    CHECK(std::abs(brute_force_threshold(4, 2, 1e-4) - std::sqrt(8.0) / 3.0) < 1e-3);
}
