#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "kn/errors.hpp"
#include "kn/model.hpp"
#include "kn/parser.hpp"
#include "test_util.hpp"

using namespace kn;
using namespace kn::testutil;

namespace {

const char* kKohnNirenberg = "|z|^8 + (15/7)*|z|^2*Re(z^6)";

std::string family_a(const std::string& a) {
    return "|z|^8 + (|z|^6 + " + a + "*|z|^2*Re(z^4))*u^2 + |z|^2*u^8";
}

}  // namespace

TEST_CASE("type of the classical examples") {
    CHECK(compute_type(parse_real_poly(kKohnNirenberg)) == 8);
    CHECK(compute_type(parse_real_poly(family_a("1"))) == 8);
    // Harmonic low-degree terms do not lower the type.
    CHECK(compute_type(parse_real_poly("Re(z^4) + |z|^6")) == 6);
    CHECK(compute_type(parse_real_poly("|z|^2")) == 2);
}

TEST_CASE("type rejects inputs without a mixed u-free term") {
    CHECK_THROWS_AS(compute_type(parse_real_poly("Re(z^4) + u^2")), ContractError);
    // |z|^2*Re(z) expands to mixed monomials of odd degree 3.
    CHECK_THROWS_AS(compute_type(parse_real_poly("|z|^2*Re(z)")), ContractError);
}

TEST_CASE("weight of the u-dependent families") {
    Poly ma = parse_real_poly(family_a("1"));
    CHECK(compute_weight(ma, 8) == Rational(1, 8));

    // P1 + Q u^s with Q mixed of degree m < k has mu = 1/s - m/(k s).
    Poly f = parse_real_poly("|z|^6 + |z|^2*u^4");
    CHECK(compute_weight(f, 6) == Rational(1, 4) - Rational(2, 24));  // = 1/6

    CHECK(compute_weight(parse_real_poly("|z|^4"), 4) == Rational(0));
    // Harmonic u-terms are removable and contribute no candidate.
    CHECK(compute_weight(parse_real_poly("|z|^4 + Re(z^2)*u^2 + u^3"), 4) == Rational(0));
    // Mixed monomials of z-degree >= k do not constrain the weight.
    CHECK(compute_weight(parse_real_poly("|z|^4 + |z|^4*u^2"), 4) == Rational(0));
}

TEST_CASE("weight pair witnesses allowability") {
    WeightVector wv = weight_vector(8, Rational(1, 8));
    CHECK(wv.k1 == 7);
    CHECK(wv.k2 == 1);
    CHECK(Rational(wv.k1, 8) + Rational(wv.k2) * wv.mu == 1);

    WeightVector wv2 = weight_vector(6, Rational(1, 3));
    CHECK(Rational(wv2.k1, 6) + Rational(wv2.k2) * wv2.mu == 1);

    WeightVector wv3 = weight_vector(6, Rational(1, 12));
    CHECK(Rational(wv3.k1, 6) + Rational(wv3.k2) * wv3.mu == 1);
}

TEST_CASE("generalized model of the weighted family") {
    Poly ma = parse_real_poly(family_a("1"));
    ModelReport r = generalized_model(ma, 8, Rational(1, 8));
    CHECK(r.model == parse_real_poly("|z|^8 + (|z|^6 + |z|^2*Re(z^4))*u^2"));
    CHECK(r.standard_model == parse_real_poly("|z|^8"));
    REQUIRE(r.residual_terms.size() == 1);
    CHECK(r.residual_terms[0].first == Exponents{1, 1, 8});
    CHECK(r.removable_terms.empty());
}

TEST_CASE("generalized model for mu = 0 is the standard model") {
    Poly p = parse_real_poly("|z|^4 + Re(z^6)");
    ModelReport r = generalized_model(p, 4, Rational(0));
    CHECK(r.model == parse_real_poly("|z|^4"));
    CHECK(r.model == r.standard_model);
    CHECK(r.residual_terms.size() == 2);  // the conjugate pair of Re(z^6)

    // Sub-weight-one harmonic terms are removable, never residual.
    Poly q = parse_real_poly("|z|^6 + Re(z^4) + u^4");
    ModelReport r2 = generalized_model(q, 6, Rational(0));
    CHECK(r2.model == parse_real_poly("|z|^6"));
    CHECK(r2.removable_terms.size() == 3);  // z^4, zbar^4 and u^4
}

TEST_CASE("simple weighted model keeps its mixed u-term") {
    Poly p = parse_real_poly("|z|^6 + |z|^2*u^2");
    Rational mu = compute_weight(p, 6);
    CHECK(mu == Rational(1, 3));
    ModelReport r = generalized_model(p, 6, mu);
    CHECK(r.model == p);
    CHECK(r.residual_terms.empty());
}

TEST_CASE("model rejects non-harmonic sub-weight-one monomials") {
    Poly p = parse_real_poly("|z|^6 + |z|^2*u^2");
    // Claiming mu = 1/6 makes |z|^2 u^2 weigh 2/6 + 2/6 < 1.
    CHECK_THROWS_AS(generalized_model(p, 6, Rational(1, 6)), ContractError);
}

TEST_CASE("weighted homogeneity of generalized models, exactly") {
    auto rng = make_rng(300);
    const char* inputs[] = {
        "|z|^8 + (|z|^6 + |z|^2*Re(z^4))*u^2 + |z|^2*u^8",
        "|z|^6 + |z|^2*u^2",
        "|z|^4",
        "|z|^8 + (15/7)*|z|^2*Re(z^6)",
    };
    for (const char* text : inputs) {
        Poly f = parse_real_poly(text);
        int k = compute_type(f);
        Rational mu = compute_weight(f, k);
        Poly model = generalized_model(f, k, mu).model;
        for (const auto& [e, c] : model.terms()) CHECK(monomial_weight(e, k, mu) == 1);
        for (int i = 0; i < 10; ++i) {
            Rational r = random_rational(rng, 7, 7);
            if (r == 0) r = Rational(1, 2);
            long q = denominator(mu).convert_to<long>();
            Poly scaled = scale_weighted(model, r, k, mu);
            CHECK(scaled == model * CRational(rational_pow(r, k * q)));
        }
    }
}

TEST_CASE("mu maximality: all mixed monomials weigh at least one") {
    Poly ma = parse_real_poly(family_a("2"));
    int k = compute_type(ma);
    Rational mu = compute_weight(ma, k);
    bool attained = false;
    for (const auto& [e, c] : ma.terms()) {
        if (e.z_harmonic()) continue;
        Rational w = monomial_weight(e, k, mu);
        CHECK(w >= 1);
        if (e.l >= 1 && w == 1) attained = true;
    }
    CHECK(attained);
}

TEST_CASE("invariants of the kohn-nirenberg polynomial") {
    InvariantSet inv = kn_invariants(parse_real_poly(kKohnNirenberg));
    CHECK(inv.a0 == Rational(1));
    REQUIRE(inv.kappa.size() == 3);
    CHECK(inv.kappa[0].l == 2);
    CHECK(inv.kappa[0].value == 0.0);
    CHECK(inv.kappa[1].value == 0.0);
    CHECK(inv.kappa[2].l == 6);
    CHECK(inv.kappa[2].exact_known);
    CHECK(inv.kappa[2].exact == Rational(15, 7));
    CHECK(inv.kappa[2].value_sq == Rational(225, 49));
}

TEST_CASE("invariants of a pure diagonal model vanish") {
    InvariantSet inv = kn_invariants(parse_real_poly("|z|^6"));
    for (const auto& e : inv.kappa) {
        CHECK(e.value == 0.0);
        CHECK(e.exact_known);
        CHECK(e.exact == 0);
    }
}

TEST_CASE("invariants reject non-normalizable models") {
    CHECK_THROWS_AS(kn_invariants(parse_real_poly("-|z|^4")), ContractError);
    CHECK_THROWS_AS(kn_invariants(parse_real_poly("Re(z^4)")), ContractError);
    CHECK_THROWS_AS(kn_invariants(parse_real_poly("|z|^4 + |z|^2")), ContractError);
    CHECK_THROWS_AS(kn_invariants(parse_real_poly("|z|^2*u^2")), ContractError);
}

TEST_CASE("kappa is invariant under rescaling and harmonic top terms") {
    auto rng = make_rng(301);
    Poly p1 = parse_real_poly("|z|^8 + (15/7)*|z|^2*Re(z^6) + 1/3*|z|^4*Re(z^4)");
    InvariantSet base = kn_invariants(p1);
    int k = 8;
    for (int i = 0; i < 10; ++i) {
        CRational c(random_rational(rng, 4, 4), random_rational(rng, 4, 4));
        if (c.is_zero()) c = CRational(Rational(1), Rational(1));
        // z -> c z rescaling, with |c|^{-k} renormalization kept exact by
        // scaling with the rational |c|^2.
        Poly scaled;
        for (const auto& [e, m] : p1.terms()) {
            CRational factor(1);
            for (int t = 0; t < e.a; ++t) factor = factor * c;
            CRational cb = c.conj();
            for (int t = 0; t < e.b; ++t) factor = factor * cb;
            scaled.add_term(e, m * factor);
        }
        InvariantSet after = kn_invariants(scaled);
        for (std::size_t j = 0; j < base.kappa.size(); ++j)
            CHECK(after.kappa[j].value_sq == base.kappa[j].value_sq);

        // Adding Re(alpha z^k) only touches the full-harmonic slot.
        Poly bumped = p1;
        bumped.add_term({k, 0, 0}, c);
        bumped.add_term({0, k, 0}, c.conj());
        InvariantSet after2 = kn_invariants(bumped);
        for (std::size_t j = 0; j < base.kappa.size(); ++j)
            CHECK(after2.kappa[j].value_sq == base.kappa[j].value_sq);
    }
}
