#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kn/model.hpp"
#include "kn/poly.hpp"

namespace kn {

// Convexity threshold for |z|^k + a|z|^{k-l} Re z^l. The square is always
// an exact rational; the value itself is rational on the l^2 >= 3k-2
// branch.
struct GammaThreshold {
    int k = 0, l = 0;
    double value = 0.0;
    Rational value_sq;
    bool exact_rational = false;
    Rational exact;
};
GammaThreshold gamma_threshold(int k, int l);

enum class KnClass { Convex, NonconvexModel, NonconvexifiableCertified, ConvexUnknownBeyondModel };
const char* to_string(KnClass c);

// a <= gamma: convex. Beyond gamma the model is not convex, and when l
// does not divide k this already certifies nonconvexifiability.
KnClass kn_classify(int k, int l, double a);

struct ScreenSufficiency {
    bool holds = false;
    double sum = 0.0;  // sum of kappa_j / gamma_jk
};
ScreenSufficiency screen_sufficient(const InvariantSet& inv);

struct ScreenNecessity {
    bool pass = true;
    int fail_l = 0;      // first violated order
    double kappa = 0.0;  // offending invariant
    double bound = 0.0;  // violated bound (gamma or 2 gamma)
};
// (i) kappa_j <= gamma_jk for j > k/2, (ii) kappa_j <= 2 gamma_jk for
// j <= k/2; comparisons are exact on the squared invariants.
ScreenNecessity screen_necessary(const InvariantSet& inv);

// Basis of the harmonic correction space: exponent pairs (m, l) with
// m/k + mu*l = 1. Pairs with m < 2 are omitted (their z-Hessian vanishes
// identically); for mu = 0 the basis is the single pair (k, 0).
struct HarmonicBasisElem {
    int m = 0, l = 0;
};
std::vector<HarmonicBasisElem> harmonic_basis(int k, const Rational& mu);

// h(z, u) = Re sum alpha_t z^{m_t} u^{l_t}, z-harmonic of weight one.
struct HarmonicCorrection {
    std::vector<HarmonicBasisElem> basis;
    std::vector<std::complex<double>> alpha;

    bool is_zero() const;
    // (d^2/dz^2 h)(z, u)
    std::complex<double> hzz(std::complex<double> z, double u) const;
};

// u-free models restrict the minimization to |z| = 1 x S1; weighted models
// run over the full unit sphere |z|^2 + u^2 = 1.
enum class SphereDomain { Full, Circle };

struct SphereSample {
    std::complex<double> z;
    double u = 0.0;
    std::complex<double> zeta{1.0, 0.0};
};

struct GridConfig {
    int n_theta = 256;
    int n_phi = 256;
    int n_psi = 128;
    int refine_cells = 32;
};

struct MinHessianResult {
    double value = 0.0;
    SphereSample argmin;
    // Refined local minima of the best grid cells, value-sorted; the first
    // entry is the argmin. Extra entries feed additional cutting planes.
    std::vector<std::pair<double, SphereSample>> candidates;
};

// Global minimum of the restricted Hessian of P + h over the domain, by
// coarse grid plus deterministic local refinement of the best cells.
MinHessianResult min_hessian_on_sphere(const Poly& P, const HarmonicCorrection& h,
                                       SphereDomain domain, const GridConfig& grid);

struct SearchConfig {
    GridConfig grid;
    double tolerance = 1e-7;
    double eps_gap = 1e-8;
    // Certificates accept a relative duality gap: rotationally symmetric
    // models have a continuum of active points, and a finite cut set closes
    // the absolute gap only like the square of the cut spacing.
    double cert_rel_gap = 1e-5;
    int max_cuts = 200;
    double box_bound = 64.0;
    double box_bound_max = 8192.0;
};

enum class VerdictKind { Certificate, Refutation, Borderline };
const char* to_string(VerdictKind k);

struct ConvexityVerdict {
    VerdictKind kind = VerdictKind::Borderline;
    HarmonicCorrection h;       // best correction found
    double margin = 0.0;        // Certificate: verified grid minimum
    double upper_bound = 0.0;   // LP relaxation value (an upper bound on the max-min)
    int samples_used = 0;       // cut count at termination
    double tolerance = 0.0;
    SphereDomain domain = SphereDomain::Full;
    std::vector<double> lp_history;
    std::string diagnostics;
};

// Cutting-plane solution of max over h of min over the sphere of the
// restricted Hessian of P + h. Certificate when the verified minimum
// clears the tolerance, Refutation when the LP upper bound is below
// -tolerance with the box inactive, Borderline otherwise.
ConvexityVerdict certificate_search(const Poly& P, int k, const Rational& mu,
                                    const SearchConfig& cfg);

// Independent oracle for the threshold: bisection on a of nonnegativity of
// the Hessian of |z|^k + a|z|^{k-l} Re z^l over |z| = 1 x S1.
double brute_force_threshold(int k, int l, double tol);

}  // namespace kn
