#include "kn/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kn/calculus.hpp"
#include "kn/errors.hpp"
#include "kn/parallel.hpp"
#include "kn/simplex.hpp"
#include "kn/weights.hpp"
#include "pattern.hpp"

namespace kn {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.1415926535897932384626433832795;

// Integer powers by repeated multiplication; std::pow on complex values
// NaNs out at a zero base with zero exponent, which the sphere poles hit.
std::complex<double> cipow(std::complex<double> base, int e) {
    std::complex<double> acc{1.0, 0.0};
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

double ripow(double base, int e) {
    double acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}
}  // namespace

const char* to_string(KnClass c) {
    switch (c) {
        case KnClass::Convex: return "Convex";
        case KnClass::NonconvexModel: return "NonconvexModel";
        case KnClass::NonconvexifiableCertified: return "NonconvexifiableCertified";
        case KnClass::ConvexUnknownBeyondModel: return "ConvexUnknownBeyondModel";
    }
    return "?";
}

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Certificate: return "Certificate";
        case VerdictKind::Refutation: return "Refutation";
        case VerdictKind::Borderline: return "Borderline";
    }
    return "?";
}

GammaThreshold gamma_threshold(int k, int l) {
    if (k <= 2 || l <= 0 || l >= k || k % 2 != 0 || l % 2 != 0)
        throw ContractError("gamma threshold needs even 0 < l < k with k > 2");
    GammaThreshold g;
    g.k = k;
    g.l = l;
    long ll = static_cast<long>(l) * l;
    Rational second_sq = Rational((4 * k - ll - 4) * static_cast<long>(k) * k) /
                         Rational((4 * k - 4) * (static_cast<long>(k) * k - ll));
    if (ll >= 3 * k - 2) {
        Rational first(k, ll - k);
        g.exact_rational = true;
        g.exact = first;
        g.value_sq = first * first;
        g.value = to_double(first);
        if (ll == 3 * k - 2) {
            double other = std::sqrt(to_double(second_sq));
            if (std::abs(other - g.value) > 1e-12)
                throw NumericError("threshold branches disagree at l^2 = 3k - 2");
        }
    } else {
        g.value_sq = second_sq;
        g.value = std::sqrt(to_double(second_sq));
        Rational root;
        if (rational_sqrt(second_sq, root)) {
            g.exact_rational = true;
            g.exact = root;
            g.value = to_double(root);
        }
    }
    return g;
}

KnClass kn_classify(int k, int l, double a) {
    if (a < 0) throw ContractError("invariant must be nonnegative");
    GammaThreshold g = gamma_threshold(k, l);
    if (a <= g.value) return KnClass::Convex;
    if (k % l != 0) return KnClass::NonconvexifiableCertified;
    return KnClass::NonconvexModel;
}

ScreenSufficiency screen_sufficient(const InvariantSet& inv) {
    ScreenSufficiency s;
    for (const auto& e : inv.kappa) {
        if (e.value == 0.0) continue;
        s.sum += e.value / gamma_threshold(inv.k, e.l).value;
    }
    s.holds = s.sum < 1.0;
    return s;
}

ScreenNecessity screen_necessary(const InvariantSet& inv) {
    ScreenNecessity r;
    for (const auto& e : inv.kappa) {
        GammaThreshold g = gamma_threshold(inv.k, e.l);
        // kappa <= gamma compared exactly through the squares.
        Rational bound_sq = e.l > inv.k / 2 ? g.value_sq : Rational(4) * g.value_sq;
        if (e.value_sq > bound_sq) {
            r.pass = false;
            r.fail_l = e.l;
            r.kappa = e.value;
            r.bound = e.l > inv.k / 2 ? g.value : 2.0 * g.value;
            return r;
        }
    }
    return r;
}

std::vector<HarmonicBasisElem> harmonic_basis(int k, const Rational& mu) {
    std::vector<HarmonicBasisElem> basis;
    if (mu == 0) {
        basis.push_back({k, 0});
        return basis;
    }
    Rational inv_mu = Rational(1) / mu;
    long lmax = (numerator(inv_mu) / denominator(inv_mu)).convert_to<long>();
    for (long l = 0; l <= lmax; ++l) {
        Rational m = Rational(k) * (1 - mu * l);
        if (denominator(m) != 1) continue;
        long mi = numerator(m).convert_to<long>();
        if (mi >= 2) basis.push_back({static_cast<int>(mi), static_cast<int>(l)});
    }
    return basis;
}

bool HarmonicCorrection::is_zero() const {
    for (const auto& a : alpha)
        if (a != std::complex<double>(0.0, 0.0)) return false;
    return true;
}

std::complex<double> HarmonicCorrection::hzz(std::complex<double> z, double u) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < basis.size(); ++t) {
        const auto& e = basis[t];
        double m = e.m;
        acc += alpha[t] * (0.5 * m * (m - 1)) * cipow(z, e.m - 2) * ripow(u, e.l);
    }
    return acc;
}

namespace {

struct HessEval {
    CompiledPoly pzz, pzzb;
    const HarmonicCorrection* h = nullptr;

    explicit HessEval(const Poly& P, const HarmonicCorrection* corr = nullptr) : h(corr) {
        Poly pz = diff(P, Var::Z);
        pzz = CompiledPoly(diff(pz, Var::Z));
        pzzb = CompiledPoly(diff(pz, Var::Zbar));
    }

    void ab(double theta, double phi, std::complex<double>& A, double& B) const {
        double s = std::sin(phi), c = std::cos(phi);
        std::complex<double> z = std::polar(s, theta);
        A = pzz.eval(z, c);
        if (h && !h->basis.empty()) A += h->hzz(z, c);
        B = pzzb.eval(z, c).real();
    }

    double value(double theta, double phi, double psi) const {
        std::complex<double> A;
        double B;
        ab(theta, phi, A, B);
        double c2 = std::cos(2 * psi), s2 = std::sin(2 * psi);
        return 2.0 * (A.real() * c2 - A.imag() * s2) + 2.0 * B;
    }
};

SphereSample make_sample(double theta, double phi, double psi) {
    SphereSample s;
    s.z = std::polar(std::sin(phi), theta);
    s.u = std::cos(phi);
    s.zeta = std::polar(1.0, psi);
    return s;
}

}  // namespace

MinHessianResult min_hessian_on_sphere(const Poly& P, const HarmonicCorrection& h,
                                       SphereDomain domain, const GridConfig& grid) {
    if (!P.is_real()) throw ContractError("hessian minimization requires a real polynomial");
    HessEval eval(P, &h);

    int n_theta = std::max(8, grid.n_theta);
    int n_psi = std::max(8, grid.n_psi);
    int n_phi = domain == SphereDomain::Circle ? 1 : std::max(3, grid.n_phi);

    std::vector<double> cos2(n_psi), sin2(n_psi);
    for (int s = 0; s < n_psi; ++s) {
        double psi = kTwoPi * s / n_psi;
        cos2[s] = std::cos(2 * psi);
        sin2[s] = std::sin(2 * psi);
    }

    auto phi_of = [&](int j) {
        return domain == SphereDomain::Circle ? kPi / 2 : kPi * j / (n_phi - 1);
    };

    std::vector<double> cell_val(static_cast<std::size_t>(n_theta) * n_phi);
    std::vector<int> cell_psi(cell_val.size());
    parallel_for(n_phi, [&](int begin, int end) {
        for (int j = begin; j < end; ++j) {
            double phi = phi_of(j);
            for (int i = 0; i < n_theta; ++i) {
                double theta = kTwoPi * i / n_theta;
                std::complex<double> A;
                double B;
                eval.ab(theta, phi, A, B);
                double best = 1e300;
                int best_s = 0;
                for (int s = 0; s < n_psi; ++s) {
                    double v = 2.0 * (A.real() * cos2[s] - A.imag() * sin2[s]) + 2.0 * B;
                    if (v < best) {
                        best = v;
                        best_s = s;
                    }
                }
                std::size_t idx = static_cast<std::size_t>(j) * n_theta + i;
                cell_val[idx] = best;
                cell_psi[idx] = best_s;
            }
        }
    });

    std::vector<std::size_t> order(cell_val.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t keep = std::min<std::size_t>(std::max(1, grid.refine_cells), order.size());
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&](std::size_t a, std::size_t b) {
                          return cell_val[a] != cell_val[b] ? cell_val[a] < cell_val[b] : a < b;
                      });

    PatternBounds bounds;
    double step;
    std::function<double(const std::vector<double>&)> f;
    if (domain == SphereDomain::Circle) {
        bounds.clamp = {false, false};
        f = [&](const std::vector<double>& x) { return eval.value(x[0], kPi / 2, x[1]); };
        step = std::max(kTwoPi / n_theta, kTwoPi / n_psi);
    } else {
        bounds.clamp = {false, true, false};
        bounds.lo = {0.0, 0.0, 0.0};
        bounds.hi = {0.0, kPi, 0.0};
        f = [&](const std::vector<double>& x) { return eval.value(x[0], x[1], x[2]); };
        step = std::max({kTwoPi / n_theta, kPi / (n_phi - 1), kTwoPi / n_psi});
    }

    MinHessianResult out;
    for (std::size_t r = 0; r < keep; ++r) {
        std::size_t idx = order[r];
        int j = static_cast<int>(idx) / n_theta;
        int i = static_cast<int>(idx) % n_theta;
        double theta = kTwoPi * i / n_theta;
        double psi = kTwoPi * cell_psi[idx] / n_psi;
        std::vector<double> x = domain == SphereDomain::Circle
                                    ? std::vector<double>{theta, psi}
                                    : std::vector<double>{theta, phi_of(j), psi};
        double v = pattern_search(f, x, step, bounds);
        SphereSample s = domain == SphereDomain::Circle ? make_sample(x[0], kPi / 2, x[1])
                                                        : make_sample(x[0], x[1], x[2]);
        out.candidates.emplace_back(v, s);
    }
    std::stable_sort(out.candidates.begin(), out.candidates.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    out.value = out.candidates.front().first;
    out.argmin = out.candidates.front().second;
    return out;
}

namespace {

struct Cut {
    SphereSample sample;
    double b = 0.0;          // Hessian of P alone
    std::vector<double> g;   // gradient in (Re alpha_t, Im alpha_t)
};

Cut make_cut(const HessEval& eval_p, const std::vector<HarmonicBasisElem>& basis,
             const SphereSample& s) {
    Cut c;
    c.sample = s;
    std::complex<double> A = eval_p.pzz.eval(s.z, s.u);
    double B = eval_p.pzzb.eval(s.z, s.u).real();
    std::complex<double> zeta2 = s.zeta * s.zeta;
    c.b = 2.0 * (A * zeta2).real() + 2.0 * B;
    c.g.reserve(2 * basis.size());
    for (const auto& e : basis) {
        double m = e.m;
        std::complex<double> W =
            (m * (m - 1)) * cipow(s.z, e.m - 2) * ripow(s.u, e.l) * zeta2;
        c.g.push_back(W.real());
        c.g.push_back(-W.imag());
    }
    return c;
}

bool same_cut(const Cut& a, const Cut& b) {
    if (std::abs(a.b - b.b) > 1e-10 * (1.0 + std::abs(a.b))) return false;
    for (std::size_t i = 0; i < a.g.size(); ++i)
        if (std::abs(a.g[i] - b.g[i]) > 1e-10 * (1.0 + std::abs(a.g[i]))) return false;
    return true;
}

}  // namespace

ConvexityVerdict certificate_search(const Poly& P, int k, const Rational& mu,
                                    const SearchConfig& cfg) {
    if (P.is_zero()) throw ContractError("empty model polynomial");
    if (!P.is_real()) throw ContractError("model polynomial must be real");
    bool u_free = true;
    for (const auto& [e, c] : P.terms()) {
        if (monomial_weight(e, k, mu) != 1)
            throw ContractError("model monomial " + std::to_string(e.a) + "," +
                                std::to_string(e.b) + "," + std::to_string(e.l) +
                                " is not of weight one");
        if (e.l != 0) u_free = false;
    }
    SphereDomain domain = u_free ? SphereDomain::Circle : SphereDomain::Full;

    std::vector<HarmonicBasisElem> basis = harmonic_basis(k, mu);
    HessEval eval_p(P);

    ConvexityVerdict v;
    v.tolerance = cfg.tolerance;
    v.domain = domain;
    v.h.basis = basis;
    v.h.alpha.assign(basis.size(), {0.0, 0.0});

    // Seed cuts: a coarse net over the whole domain, with the poles always
    // present (that is where u-free corrections degenerate and the LP would
    // otherwise be cut-starved).
    std::vector<Cut> cuts;
    auto add_sample = [&](double theta, double phi, double psi) {
        cuts.push_back(make_cut(eval_p, basis, make_sample(theta, phi, psi)));
    };
    if (domain == SphereDomain::Full) {
        for (double phi : {0.0, kPi})
            for (int s = 0; s < 4; ++s) add_sample(0.0, phi, kPi * s / 4);
        for (int j = 1; j <= 5; ++j)
            for (int i = 0; i < 8; ++i)
                for (int s = 0; s < 2; ++s)
                    add_sample(kTwoPi * i / 8, kPi * j / 6, kPi * s / 2 + kPi / 8);
    } else {
        for (int i = 0; i < 16; ++i)
            for (int s = 0; s < 4; ++s) add_sample(kTwoPi * i / 16, kPi / 2, kPi * s / 4);
    }

    double R = cfg.box_bound;
    int n_alpha = static_cast<int>(2 * basis.size());

    for (int iter = 0; iter < cfg.max_cuts; ++iter) {
        double lp_t = 0.0;
        bool interior = false;
        std::vector<double> alpha_flat(n_alpha, 0.0);
        while (true) {
            // Variables: x0 = t + M, x1.. = alpha components + R.
            double m_bound = 1.0;
            for (const Cut& c : cuts) {
                double s = std::abs(c.b);
                for (double gv : c.g) s += std::abs(gv) * R;
                m_bound = std::max(m_bound, s + 1.0);
            }
            std::vector<std::vector<double>> A;
            std::vector<double> rhs;
            std::vector<double> obj(1 + n_alpha, 0.0);
            obj[0] = 1.0;
            for (const Cut& c : cuts) {
                std::vector<double> row(1 + n_alpha, 0.0);
                row[0] = 1.0;
                double shift = 0.0;
                for (int j = 0; j < n_alpha; ++j) {
                    row[1 + j] = -c.g[j];
                    shift += c.g[j] * R;
                }
                A.push_back(std::move(row));
                rhs.push_back(c.b + m_bound - shift);
            }
            for (int j = 0; j < n_alpha; ++j) {
                std::vector<double> row(1 + n_alpha, 0.0);
                row[1 + j] = 1.0;
                A.push_back(std::move(row));
                rhs.push_back(2.0 * R);
            }
            {
                std::vector<double> row(1 + n_alpha, 0.0);
                row[0] = 1.0;
                A.push_back(std::move(row));
                rhs.push_back(2.0 * m_bound);
            }
            LpResult lp = simplex_maximize(A, rhs, obj);
            if (lp.status != LpResult::Status::Optimal)
                throw NumericError("cut LP failed to solve");
            lp_t = lp.value - m_bound;
            for (int j = 0; j < n_alpha; ++j) alpha_flat[j] = lp.x[1 + j] - R;

            double amax = 0.0;
            for (double a : alpha_flat) amax = std::max(amax, std::abs(a));
            interior = amax < R * (1.0 - 1e-6);
            if (interior || R >= cfg.box_bound_max) break;
            R *= 2.0;  // optimum pressed the box: enlarge and resolve
        }

        v.lp_history.push_back(lp_t);
        v.upper_bound = lp_t;
        for (std::size_t t = 0; t < basis.size(); ++t)
            v.h.alpha[t] = {alpha_flat[2 * t], alpha_flat[2 * t + 1]};
        v.samples_used = static_cast<int>(cuts.size());

        // The LP value bounds the true max-min from above; below the
        // tolerance no correction can reach nonnegativity. Only valid when
        // the box is inactive.
        if (interior && lp_t < -cfg.tolerance) {
            v.kind = VerdictKind::Refutation;
            v.margin = 0.0;
            return v;
        }

        MinHessianResult oracle = min_hessian_on_sphere(P, v.h, domain, cfg.grid);
        v.margin = oracle.value;

        double gap = lp_t - oracle.value;
        double cert_gap = std::max(cfg.eps_gap, cfg.cert_rel_gap * std::max(1.0, std::abs(lp_t)));
        if (oracle.value > cfg.tolerance && gap < cert_gap) {
            v.kind = VerdictKind::Certificate;
            return v;
        }
        if (gap < cfg.eps_gap) {
            v.kind = VerdictKind::Borderline;
            v.diagnostics = "optimum inside the tolerance band";
            return v;
        }

        // Install the argmin cut plus a few further violated local minima;
        // extra cuts keep the relaxation monotone and speed up convergence.
        int added = 0;
        bool argmin_duplicate = false;
        for (std::size_t r = 0; r < oracle.candidates.size() && added < 4; ++r) {
            const auto& [val, sample] = oracle.candidates[r];
            if (r > 0 && val >= lp_t - cfg.eps_gap) break;
            Cut next = make_cut(eval_p, basis, sample);
            bool duplicate = false;
            for (const Cut& c : cuts)
                if (same_cut(c, next)) {
                    duplicate = true;
                    break;
                }
            if (duplicate) {
                if (r == 0) argmin_duplicate = true;
                continue;
            }
            cuts.push_back(std::move(next));
            ++added;
        }
        if (added == 0) {
            v.kind = VerdictKind::Borderline;
            v.diagnostics = argmin_duplicate
                                ? "stalled: repeated argmin cut before closing the gap"
                                : "stalled: no violated cuts available";
            return v;
        }
    }

    v.kind = VerdictKind::Borderline;
    v.diagnostics = "no convergence after max_cuts iterations";
    return v;
}

double brute_force_threshold(int k, int l, double tol) {
    if (tol <= 0) throw ContractError("tolerance must be positive");
    Poly base = Poly::monomial(k / 2, k / 2, 0, CRational(1));
    Poly bump;  // |z|^{k-l} Re z^l
    bump.add_term({(k + l) / 2, (k - l) / 2, 0}, CRational(Rational(1, 2)));
    bump.add_term({(k - l) / 2, (k + l) / 2, 0}, CRational(Rational(1, 2)));

    HessEval e0(base), e1(bump);
    const int n_theta = 2048;
    std::vector<std::complex<double>> A0(n_theta), A1(n_theta);
    std::vector<double> B0(n_theta), B1(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        double theta = kTwoPi * i / n_theta;
        e0.ab(theta, kPi / 2, A0[i], B0[i]);
        e1.ab(theta, kPi / 2, A1[i], B1[i]);
    }

    auto min_hessian = [&](double a) {
        // Grid sweep with the closed psi minimum 2(B - |A|), then local
        // refinement over (theta, psi) from the best grid point.
        double best = 1e300;
        int best_i = 0;
        for (int i = 0; i < n_theta; ++i) {
            std::complex<double> A = A0[i] + a * A1[i];
            double B = B0[i] + a * B1[i];
            double v = 2.0 * (B - std::abs(A));
            if (v < best) {
                best = v;
                best_i = i;
            }
        }
        auto f = [&](const std::vector<double>& x) {
            double theta = x[0], psi = x[1];
            std::complex<double> z = std::polar(1.0, theta);
            std::complex<double> A = e0.pzz.eval(z, 0.0) + a * e1.pzz.eval(z, 0.0);
            double B = e0.pzzb.eval(z, 0.0).real() + a * e1.pzzb.eval(z, 0.0).real();
            double c2 = std::cos(2 * psi), s2 = std::sin(2 * psi);
            return 2.0 * (A.real() * c2 - A.imag() * s2) + 2.0 * B;
        };
        std::complex<double> Ab = A0[best_i] + a * A1[best_i];
        double psi0 = 0.5 * std::arg(-std::conj(Ab) / std::max(1e-300, std::abs(Ab)));
        std::vector<double> x{kTwoPi * best_i / n_theta, psi0};
        PatternBounds bounds;
        bounds.clamp = {false, false};
        return pattern_search(f, x, kTwoPi / n_theta, bounds);
    };

    double lo = 0.0, hi = 4.0;
    if (min_hessian(lo) < 0) throw NumericError("threshold bracket invalid at a = 0");
    if (min_hessian(hi) >= 0) throw NumericError("threshold bracket invalid at a = 4");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (min_hessian(mid) >= 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace kn
