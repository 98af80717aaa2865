#include "kn/simplex.hpp"

#include <cmath>
#include <cstddef>

#include "kn/errors.hpp"

namespace kn {

namespace {

struct Tableau {
    std::vector<std::vector<double>> rows;  // m x (ncols + 1), last column = rhs
    std::vector<int> basis;                 // basic column per row
    int ncols = 0;
    double tol;

    double& rhs(int i) { return rows[i][ncols]; }

    void pivot(int r, int c) {
        double p = rows[r][c];
        for (int j = 0; j <= ncols; ++j) rows[r][j] /= p;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == r) continue;
            double f = rows[i][c];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        basis[r] = c;
    }

    // Bland's rule: entering column is the lowest index with positive
    // reduced cost; leaving row is the ratio-test minimum with the lowest
    // basic index on ties. Returns false when optimal, throws on
    // unboundedness.
    bool step(const std::vector<double>& cost, int allowed_cols) {
        int m = static_cast<int>(rows.size());
        int enter = -1;
        for (int j = 0; j < allowed_cols; ++j) {
            double d = cost[j];
            for (int i = 0; i < m; ++i) d -= cost[basis[i]] * rows[i][j];
            if (d > tol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (rows[i][enter] <= tol) continue;
            double ratio = rhs(i) / rows[i][enter];
            if (leave < 0 || ratio < best - 1e-15 ||
                (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw LpUnbounded{};
        pivot(leave, enter);
        return true;
    }

    struct LpUnbounded {};
};

}  // namespace

LpResult simplex_maximize(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b, const std::vector<double>& c,
                          double pivot_tol) {
    int m = static_cast<int>(A.size());
    int n = static_cast<int>(c.size());

    Tableau t;
    t.tol = pivot_tol;
    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) ++n_art;
    int slack0 = n;
    int art0 = n + m;
    t.ncols = n + m + n_art;
    t.rows.assign(m, std::vector<double>(t.ncols + 1, 0.0));
    t.basis.assign(m, -1);

    int art = art0;
    for (int i = 0; i < m; ++i) {
        double sign = b[i] < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) t.rows[i][j] = sign * A[i][j];
        t.rows[i][slack0 + i] = sign;
        t.rows[i][t.ncols] = sign * b[i];
        if (b[i] < 0) {
            t.rows[i][art] = 1.0;
            t.basis[i] = art++;
        } else {
            t.basis[i] = slack0 + i;
        }
    }

    long cap = 20000L + 200L * (m + n);
    auto run = [&](const std::vector<double>& cost, int allowed) {
        for (long it = 0; it < cap; ++it)
            if (!t.step(cost, allowed)) return;
        throw NumericError("simplex iteration limit reached");
    };

    LpResult res;
    try {
        if (n_art > 0) {
            std::vector<double> phase1(t.ncols, 0.0);
            for (int j = art0; j < t.ncols; ++j) phase1[j] = -1.0;
            run(phase1, t.ncols);
            double infeas = 0.0;
            for (int i = 0; i < m; ++i)
                if (t.basis[i] >= art0) infeas += t.rhs(i);
            if (infeas > 1e-9) {
                res.status = LpResult::Status::Infeasible;
                return res;
            }
            // Drive leftover artificials out of the basis; a row with no
            // eligible pivot is redundant and is dropped.
            for (int i = m - 1; i >= 0; --i) {
                if (t.basis[i] < art0) continue;
                int piv = -1;
                for (int j = 0; j < art0; ++j) {
                    if (std::abs(t.rows[i][j]) > pivot_tol) {
                        piv = j;
                        break;
                    }
                }
                if (piv >= 0) {
                    t.pivot(i, piv);
                } else {
                    t.rows.erase(t.rows.begin() + i);
                    t.basis.erase(t.basis.begin() + i);
                }
            }
            m = static_cast<int>(t.rows.size());
        }

        std::vector<double> phase2(t.ncols, 0.0);
        for (int j = 0; j < n; ++j) phase2[j] = c[j];
        run(phase2, art0);  // artificial columns may not re-enter
    } catch (const Tableau::LpUnbounded&) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }

    res.status = LpResult::Status::Optimal;
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) res.x[t.basis[i]] = t.rhs(i);
    res.value = 0.0;
    for (int j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

}  // namespace kn
