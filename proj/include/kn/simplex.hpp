#pragma once

#include <vector>

namespace kn {

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Optimal;
    double value = 0.0;
    std::vector<double> x;
};

// Maximizes c.x subject to A x <= b, x >= 0 (b may be negative). Dense
// two-phase tableau with Bland's rule, so it terminates on degenerate
// instances.
LpResult simplex_maximize(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b, const std::vector<double>& c,
                          double pivot_tol = 1e-12);

}  // namespace kn
