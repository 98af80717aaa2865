#pragma once

#include <functional>
#include <vector>

namespace kn {

// Deterministic compass search: tries +/- step along each coordinate,
// moves to the best improvement, halves the step otherwise. Coordinates
// with clamp[i] set are kept inside [lo[i], hi[i]].
struct PatternBounds {
    std::vector<bool> clamp;
    std::vector<double> lo, hi;
};

inline double pattern_search(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double>& x, double step, const PatternBounds& bounds,
                             double min_step = 1e-10) {
    double best = f(x);
    const std::size_t n = x.size();
    while (step > min_step) {
        bool improved = false;
        std::vector<double> cand = x, pick = x;
        double pick_val = best;
        for (std::size_t i = 0; i < n; ++i) {
            for (double sgn : {1.0, -1.0}) {
                cand = x;
                cand[i] += sgn * step;
                if (bounds.clamp.size() > i && bounds.clamp[i]) {
                    if (cand[i] < bounds.lo[i]) cand[i] = bounds.lo[i];
                    if (cand[i] > bounds.hi[i]) cand[i] = bounds.hi[i];
                }
                double v = f(cand);
                if (v < pick_val - 0.0) {
                    pick_val = v;
                    pick = cand;
                    improved = true;
                }
            }
        }
        if (improved) {
            x = pick;
            best = pick_val;
        } else {
            step *= 0.5;
        }
    }
    return best;
}

}  // namespace kn
