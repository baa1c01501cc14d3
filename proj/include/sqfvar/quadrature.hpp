// quadrature.hpp
// Adaptive Gauss-Kronrod on fixed panels. Panels are integrated
// independently and summed in order, so results do not depend on the
// worker count.

#pragma once
#include <functional>

namespace sqfvar {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // sum of per-panel error estimates
    long panels = 0;
};

// Adaptive G7-K15 on [a, b].
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-10, unsigned max_depth = 15);

// [a, b] cut into panels of length <= panel_len, each integrated adaptively.
// `f` must be safe to call concurrently.
QuadResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                            double panel_len, double rel_tol = 1e-10, unsigned max_depth = 15);

}  // namespace sqfvar
