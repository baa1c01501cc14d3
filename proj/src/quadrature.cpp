#include "sqfvar/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <vector>

#include "sqfvar/errors.hpp"
#include "sqfvar/parallel.hpp"

namespace sqfvar {

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, unsigned max_depth) {
    QuadResult r;
    r.panels = 1;
    if (a == b) return r;
    double err = 0.0;
    r.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, max_depth,
                                                                            rel_tol, &err);
    r.error = err;
    if (!std::isfinite(r.value)) throw QuadratureError("quadrature produced a non-finite value");
    return r;
}

QuadResult integrate_panels(const std::function<double(double)>& f, double a, double b,
                            double panel_len, double rel_tol, unsigned max_depth) {
    if (!(panel_len > 0.0)) throw QuadratureError("panel length must be positive");
    const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / panel_len)));
    std::vector<double> vals(n), errs(n);
    const double h = (b - a) / static_cast<double>(n);
    parallel_blocks(static_cast<std::size_t>(n), [&](std::size_t i) {
        const double lo = a + h * static_cast<double>(i);
        const double hi = (static_cast<long>(i) + 1 == n) ? b : a + h * static_cast<double>(i + 1);
        const QuadResult p = integrate_adaptive(f, lo, hi, rel_tol, max_depth);
        vals[i] = p.value;
        errs[i] = p.error;
    });
    QuadResult r;
    r.panels = n;
    double c = 0.0;  // Kahan
    for (long i = 0; i < n; ++i) {
        const double y = vals[i] - c;
        const double t = r.value + y;
        c = (t - r.value) - y;
        r.value = t;
        r.error += errs[i];
    }
    return r;
}

}  // namespace sqfvar
