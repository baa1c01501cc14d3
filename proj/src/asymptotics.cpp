#include "sqfvar/asymptotics.hpp"

#include <boost/math/special_functions/trigamma.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "sqfvar/errors.hpp"
#include "sqfvar/int_roots.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/quadrature.hpp"
#include "sqfvar/squarefree.hpp"
#include "sqfvar/zeta.hpp"

namespace sqfvar {

using std::numbers::pi;

double sin_pi(double x) {
    double r = std::fmod(x, 2.0);  // exact
    if (r > 1.0) r -= 2.0;
    if (r < -1.0) r += 2.0;
    if (r == 1.0 || r == -1.0 || r == 0.0) return 0.0;
    return std::sin(pi * r);
}

double sinc(double x) {
    if (std::fabs(x) < 1e-8) return 1.0 - (pi * x) * (pi * x) / 6.0;
    return sin_pi(x) / (pi * x);
}

namespace {

// Asymptotic expansions of int_Y^inf cos(a y) y^{-beta} dy and the sine
// analogue, by repeated integration by parts.
double tail_cos(double a, double Y, double beta, int depth);
double tail_sin(double a, double Y, double beta, int depth) {
    if (depth == 0) return 0.0;
    return std::cos(a * Y) * std::pow(Y, -beta) / a - beta / a * tail_cos(a, Y, beta + 1, depth - 1);
}
double tail_cos(double a, double Y, double beta, int depth) {
    if (depth == 0) return 0.0;
    return -std::sin(a * Y) * std::pow(Y, -beta) / a + beta / a * tail_sin(a, Y, beta + 1, depth - 1);
}

// Kahan-compensated running sum.
struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// int_0^Y |w(y)|^2 y^{1/3} dy; y = u^3 on [0,1] removes the cusp at 0.
double weighted_l2(const std::function<double(double)>& w, double Y, double rel_tol) {
    const double head_end = std::min(1.0, Y);
    const double u_end = std::cbrt(head_end);
    auto head = [&](double u) {
        const double v = w(u * u * u);
        return 3.0 * u * u * u * v * v;
    };
    double total = integrate_adaptive(head, 0.0, u_end, rel_tol).value;
    if (Y > 1.0) {
        auto body = [&](double y) {
            const double v = w(y);
            return v * v * std::cbrt(y);
        };
        total += integrate_panels(body, 1.0, Y, 0.5, rel_tol).value;
    }
    return total;
}

}  // namespace

double sinc_moment(const SincMomentOptions& opts) {
    const double Y0 = opts.cutoff;
    const double body = weighted_l2(sinc, Y0, opts.rel_tol);
    // Beyond Y0: S(y)^2 y^{1/3} = (1 - cos 2 pi y) y^{-5/3} / (2 pi^2).
    const double smooth_tail = 3.0 / (4.0 * pi * pi) * std::pow(Y0, -2.0 / 3.0);
    const double osc_tail = -tail_cos(2.0 * pi, Y0, 5.0 / 3.0, 12) / (2.0 * pi * pi);
    return body + smooth_tail + osc_tail;
}

double c_infinity_from(double z43, double z2, double moment) {
    return 4.0 * z43 / (3.0 * z2) * moment;
}

const ZetaConstants& zeta_constants() {
    static const ZetaConstants k = [] {
        ZetaConstants z;
        z.z32 = zeta_real(1.5);
        z.z3 = zeta_real(3.0);
        z.z23 = zeta_real(2.0 / 3.0);
        z.z2 = zeta_real(2.0);
        z.z43 = zeta_real(4.0 / 3.0);
        z.theta1 = z.z32 / z.z3;
        z.theta2 = z.z23 / z.z2;
        z.sinc_moment = sinc_moment();
        z.c_inf = c_infinity_from(z.z43, z.z2, z.sinc_moment);
        return z;
    }();
    return k;
}

double c_infinity() { return zeta_constants().c_inf; }

double DiagonalParams::b_cut() const { return std::pow(H, 2.0 / 3.0 + eps); }

namespace {

struct BlockPartial {
    Kahan value;
    Kahan bound;
    std::uint64_t b_terms = 0;
    std::uint64_t inner_terms = 0;
};

template <class Inner>
DiagonalResult diagonal_driver(double H, double eps, Inner inner) {
    if (!(H >= 1.0)) throw ConfigError("diagonal sum needs H >= 1");
    DiagonalResult res;
    res.b_cut = std::pow(H, 2.0 / 3.0 + eps);
    res.integer_H = H == std::floor(H);
    const u64 bmax = static_cast<u64>(std::floor(res.b_cut));
    if (bmax < 1) return res;
    const SquarefreeTable sf = squarefree_sieve(1, bmax);

    constexpr u64 kBlock = 64;
    const std::size_t nblocks = (bmax + kBlock - 1) / kBlock;
    std::vector<BlockPartial> parts(nblocks);
    parallel_blocks(nblocks, [&](std::size_t blk) {
        BlockPartial& part = parts[blk];
        const u64 b0 = 1 + blk * kBlock;
        const u64 b1 = std::min(bmax, b0 + kBlock - 1);
        for (u64 b = b0; b <= b1; ++b) {
            if (!sf.is_squarefree(b)) continue;
            const double b15 = std::pow(static_cast<double>(b), 1.5);
            const double weight = 2.0 * H * H / (b15 * b15);
            double bound = 0.0;
            std::uint64_t terms = 0;
            const double val = inner(b15 / H, H / b15, bound, terms);
            part.value.add(weight * val);
            part.bound.add(weight * bound);
            part.b_terms += 1;
            part.inner_terms += terms;
        }
    });
    Kahan value, bound;
    for (const auto& p : parts) {
        value.add(p.value.sum);
        bound.add(p.bound.sum);
        res.b_terms += p.b_terms;
        res.inner_terms += p.inner_terms;
    }
    res.value = value.sum;
    res.discard_bound = bound.sum;
    return res;
}

}  // namespace

DiagonalResult diagonal_sum(const DiagonalParams& p) {
    const double target = p.target_rel;
    // sum_{n>=1} S(n/nu)^2, truncated at N with the mean of the tail added:
    // past N, S(n/nu)^2 = nu^2 (1 - cos(2 pi n/nu)) / (2 pi^2 n^2); the
    // constant part sums to nu^2 trigamma(N+1) / (2 pi^2) and the cosine part
    // is bounded by Abel summation.
    auto inner = [target](double nu, double inv_nu, double& bound, std::uint64_t& terms) {
        std::uint64_t N = std::max<std::uint64_t>(16, static_cast<std::uint64_t>(std::ceil(nu)) << 14);
        const std::uint64_t cap = N << 8;
        const double pref = nu * nu / (2.0 * pi * pi);
        const double s_half = std::fabs(sin_pi(inv_nu));
        if (s_half == 0.0) {
            // 1/nu is an integer: every S(n/nu) sits on a sinc zero.
            bound = 0.0;
            terms = 0;
            return 0.0;
        }
        Kahan sum;
        std::uint64_t n = 1;
        for (;;) {
            for (; n <= N; ++n) {
                const double v = sinc(static_cast<double>(n) * inv_nu);
                sum.add(v * v);
            }
            const double tg = boost::math::trigamma(static_cast<double>(N) + 1.0);
            const double np1 = static_cast<double>(N) + 1.0;
            double cos_bound = tg;
            if (s_half > 0.0) cos_bound = std::min(tg, 1.0 / (np1 * np1 * s_half));
            const double total = sum.sum + pref * tg;
            bound = pref * cos_bound;
            if (bound <= target * total || N >= cap) {
                terms = N;
                return total;
            }
            N *= 2;
        }
    };
    return diagonal_driver(p.H, p.eps, inner);
}

double smooth_bump(double x) {
    const double ax = std::fabs(x);
    if (ax <= 1.0) return 1.0;
    if (ax >= 2.0) return 0.0;
    const double t = ax - 1.0;
    const double t5 = t * t * t * t * t;
    const double step = t5 * (126.0 + t * (-420.0 + t * (540.0 + t * (-315.0 + t * 70.0))));
    return 1.0 - step;
}

Window sinc_bump_window(double H, double eps) {
    const double scale = std::pow(H, eps / 4.0);
    return {[scale](double y) { return sinc(y) * smooth_bump(y / scale); }, 2.0 * scale};
}

DiagonalResult windowed_diagonal_sum(double H, double eps, const Window& window) {
    const Window* wp = &window;
    auto inner = [wp](double nu, double inv_nu, double& bound, std::uint64_t& terms) {
        bound = 0.0;
        const auto N = static_cast<std::uint64_t>(std::floor(wp->support * nu));
        Kahan sum;
        for (std::uint64_t n = 1; n <= N; ++n) {
            const double v = wp->w(static_cast<double>(n) * inv_nu);
            sum.add(v * v);
        }
        terms = N;
        return sum.sum;
    };
    return diagonal_driver(H, eps, inner);
}

double windowed_prediction(double H, const Window& window) {
    const auto& z = zeta_constants();
    const double moment = weighted_l2(window.w, window.support, 1e-12);
    return c_infinity_from(z.z43, z.z2, moment) * std::pow(H, 2.0 / 3.0);
}

}  // namespace sqfvar
