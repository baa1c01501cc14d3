// asymptotics.hpp
// Zeta constants of the squarefull counting problem, the sinc moment
// integral, the variance constant c_inf, and the diagonal sums
//
//   2 H^2 sum_{b <= H^{2/3+eps}} mu^2(b)/b^3 sum_{n>=1} |w(n H / b^{3/2})|^2
//
// with w = S (the sinc kernel) or a caller-supplied window.

#pragma once
#include <cstdint>
#include <functional>

namespace sqfvar {

// S(x) = sin(pi x)/(pi x), S(0) = 1.
double sinc(double x);

// sin(pi x) with the argument reduced exactly modulo 2.
double sin_pi(double x);

struct ZetaConstants {
    double z32 = 0.0;  // zeta(3/2)
    double z3 = 0.0;
    double z23 = 0.0;  // zeta(2/3) < 0
    double z2 = 0.0;
    double z43 = 0.0;
    double theta1 = 0.0;  // zeta(3/2)/zeta(3)
    double theta2 = 0.0;  // zeta(2/3)/zeta(2)
    double sinc_moment = 0.0;
    double c_inf = 0.0;
};

// Built once, shared read-only.
const ZetaConstants& zeta_constants();

struct SincMomentOptions {
    double cutoff = 256.0;  // Y0; an integer keeps the tail expansion simple
    double rel_tol = 1e-13;
};

// Integral of S(y)^2 y^{1/3} over [0, inf); absolute error <= 1e-8.
double sinc_moment(const SincMomentOptions& opts = {});

// 4 zeta(4/3) / (3 zeta(2)) * moment
double c_infinity_from(double z43, double z2, double moment);
double c_infinity();

struct DiagonalParams {
    double H = 1.0;
    double eps = 0.005;
    double target_rel = 1e-8;  // bound on discarded inner-sum mass, relative to the result

    double b_cut() const;
};

struct DiagonalResult {
    double value = 0.0;
    double discard_bound = 0.0;  // absolute bound on the truncation error
    double b_cut = 0.0;
    std::uint64_t b_terms = 0;       // squarefree b summed
    std::uint64_t inner_terms = 0;   // total n-terms evaluated
    bool integer_H = false;          // b = 1 layer vanishes identically
};

DiagonalResult diagonal_sum(const DiagonalParams& p);

// A window w with |w(y)| = 0 for y > support. Must be thread-safe.
struct Window {
    std::function<double(double)> w;
    double support = 0.0;
};

// C^4 bump: 1 on |x| <= 1, 0 on |x| >= 2, degree-9 smoothstep in between.
// |h^{(k)}| <= 1, 2.47, 9.38, 78.8, 623 (k = 0..4) on the transition.
double smooth_bump(double x);

// The window S(y) h(y / H^{eps/4}).
Window sinc_bump_window(double H, double eps);

DiagonalResult windowed_diagonal_sum(double H, double eps, const Window& window);

// 4 zeta(4/3) / (3 zeta(2)) * H^{2/3} * integral of |w|^2 y^{1/3} over [0, support].
double windowed_prediction(double H, const Window& window);

}  // namespace sqfvar
