#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "sqfvar/asymptotics.hpp"
#include "sqfvar/errors.hpp"
#include "sqfvar/quadrature.hpp"
#include "sqfvar/squarefree.hpp"
#include "sqfvar/zeta.hpp"

using namespace sqfvar;
using std::numbers::pi;

namespace {

// Poisson summation with the triangle transform of S^2:
//   sum_{n>=1} S(n/nu)^2 = (nu (1 + 2 sum_{1<=k<1/nu} (1 - k nu)) - 1) / 2.
long double sinc_tail_sum(long double nu) {
    long double s = 1.0L;
    for (long k = 1; k * nu < 1.0L; ++k) s += 2.0L * (1.0L - k * nu);
    return (nu * s - 1.0L) / 2.0L;
}

long double diagonal_oracle(double H, double eps) {
    const double cut = std::pow(H, 2.0 / 3.0 + eps);
    long double total = 0.0L;
    for (u64 b = 1; b <= static_cast<u64>(cut); ++b) {
        if (!oracle::is_squarefree(b)) continue;
        const long double b3 = static_cast<long double>(b) * b * b;
        total += 2.0L * H * H / b3 * sinc_tail_sum(std::sqrt(b3) / H);
    }
    return total;
}

// Same for a Gaussian w(y) = exp(-y^2): the transform of w^2 is
// sqrt(pi/2) exp(-pi^2 xi^2 / 2).
long double gauss_tail_sum(long double nu) {
    if (nu < 1.0L) {
        long double direct = 0.0L;
        for (long n = 1; n <= 10; ++n) direct += std::exp(-2.0L * n * n / (nu * nu));
        return direct;
    }
    long double s = 0.0L;
    for (long k = -60; k <= 60; ++k) s += std::exp(-pi * pi * k * k * nu * nu / 2.0L);
    return (nu * std::sqrt(pi / 2.0L) * s - 1.0L) / 2.0L;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("zeta at real arguments") {
    CHECK(std::fabs(zeta_real(2.0) - pi * pi / 6.0) < 1e-12);
    CHECK(zeta_real(3.0) == doctest::Approx(1.202056903160).epsilon(1e-12));
    CHECK(zeta_real(2.0 / 3.0) == doctest::Approx(-2.447580736).epsilon(1e-9));
    CHECK_THROWS_AS(zeta_real(1.0), RangeError);
    CHECK_THROWS_AS(zeta_real(11.0), RangeError);
    CHECK_THROWS_AS(zeta_real(-3.0), RangeError);
}

TEST_CASE("zeta agrees with a 50-digit reference on [-2, 10]") {
    using big = boost::multiprecision::cpp_bin_float_50;
    for (double s = -2.0; s <= 10.0; s += 0.0625) {
        if (std::fabs(s - 1.0) < 1e-9) continue;
        const double want = static_cast<double>(boost::math::zeta(big(s)));
        CAPTURE(s);
        CHECK(std::fabs(zeta_real(s) - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
    }
    for (double s : {2.0 / 3.0, 4.0 / 3.0, 1.5, 0.999, 1.001}) {
        const double want = static_cast<double>(boost::math::zeta(big(s)));
        CHECK(std::fabs(zeta_real(s) - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
    }
}

TEST_CASE("zeta against partial Dirichlet series") {
    for (double s : {1.5, 2.0, 3.0, 5.0}) {
        long double partial = 0.0L;
        for (long n = 1000000; n >= 1; --n) partial += std::pow(static_cast<long double>(n), -s);
        // The missing tail lies between N^{1-s}/(s-1) - N^{-s} and N^{1-s}/(s-1).
        const double N = 1e6;
        const double gap = zeta_real(s) - static_cast<double>(partial);
        CAPTURE(s);
        CHECK(gap <= std::pow(N, 1.0 - s) / (s - 1.0) + 1e-12);
        CHECK(gap >= std::pow(N, 1.0 - s) / (s - 1.0) - std::pow(N, -s) - 1e-12);
        if (s >= 2.0) CHECK(std::fabs(gap) < 1e-4);
    }
}

TEST_CASE("squarefree zeta identity at s = 3/2") {
    const auto sf = squarefree_sieve(1, 1000000);
    long double s = 0.0L;
    for (u64 b = 1000000; b >= 1; --b)
        if (sf.is_squarefree(b)) s += 1.0L / (b * std::sqrt(static_cast<long double>(b)));
    // The tail past B is (6/pi^2) 2/sqrt(B) to leading order, about 1.2e-3 here.
    const double gap = zeta_constants().theta1 - static_cast<double>(s);
    CHECK(gap == doctest::Approx(6.0 / (pi * pi) * 2.0 / 1000.0).epsilon(0.01));
}

TEST_CASE("constants") {
    const auto& c = zeta_constants();
    CHECK(c.theta1 == doctest::Approx(c.z32 / c.z3).epsilon(1e-15));
    CHECK(c.theta2 == doctest::Approx(c.z23 / c.z2).epsilon(1e-15));
    CHECK(c.theta1 == doctest::Approx(2.1733).epsilon(1e-4));
    CHECK(c.theta2 == doctest::Approx(-1.4880).epsilon(1e-3));
    CHECK(4.0 * c.z43 / (3.0 * c.z2) == doctest::Approx(2.9189).epsilon(1e-4));
    CHECK(c.c_inf == doctest::Approx(1.012).epsilon(1e-3));
    CHECK(c_infinity_from(c.z43, c.z2, 0.0) == 0.0);
}

TEST_CASE("sinc moment against the Mellin closed form") {
    // int_0^inf (1 - cos a y) y^{-5/3} dy = a^{2/3} Gamma(1/3) (3/2) / 2 ... reduces to
    // (3 / (8 pi^2)) Gamma(1/3) (2 pi)^{2/3} for S(y)^2 = (1 - cos 2 pi y) / (2 pi^2 y^2).
    const double closed = 3.0 / (8.0 * pi * pi) * boost::math::tgamma(1.0 / 3.0) * std::pow(2.0 * pi, 2.0 / 3.0);
    CHECK(std::fabs(sinc_moment() - closed) < 1e-8);
    CHECK(closed == doctest::Approx(0.3467).epsilon(1e-3));
    // The Mellin integral itself, by brute quadrature on a long range plus
    // the non-oscillatory tail, as a check on the closed form.
    const auto body = integrate_panels([](double y) { return sinc(y) * sinc(y) * std::cbrt(y); }, 0.0,
                                       2000.0, 0.5, 1e-12);
    const double tail = 3.0 / (4.0 * pi * pi) * std::pow(2000.0, -2.0 / 3.0);
    CHECK(std::fabs(body.value + tail - closed) < 1e-6);
}

TEST_CASE("sinc moment self-consistency") {
    const double base = sinc_moment();
    CHECK(std::fabs(sinc_moment({512.0, 1e-13}) - base) < 1e-8);
    CHECK(std::fabs(sinc_moment({128.0, 1e-12}) - base) < 1e-8);
    const auto unit = integrate_adaptive([](double y) { return sinc(y) * sinc(y) * std::cbrt(y); }, 0.0, 1.0);
    CHECK(unit.value < base);
    CHECK(unit.value > 0.0);
    // Partial integrals grow with the cutoff.
    double prev = 0.0;
    for (double Y : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        const double v = integrate_panels([](double y) { return sinc(y) * sinc(y) * std::cbrt(y); }, 0.0, Y, 0.5).value;
        CHECK(v > prev);
        prev = v;
    }
    const auto& c = zeta_constants();
    CHECK(std::fabs(c_infinity_from(c.z43, c.z2, sinc_moment({512.0, 1e-13})) - c.c_inf) < 1e-6);
}

TEST_CASE("sinc and sin_pi") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(3.0) == 0.0);
    CHECK(sinc(0.5) == doctest::Approx(2.0 / pi));
    CHECK(sin_pi(1e15 + 0.5) == doctest::Approx(1.0));
    CHECK(sin_pi(-0.5) == doctest::Approx(-1.0));
}

TEST_CASE("diagonal sum with only b = 1") {
    // b_cut < 2 keeps a single layer: 2 H^2 sum_n S(n H)^2.
    const double H = 2.5;
    REQUIRE(DiagonalParams{H}.b_cut() < 2.0);
    const DiagonalResult d = diagonal_sum({H});
    CHECK(d.b_terms == 1);
    CHECK(d.value == doctest::Approx(static_cast<double>(2.0L * H * H * sinc_tail_sum(1.0L / H))).epsilon(1e-8));
    const DiagonalResult z = diagonal_sum({2.0});
    CHECK(z.integer_H);
    CHECK(z.value == 0.0);
}

TEST_CASE("diagonal sum matches the Poisson oracle") {
    for (double H : {10.5, 100.5, 1000.5, 3162.5}) {
        const DiagonalResult d = diagonal_sum({H, 0.005});
        const double want = static_cast<double>(diagonal_oracle(H, 0.005));
        CAPTURE(H);
        CHECK(d.value == doctest::Approx(want).epsilon(1e-8));
        CHECK(std::fabs(d.value - want) <= d.discard_bound + 1e-12 * want);
    }
    // A larger eps keeps more b and exercises the nu > 1 branch.
    const double want = static_cast<double>(diagonal_oracle(100.5, 0.5));
    CHECK(diagonal_sum({100.5, 0.5}).value == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("diagonal sum stays within loose bounds of the asymptotic") {
    // The truncation b <= H^{2/3+eps} drops the b > H^{2/3} mass; with the
    // cut pushed far out the ratio approaches 1.
    const double cinf = c_infinity();
    for (double H : {100.5, 1000.5}) {
        const double r = diagonal_sum({H, 0.005}).value / (cinf * std::pow(H, 2.0 / 3.0));
        CHECK(r > 0.05);
        CHECK(r < 1.5);
    }
    const double H = 1000.5;
    const double wide = static_cast<double>(diagonal_oracle(H, 1.0)) / (cinf * std::pow(H, 2.0 / 3.0));
    CHECK(wide == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("smooth bump") {
    CHECK(smooth_bump(0.0) == 1.0);
    CHECK(smooth_bump(1.0) == 1.0);
    CHECK(smooth_bump(-1.0) == 1.0);
    CHECK(smooth_bump(2.0) == 0.0);
    CHECK(smooth_bump(5.0) == 0.0);
    CHECK(smooth_bump(1.5) == doctest::Approx(0.5));
    // Finite-difference derivative bounds from the header.
    const double bounds[] = {1.0, 2.47, 9.38, 78.8, 623.0};
    const double h = 1e-3;
    for (double x = 1.0; x <= 2.0; x += 0.001) {
        const double f[] = {smooth_bump(x - 2 * h), smooth_bump(x - h), smooth_bump(x),
                            smooth_bump(x + h), smooth_bump(x + 2 * h)};
        CHECK(std::fabs(f[2]) <= bounds[0]);
        CHECK(std::fabs((f[3] - f[1]) / (2 * h)) <= bounds[1] * 1.01);
        CHECK(std::fabs((f[3] - 2 * f[2] + f[1]) / (h * h)) <= bounds[2] * 1.01);
    }
    // C^1 at the seams.
    CHECK(std::fabs(smooth_bump(1.0 + 1e-4) - 1.0) < 1e-12);
    CHECK(std::fabs(smooth_bump(2.0 - 1e-4)) < 1e-12);
}

TEST_CASE("windowed sums") {
    const Window zero{[](double) { return 0.0; }, 5.0};
    CHECK(windowed_diagonal_sum(1000.5, 0.005, zero).value == 0.0);

    const double H = 1000.5, eps = 0.005;
    const double full = diagonal_sum({H, eps}).value;
    const double smooth = windowed_diagonal_sum(H, eps, sinc_bump_window(H, eps)).value;
    CHECK(std::fabs(full - smooth) <= 2.0 * std::pow(H, 2.0 / 3.0 - eps / 6.0));

    const Window gauss{[](double y) { return std::exp(-y * y); }, 7.0};
    for (double e : {0.005, 0.3}) {
        long double want = 0.0L;
        for (u64 b = 1; b <= static_cast<u64>(std::pow(H, 2.0 / 3.0 + e)); ++b) {
            if (!oracle::is_squarefree(b)) continue;
            const long double b3 = static_cast<long double>(b) * b * b;
            want += 2.0L * H * H / b3 * gauss_tail_sum(std::sqrt(b3) / H);
        }
        CHECK(windowed_diagonal_sum(H, e, gauss).value == doctest::Approx(static_cast<double>(want)).epsilon(1e-9));
    }
}

TEST_CASE("windowed prediction for a Gaussian") {
    // int_0^inf e^{-2y^2} y^{1/3} dy = Gamma(2/3) / (2 * 2^{2/3})
    const Window gauss{[](double y) { return std::exp(-y * y); }, 7.0};
    const auto& c = zeta_constants();
    const double moment = boost::math::tgamma(2.0 / 3.0) / (2.0 * std::pow(2.0, 2.0 / 3.0));
    const double H = 10000.0;
    CHECK(windowed_prediction(H, gauss) ==
          doctest::Approx(4.0 * c.z43 / (3.0 * c.z2) * moment * std::pow(H, 2.0 / 3.0)).epsilon(1e-9));
    // The complete b-sum, with the Poisson form for every b, reproduces it.
    long double full = 0.0L;
    const auto sf = squarefree_sieve(1, 20000000);
    for (u64 b = 20000000; b >= 1; --b) {
        if (!sf.is_squarefree(b)) continue;
        const long double b3 = static_cast<long double>(b) * b * b;
        const long double nu = std::sqrt(b3) / H;
        // Past nu = 10 the k != 0 terms are below e^{-490}.
        const long double inner = nu >= 10.0L ? (nu * std::sqrt(pi / 2.0L) - 1.0L) / 2.0L : gauss_tail_sum(nu);
        full += 2.0L * H * H / b3 * inner;
    }
    CHECK(static_cast<double>(full) == doctest::Approx(windowed_prediction(H, gauss)).epsilon(0.05));
}

}  // TEST_SUITE
