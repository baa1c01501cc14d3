#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sqfvar/asymptotics.hpp"
#include "sqfvar/counting.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/squarefull.hpp"

using namespace sqfvar;

TEST_SUITE("counting") {

TEST_CASE("count examples") {
    CHECK(count_upto(0) == 0);
    CHECK(count_upto(1) == 1);
    CHECK(count_upto(100) == 14);
    CHECK(count_upto(10000) == enumerate_squarefull(1, 10000).size());
    const double approx = bg_approx(1e4);
    CHECK(std::fabs(static_cast<double>(count_upto(10000)) - approx) < 10.0);
}

TEST_CASE("unit steps match factorization for n <= 10^5") {
    u64 prev = 0;
    for (u64 n = 1; n <= 100000; ++n) {
        const u64 q = count_upto(n);
        const u64 step = q - prev;
        CHECK(step == static_cast<u64>(oracle::is_squarefull(n)));
        prev = q;
    }
}

TEST_CASE("count equals enumeration length at random x <= 10^9") {
    const auto reps = enumerate_squarefull(1, 1000000000ULL);
    std::vector<u64> ns(reps.size());
    std::transform(reps.begin(), reps.end(), ns.begin(), [](auto& r) { return r.n; });
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<u64> dist(1, 1000000000ULL);
    for (int i = 0; i < 1000; ++i) {
        const u64 x = dist(rng);
        const auto len = static_cast<u64>(std::upper_bound(ns.begin(), ns.end(), x) - ns.begin());
        CHECK(count_upto(x) == len);
    }
}

TEST_CASE("bg approximation examples") {
    const auto& c = zeta_constants();
    CHECK(bg_approx(1.0) == doctest::Approx(c.theta1 + c.theta2).epsilon(1e-13));
    CHECK(bg_approx(1.0) == doctest::Approx(0.685).epsilon(1e-3));
    CHECK(bg_approx(1e6) == doctest::Approx(c.theta1 * 1e3 + c.theta2 * 1e2).epsilon(1e-13));
    const CountResult r = count_with_bg(1000000000000ULL);
    CHECK(r.q == count_upto(1000000000000ULL));
    CHECK(std::fabs(r.err) <= 100.0);
    CHECK(r.err == doctest::Approx(static_cast<double>(r.q) - r.bg2));
}

TEST_CASE("interval count examples") {
    CHECK(interval_count(1, Rational(6, 1)) == 9);
    CHECK(interval_count(49, Rational(1, 1000)) == 0);
    const u64 x = 100000000;
    const u64 hi = (10000 + 10) * (10000 + 10);
    CHECK(interval_count(x, Rational(10, 1)) == enumerate_squarefull(x + 1, hi).size());
}

TEST_CASE("interval count boundary is exact") {
    // x = 48, H = 1: upper end (sqrt(48) + 1)^2 = 49 + 2 sqrt(48) < 62.9.
    CHECK(interval_count(48, Rational(1, 1)) == 1);  // 49
    // x = 36, H = 1: upper end exactly 49, included; 36 itself excluded.
    CHECK(interval_count(36, Rational(1, 1)) == 1);
    CHECK(interval_count(35, Rational(1, 1)) == 1);  // 36 only, upper end < 48
    CHECK(interval_count(9, Rational(1, 1)) == 1);   // (9, 16]
    CHECK(interval_count(4, Rational(1, 2)) == 0);   // (4, 6.25]
    CHECK(interval_count(4, Rational(3, 2)) == 2);   // (4, 12.25]: 8, 9
    CHECK(interval_count(1, Rational(3, 2)) == 1);   // (1, 6.25]: 4

}

TEST_CASE("short interval trend near 10^12") {
    const auto& c = zeta_constants();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<u64> dist(1000000000000ULL, 2000000000000ULL);
    double sum = 0.0;
    const int trials = 1000;
    for (int i = 0; i < trials; ++i) {
        const u64 x = dist(rng);
        const double xd = static_cast<double>(x);
        const u64 y = static_cast<u64>(std::pow(xd, 0.8));
        const double got = static_cast<double>(count_upto(x + y) - count_upto(x));
        sum += got / (c.theta1 / 2.0 * std::pow(xd, 0.3));
    }
    const double mean = sum / trials;
    CHECK(mean >= 0.9);
    CHECK(mean <= 1.1);
}

TEST_CASE("count is monotone and thread-count independent") {
    std::mt19937_64 rng(9);
    set_thread_count(1);
    std::vector<u64> xs, one;
    for (int i = 0; i < 50; ++i) xs.push_back(rng() % 4000000000000000000ULL);
    std::sort(xs.begin(), xs.end());
    for (u64 x : xs) one.push_back(count_upto(x));
    CHECK(std::is_sorted(one.begin(), one.end()));
    set_thread_count(4);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(count_upto(xs[i]) == one[i]);
    set_thread_count(0);
}

}  // TEST_SUITE
