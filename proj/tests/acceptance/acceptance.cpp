// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// below; nothing is tuned to make a criterion pass.
//
//   sqfvar_acceptance                 all criteria
//   sqfvar_acceptance --criterion 4   one criterion
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "sqfvar/analytic_checks.hpp"
#include "sqfvar/asymptotics.hpp"
#include "sqfvar/counting.hpp"
#include "sqfvar/experiment.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/squarefree.hpp"
#include "sqfvar/squarefull.hpp"
#include "sqfvar/sweep.hpp"
#include "sqfvar/zeta.hpp"
#include "variance_oracles.hpp"

using namespace sqfvar;
using std::numbers::pi;

namespace tol {
constexpr u64 kBruteLimit = 100000;
constexpr u64 kRandomLimit = 1000000000;
constexpr int kRandomCounts = 1000;
constexpr double kRuntime1 = 60.0;

constexpr int kEnvelopePoints = 1000;
constexpr double kRuntime2 = 300.0;

constexpr int kVarianceInstances = 20;
constexpr double kVarianceRel = 1e-6;
constexpr double kRiemannCell = 0.05;

constexpr double kSlopeLo = 0.55, kSlopeHi = 0.80;
constexpr double kMedianRatioLo = 0.6, kMedianRatioHi = 1.5;

constexpr double kDiagonalLo = 0.9, kDiagonalHi = 1.1;
constexpr double kDiagonalEps = 0.005;

constexpr double kMomentAbs = 1e-8;
constexpr double kZeta2Abs = 1e-12;
constexpr double kSquarefreeAbs = 1e-3;
constexpr u64 kSquarefreeB = 1000000;

constexpr double kIdentityResidual = 1e-8;
constexpr int kIdentityInstances = 1000;
constexpr double kPsiEnvelope = 2.0;

constexpr double kMeanValueLo = 0.9, kMeanValueHi = 1.1;
constexpr double kFourthMoment = 5.0;
constexpr double kProcessBFactor = 10.0;

constexpr double kJ1Share = 0.5;
constexpr double kI2Share = 0.1;

constexpr std::uint64_t kSeed = 20231019;
}  // namespace tol

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ExperimentConfig config(u64 X, Rational H, double eps = 0.005) {
    ExperimentConfig c;
    c.X = X;
    c.H = H;
    c.eps = eps;
    c.lam = 2.0 / 9.0 - eps / 3.0;
    return c;
}

std::vector<Rational> half_offset(std::initializer_list<i64> base) {
    std::vector<Rational> out;
    for (i64 b : base) out.emplace_back(2 * b + 1, 2);
    return out;
}

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    u64 mismatches = 0;
    u64 brute = 0;
    for (u64 x = 1; x <= tol::kBruteLimit; ++x) {
        brute += oracle::is_squarefull(x);
        if (count_upto(x) != brute) ++mismatches;
    }
    const auto reps = enumerate_squarefull(1, tol::kRandomLimit);
    std::mt19937_64 rng(tol::kSeed);
    std::uniform_int_distribution<u64> dist(1, tol::kRandomLimit);
    for (int i = 0; i < tol::kRandomCounts; ++i) {
        const u64 x = dist(rng);
        const auto len = static_cast<u64>(
            std::upper_bound(reps.begin(), reps.end(), x, [](u64 v, const SquarefullRep& r) { return v < r.n; }) -
            reps.begin());
        if (count_upto(x) != len) ++mismatches;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {mismatches == 0 && secs < tol::kRuntime1,
            fmt("mismatches=%llu over x<=1e5 and %d random x<=1e9; %.1f s (limit %.0f s)",
                static_cast<unsigned long long>(mismatches), tol::kRandomCounts, secs, tol::kRuntime1)};
}

Outcome criterion2() {
    const auto t0 = std::chrono::steady_clock::now();
    int violations = 0;
    double worst = 0.0, worst_x = 0.0;
    for (int i = 0; i < tol::kEnvelopePoints; ++i) {
        const double lx = 4.0 + 8.0 * i / (tol::kEnvelopePoints - 1);
        const u64 x = static_cast<u64>(std::llround(std::pow(10.0, lx)));
        const CountResult r = count_with_bg(x);
        const double scaled = std::fabs(r.err) / std::pow(static_cast<double>(x), 1.0 / 6.0);
        if (scaled > 1.0) ++violations;
        if (scaled > worst) {
            worst = scaled;
            worst_x = static_cast<double>(x);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {violations == 0 && secs < tol::kRuntime2,
            fmt("violations=%d of %d; max |err|/x^(1/6)=%.4f at x=%.4g; %.1f s", violations,
                tol::kEnvelopePoints, worst, worst_x, secs)};
}

Outcome criterion3() {
    std::mt19937_64 rng(tol::kSeed + 3);
    std::uniform_int_distribution<u64> xdist(10000, 1000000);
    std::uniform_int_distribution<i64> qdist(1, 4);
    double worst = 0.0;
    for (int i = 0; i < tol::kVarianceInstances; ++i) {
        const u64 X = xdist(rng);
        const i64 q = qdist(rng);
        const i64 p = std::uniform_int_distribution<i64>(1, 20 * q)(rng);
        const auto cfg = config(X, Rational(p, q));
        const SweepWindow w = make_window(cfg);
        const VarianceReport r = variance_report(cfg, w);
        std::vector<u64> ns;
        for (const auto& rep : enumerate_squarefull(1, w.upper_at_2X)) ns.push_back(rep.n);
        const oracle::RiemannOracle riemann(ns, cfg.H.value_ld());
        const long double want = riemann.variance(X, r.mean_truncated, tol::kRiemannCell);
        const double rel = std::fabs(r.total - static_cast<double>(want)) / static_cast<double>(want);
        worst = std::max(worst, rel);
    }
    return {worst <= tol::kVarianceRel,
            fmt("max relative deviation %.3g over %d instances (limit %.0e)", worst, tol::kVarianceInstances,
                tol::kVarianceRel)};
}

Outcome criterion4() {
    const auto hs = half_offset({16, 32, 64, 128, 256});
    const auto big = run_variance_grid(1000000000000ULL, hs, 0.005, 2.0 / 9.0 - 0.005 / 3.0);
    if (big.reports.size() != hs.size() || !big.slope) return {false, "grid at X=1e12 incomplete"};
    std::vector<double> ratios, dev_big, dev_small;
    for (const auto& r : big.reports) {
        ratios.push_back(r.ratio);
        dev_big.push_back(std::fabs(r.ratio - 1.0));
    }
    // X = 1e8 puts H = 256.5 past X^{1/4}, so the grid helper would skip it;
    // run the sweeps directly for a like-for-like comparison.
    for (const auto& H : hs) dev_small.push_back(std::fabs(variance_report(config(100000000, H)).ratio - 1.0));
    const double slope = *big.slope;
    const double med = median(ratios);
    const double mb = median(dev_big), ms = median(dev_small);
    const bool pass = slope >= tol::kSlopeLo && slope <= tol::kSlopeHi && med >= tol::kMedianRatioLo &&
                      med <= tol::kMedianRatioHi && mb <= ms;
    return {pass, fmt("slope=%.4f in [%.2f, %.2f]; median ratio=%.4f in [%.1f, %.1f]; median |ratio-1| "
                      "%.4f (X=1e12) vs %.4f (X=1e8)",
                      slope, tol::kSlopeLo, tol::kSlopeHi, med, tol::kMedianRatioLo, tol::kMedianRatioHi, mb, ms)};
}

// Sum over squarefree b <= bmax of the exact inner sums (Poisson form, see the
// unit tests) with the b-tail past bmax replaced by its integral. Diagnostic only.
double complete_diagonal(double H, u64 bmax) {
    const auto sf = squarefree_sieve(1, bmax);
    long double s = 0.0L;
    for (u64 b = bmax; b >= 1; --b) {
        if (!sf.is_squarefree(b)) continue;
        const long double b15 = std::pow(static_cast<long double>(b), 1.5L);
        const long double ratio = H / b15;
        if (ratio > 1.0L) {
            const long double f = ratio - std::floor(ratio);
            s += f * (1.0L - f);
        } else {
            s += ratio - ratio * ratio;
        }
    }
    const double B = static_cast<double>(bmax);
    s += 6.0 / (pi * pi) * (2.0 * H / std::sqrt(B) - H * H / (2.0 * B * B));
    return static_cast<double>(s);
}

Outcome criterion5() {
    const double cinf = c_infinity();
    auto dev = [&](double H) {
        const double v = diagonal_sum({H, tol::kDiagonalEps}).value;
        return v / (cinf * std::pow(H, 2.0 / 3.0));
    };
    const double r3 = dev(1000.5), r4 = dev(10000.5), r5 = dev(100000.5);
    const bool pass = r4 >= tol::kDiagonalLo && r4 <= tol::kDiagonalHi && std::fabs(r5 - 1.0) < std::fabs(r3 - 1.0);
    const double H = 10000.5;
    const double complete = complete_diagonal(H, 20000000) / (cinf * std::pow(H, 2.0 / 3.0));
    return {pass, fmt("eps=%.3f ratios: H=1e3+.5 %.4f, H=1e4+.5 %.4f (need [%.1f, %.1f]), H=1e5+.5 %.4f; "
                      "diagnostic: all b at H=1e4+.5 gives %.4f",
                      tol::kDiagonalEps, r3, r4, tol::kDiagonalLo, tol::kDiagonalHi, r5, complete)};
}

Outcome criterion6() {
    const double closed =
        3.0 / (8.0 * pi * pi) * boost::math::tgamma(1.0 / 3.0) * std::pow(2.0 * pi, 2.0 / 3.0);
    const double dm = std::fabs(sinc_moment() - closed);
    const double dz = std::fabs(zeta_real(2.0) - pi * pi / 6.0);
    const auto sf = squarefree_sieve(1, tol::kSquarefreeB);
    long double s = 0.0L;
    for (u64 b = tol::kSquarefreeB; b >= 1; --b)
        if (sf.is_squarefree(b)) s += 1.0L / (b * std::sqrt(static_cast<long double>(b)));
    const double ds = std::fabs(static_cast<double>(s) - zeta_constants().theta1);
    const bool pass = dm <= tol::kMomentAbs && dz <= tol::kZeta2Abs && ds <= tol::kSquarefreeAbs;
    return {pass, fmt("|moment - Mellin|=%.3g (<=%.0e); |zeta(2) - pi^2/6|=%.3g (<=%.0e); "
                      "|sum_{b<=1e6} mu^2 b^-1.5 - theta1|=%.4g (<=%.0e)",
                      dm, tol::kMomentAbs, dz, tol::kZeta2Abs, ds, tol::kSquarefreeAbs)};
}

Outcome criterion7() {
    std::mt19937_64 rng(tol::kSeed + 7);
    double worst = 0.0;
    for (int i = 0; i < tol::kIdentityInstances; ++i) {
        const u64 x = 1 + rng() % 1000000000000ULL;
        const Rational H(1 + static_cast<i64>(rng() % 400), 1 + static_cast<i64>(rng() % 4));
        const u64 B = 1 + rng() % 300;
        worst = std::max(worst, std::fabs(counting_identity_check(x, H, B).residual));
    }
    double cmax = 0.0;
    for (long N : {100L, 1000L, 10000L}) cmax = std::max(cmax, psi_fourier_envelope_constant(N));
    return {worst < tol::kIdentityResidual && cmax <= tol::kPsiEnvelope,
            fmt("max |residual|=%.3g (<%.0e) over %d instances; psi envelope constant max=%.4f (<=%.0f)", worst,
                tol::kIdentityResidual, tol::kIdentityInstances, cmax, tol::kPsiEnvelope)};
}

Outcome criterion8() {
    std::mt19937_64 rng(tol::kSeed + 8);
    std::normal_distribution<double> g;
    DirichletPoly D;
    for (int n = 0; n < 50; ++n) D.coeffs.emplace_back(g(rng), g(rng));
    const double ratio = mean_value_check(D, 5000.0).ratio;
    const double Ts[] = {10000.0};
    const double fourth = zeta_moment_scan(Ts).front().fourth_ratio;
    double worst = 0.0;
    for (u64 B : {100ULL, 1000ULL, 10000ULL}) {
        const auto r = process_b_check({20.0 * static_cast<double>(B), B, 2.0 * static_cast<double>(B)});
        worst = std::max(worst, r.discrepancy / r.predicted_error);
    }
    const bool pass = ratio >= tol::kMeanValueLo && ratio <= tol::kMeanValueHi && fourth <= tol::kFourthMoment &&
                      worst <= tol::kProcessBFactor;
    return {pass, fmt("mean-value ratio=%.5f (N=50, T=5000); fourth-moment ratio=%.4f (T=1e4, <=%.0f); "
                      "process B max discrepancy/predicted=%.4f (<=%.0f)",
                      ratio, fourth, tol::kFourthMoment, worst, tol::kProcessBFactor)};
}

Outcome criterion9() {
    const VarianceReport r = variance_report(config(10000000000ULL, Rational(65, 2)));
    const bool pass = r.J1 >= tol::kJ1Share * r.total && r.I2 <= tol::kI2Share * r.total;
    return {pass, fmt("total=%.5f J1=%.5f (J1/total=%.4f, need >=%.1f) J2=%.5f I2=%.5f (I2/total=%.4f, need <=%.1f)",
                      r.total, r.J1, r.J1 / r.total, tol::kJ1Share, r.J2, r.I2, r.I2 / r.total, tol::kI2Share)};
}

Outcome criterion10() {
    const auto hs = half_offset({8, 16, 32, 64, 128});
    const u64 X = 10000000000ULL;
    const double lam = 2.0 / 9.0 - 0.005 / 3.0;
    auto render = [&](const GridOptions& opts) {
        const auto g = run_variance_grid(X, hs, 0.005, lam, opts);
        return variance_table(g.reports).render() + (g.slope ? format_number(*g.slope) : "undefined") + "\n";
    };
    const unsigned saved = thread_count();
    set_thread_count(1);
    const std::string a = render({});
    const std::string b = render({});
    set_thread_count(4);
    const std::string c = render({});
    const std::string path = "acceptance_grid_cache.bin";
    std::remove(path.c_str());
    const std::string d = render({path, CacheFormat::binary});
    const std::string e = render({path, CacheFormat::binary});
    std::remove(path.c_str());
    set_thread_count(saved);
    const auto g = run_variance_grid(X, hs, 0.005, lam);
    const bool pass = a == b && a == c && a == d && a == e;
    return {pass, fmt("X=1e10 grid: repeat, 4 threads, cold and warm cache all byte-identical: %s (%zu bytes); "
                      "slope=%.4f",
                      pass ? "yes" : "no", a.size(), g.slope ? *g.slope : NAN)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria = {
    {"exact-count oracle equivalence", criterion1},
    {"Bateman-Grosswald envelope", criterion2},
    {"variance exactness vs adaptive Riemann sum", criterion3},
    {"H^(2/3) law at X=1e12", criterion4},
    {"diagonal asymptotic", criterion5},
    {"constant cross-checks", criterion6},
    {"identity suites", criterion7},
    {"Dirichlet polynomial checks", criterion8},
    {"b-split diagnostics at X=1e10, H=32.5", criterion9},
    {"determinism", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-10)")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    bool all_pass = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        if (only && static_cast<std::size_t>(only) != i + 1) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = kCriteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu %s: %s | %s [%.1f s]\n", i + 1, o.pass ? "PASS" : "FAIL", kCriteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
