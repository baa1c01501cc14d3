#include "sqfvar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sqfvar/analytic_checks.hpp"
#include "sqfvar/errors.hpp"
#include "sqfvar/report.hpp"

namespace sqfvar {

using nlohmann::json;
using std::numbers::pi;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"psi", "dirichlet", "processb", "zeta4"};
    return names;
}

namespace {

CheckResult upper_check(std::string name, json params, double value, double bound) {
    CheckResult r;
    r.check = std::move(name);
    r.params = std::move(params);
    r.value = round12(value);
    r.bound = round12(bound);
    r.pass = std::isfinite(value) && value <= bound;
    return r;
}

std::vector<CheckResult> psi_suite(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    const double worst = std::max({std::fabs(psi(0.25) + 0.25), std::fabs(psi(7.0) + 0.5),
                                   std::fabs(psi(3.9) - 0.4)});
    out.push_back(upper_check("psi_values", {{"u", {0.25, 7.0, 3.9}}}, worst, 1e-12));

    std::vector<double> consts;
    for (long N : {100L, 1000L, 10000L}) {
        const double c = psi_fourier_envelope_constant(N);
        consts.push_back(c);
        out.push_back(upper_check("psi_fourier_envelope", {{"N", N}}, c, 2.0));
    }
    const auto [lo, hi] = std::minmax_element(consts.begin(), consts.end());
    out.push_back(upper_check("psi_fourier_envelope_stability", {{"N", {100, 1000, 10000}}},
                              *hi / *lo, 2.0));

    const auto fixed = counting_identity_check(1000000, Rational(3, 1), 10);
    out.push_back(upper_check("counting_identity", {{"x", 1000000}, {"H", "3"}, {"B", 10}},
                              std::fabs(fixed.residual), 1e-9));

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> logx(0.0, 9.0 * std::log(10.0));
    std::uniform_int_distribution<i64> hnum(1, 400), hden(1, 4);
    std::uniform_int_distribution<u64> bdist(1, 300);
    double max_res = 0.0;
    for (int i = 0; i < opts.identity_instances; ++i) {
        const u64 x = std::max<u64>(1, static_cast<u64>(std::exp(logx(rng))));
        const Rational H(hnum(rng), hden(rng));
        const u64 B = bdist(rng);
        max_res = std::max(max_res, std::fabs(counting_identity_check(x, H, B).residual));
    }
    out.push_back(upper_check("counting_identity_random",
                              {{"instances", opts.identity_instances}, {"seed", opts.seed}},
                              max_res, 1e-8));
    return out;
}

std::vector<CheckResult> dirichlet_suite(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    {
        DirichletPoly D{{1.0, 1.0}};
        const double T = 100.0;
        const double exact = 2.0 * T + 2.0 * std::sin(T * std::log(2.0)) / std::log(2.0);
        const auto r = mean_value_check(D, T);
        out.push_back(upper_check("mean_value_closed_form", {{"N", 2}, {"T", T}},
                                  std::fabs(r.integral - exact) / exact, 1e-6));
    }
    {
        std::mt19937_64 rng(opts.seed);
        std::normal_distribution<double> g(0.0, 1.0);
        DirichletPoly D;
        for (int n = 0; n < 50; ++n) D.coeffs.emplace_back(g(rng), g(rng));
        const auto r = mean_value_check(D, 5000.0);
        CheckResult c = upper_check("mean_value_random", {{"N", 50}, {"T", 5000}, {"seed", opts.seed}},
                                    std::fabs(r.ratio - 1.0), 0.1);
        c.params["ratio"] = round12(r.ratio);
        c.params["c"] = round12(r.c);
        out.push_back(c);
    }
    {
        std::mt19937_64 rng(opts.seed + 1);
        std::normal_distribution<double> g(0.0, 1.0);
        DirichletPoly D;
        for (int n = 0; n < 20; ++n) D.coeffs.emplace_back(g(rng), g(rng));
        std::vector<double> dev;
        for (double k : {10.0, 100.0, 1000.0})
            dev.push_back(std::fabs(mean_value_check(D, k * 20.0).ratio - 1.0));
        CheckResult c;
        c.check = "mean_value_trend";
        c.params = {{"N", 20}, {"T_over_N", {10, 100, 1000}}};
        c.value = {round12(dev[0]), round12(dev[1]), round12(dev[2])};
        c.bound = "nonincreasing";
        c.pass = dev[1] <= dev[0] && dev[2] <= dev[1];
        out.push_back(c);
    }
    return out;
}

std::vector<CheckResult> processb_suite(const VerifyOptions&) {
    std::vector<CheckResult> out;
    {
        const u64 B = 1000;
        const double t = 4.0 * pi * B * 1.5;
        const auto r = process_b_check({t, B, 2.0 * B});
        const double alpha = -t / (2 * pi * B), beta = -t / (4 * pi * B);
        const double bound = 10.0 * (std::log(2.0 + beta - alpha) + B / std::sqrt(t));
        out.push_back(upper_check("process_b", {{"B", B}, {"t", round12(t)}, {"u", 2 * B}},
                                  r.discrepancy, bound));
    }
    for (u64 B : {100ULL, 1000ULL, 10000ULL}) {
        const double t = 20.0 * static_cast<double>(B);
        const auto r = process_b_check({t, B, 2.0 * static_cast<double>(B)});
        CheckResult c = upper_check("process_b_sweep", {{"B", B}, {"t", t}, {"u", 2 * B}},
                                    r.discrepancy, 10.0 * r.predicted_error);
        c.params["stationary_points"] = r.nu_count;
        out.push_back(c);
    }
    for (u64 B : {8ULL, 32ULL, 128ULL}) {
        const auto scan = m_envelope_scan(B);
        CheckResult c = upper_check("m_poly_envelope", {{"B", B}, {"t_range", {1e3, 1e5}}},
                                    scan.fitted_constant, 10.0);
        c.params["slope"] = round12(scan.slope);
        out.push_back(c);
    }
    {
        const std::vector<double> levels = {0.5, 1.0, 2.0, 4.0};
        const auto counts = m_large_value_histogram(64, 20000.0, levels);
        CheckResult c;
        c.check = "m_large_values";
        c.params = {{"B", 64}, {"T", 20000}, {"levels", levels}};
        c.value = counts;
        c.bound = nullptr;
        c.pass = true;
        c.diagnostic = true;
        out.push_back(c);
    }
    return out;
}

std::vector<CheckResult> zeta4_suite(const VerifyOptions&) {
    std::vector<CheckResult> out;
    const double z0 = std::abs(zeta_critical(14.134725141734693));
    out.push_back(upper_check("zeta_first_zero", {{"t", 14.134725141734693}}, z0, 1e-3));

    const double Ts[] = {100.0, 1000.0, 10000.0};
    for (const auto& row : zeta_moment_scan(Ts)) {
        out.push_back(upper_check("zeta_fourth_moment", {{"T", row.T}}, row.fourth_ratio, 5.0));
        out.push_back(upper_check("zeta_subconvexity", {{"T", row.T}}, row.subconvex_ratio, 5.0));
    }
    return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opts) {
    if (name == "psi") return psi_suite(opts);
    if (name == "dirichlet") return dirichlet_suite(opts);
    if (name == "processb") return processb_suite(opts);
    if (name == "zeta4") return zeta4_suite(opts);
    throw ConfigError("unknown verify suite: " + name);
}

std::string to_json_line(const CheckResult& r) {
    json j = {{"check", r.check}, {"params", r.params}, {"value", r.value}, {"bound", r.bound},
              {"pass", r.pass}};
    if (r.diagnostic) j["diagnostic"] = true;
    return j.dump();
}

}  // namespace sqfvar
