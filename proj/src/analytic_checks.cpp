#include "sqfvar/analytic_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqfvar/asymptotics.hpp"
#include "sqfvar/errors.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/quadrature.hpp"
#include "sqfvar/squarefree.hpp"
#include "sqfvar/zeta.hpp"

namespace sqfvar {

using std::numbers::pi;

double psi(double u) { return u - std::floor(u) - 0.5; }

double psi_fourier(double u, long N) {
    if (N < 1) throw ConfigError("psi_fourier: N must be >= 1");
    const double frac = u - std::floor(u);
    double s = 0.0;
    for (long n = N; n >= 1; --n) s += sin_pi(2.0 * std::fmod(static_cast<double>(n) * frac, 1.0)) / static_cast<double>(n);
    return -s / pi;
}

double psi_fourier_envelope_constant(long N) {
    std::vector<double> grid;
    constexpr int kUniform = 2000;
    for (int k = 0; k <= kUniform; ++k) grid.push_back((k + 0.3183098861837907) / (kUniform + 1.0));
    // Dense near the jump, where the Gibbs overshoot lives.
    for (int k = 0; k < 400; ++k) {
        const double c = std::pow(10.0, -2.0 + 4.0 * k / 399.0);
        const double u = c / static_cast<double>(N);
        if (u < 0.5) {
            grid.push_back(u);
            grid.push_back(1.0 - u);
        }
    }
    grid.push_back(0.0);
    grid.push_back(0.5);

    std::vector<double> ratio(grid.size());
    parallel_blocks(grid.size(), [&](std::size_t i) {
        const double u = grid[i];
        const double dist = std::min(u - std::floor(u), std::ceil(u) - u);
        const double env = dist == 0.0 ? 1.0 : std::min(1.0, 1.0 / (static_cast<double>(N) * dist));
        ratio[i] = std::fabs(psi(u) - psi_fourier(u, N)) / env;
    });
    return *std::max_element(ratio.begin(), ratio.end());
}

IdentityResidual counting_identity_check(u64 x, const Rational& H, u64 B) {
    if (x < 1) throw ConfigError("counting_identity_check: need x >= 1");
    if (B < 1) throw ConfigError("counting_identity_check: need B >= 1");
    const u64 U = upper_end(x, H);  // floor(x + y)
    const SquarefreeTable sf = squarefree_sieve(1, B);
    const long double sx = std::sqrt(static_cast<long double>(x));
    const long double h = H.value_ld();

    u64 count = 0;
    long double mean = 0.0L, psi_diff = 0.0L;
    for (u64 b = 1; b <= B; ++b) {
        if (!sf.is_squarefree(b)) continue;
        const u128 b3 = static_cast<u128>(b) * b * b;
        const u64 fl_lo = b3 > x ? 0 : isqrt(x / static_cast<u64>(b3));
        const u64 fl_hi = b3 > U ? 0 : isqrt(U / static_cast<u64>(b3));
        count += fl_hi - fl_lo;

        const long double b15 = static_cast<long double>(b) * std::sqrt(static_cast<long double>(b));
        const long double lo = sx / b15;
        const long double hi = (sx + h) / b15;
        mean += h / b15;
        psi_diff += (hi - fl_hi - 0.5L) - (lo - fl_lo - 0.5L);
    }
    IdentityResidual r;
    r.lhs = static_cast<double>(count);
    r.rhs = static_cast<double>(mean - psi_diff);
    r.residual = static_cast<double>(static_cast<long double>(count) - (mean - psi_diff));
    return r;
}

double DirichletPoly::l2_mass() const {
    double s = 0.0;
    for (const auto& a : coeffs) s += std::norm(a);
    return s;
}

void DirichletPoly::validate() const {
    if (coeffs.empty()) throw ConfigError("Dirichlet polynomial needs N >= 1");
    for (const auto& a : coeffs)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw ConfigError("Dirichlet polynomial has a non-finite coefficient");
}

cplx dirichlet_eval(const DirichletPoly& D, double t, double sigma) {
    cplx s = 0.0;
    for (std::size_t k = D.coeffs.size(); k-- > 0;) {
        const double ln = std::log(static_cast<double>(k + 1));
        const double mag = sigma == 0.0 ? 1.0 : std::exp(-sigma * ln);
        s += D.coeffs[k] * std::polar(mag, -t * ln);
    }
    return s;
}

MeanValueResult mean_value_check(const DirichletPoly& D, double T, double rel_tol) {
    D.validate();
    if (!(T > 0.0)) throw ConfigError("mean_value_check: T must be positive");
    const double N = static_cast<double>(D.length());
    const double panel = pi / std::log(std::max(N, 2.0));
    auto f = [&D](double t) { return std::norm(dirichlet_eval(D, t)); };
    const QuadResult q = integrate_panels(f, 0.0, T, panel, 1e-10);

    MeanValueResult r;
    r.integral = q.value;
    r.quad_error = q.error;
    if (!(q.error <= rel_tol * std::fabs(q.value)))
        throw QuadratureError("mean_value_check: quadrature error " + std::to_string(q.error) +
                              " exceeds tolerance");
    const double mass = D.l2_mass();
    r.prediction = T * mass;
    r.ratio = r.integral / r.prediction;
    r.c = std::fabs(r.integral - r.prediction) / (N * mass);
    return r;
}

cplx m_poly_eval(u64 B, double t, MFlavor flavor) {
    if (B < 2) throw ConfigError("m_poly_eval: B must be >= 2");
    const double freq = flavor == MFlavor::squarefree ? 3.0 * t : t;
    SquarefreeTable sf;
    if (flavor == MFlavor::squarefree) sf = squarefree_sieve(B + 1, 2 * B);
    cplx s = 0.0;
    for (u64 b = 2 * B; b > B; --b) {
        if (flavor == MFlavor::squarefree && !sf.is_squarefree(b)) continue;
        const double ln = std::log(static_cast<double>(b));
        s += std::polar(std::exp(-0.75 * ln), -freq * ln);
    }
    return s;
}

double m_poly_envelope(u64 B, double t) {
    const double b = static_cast<double>(B);
    const double at = std::fabs(t);
    return std::pow(at, 97.0 / 84.0) / std::pow(b, 2.25) + std::pow(b, 0.25) / std::sqrt(at) +
           std::log(at) / std::pow(b, 0.75);
}

MEnvelopeScan m_envelope_scan(u64 B, double t_lo, double t_hi, int windows, double step) {
    MEnvelopeScan scan;
    scan.B = B;
    scan.window_t.resize(windows);
    scan.window_max.resize(windows);
    std::vector<double> ratio(windows);
    const double lr = std::log(t_hi / t_lo) / windows;
    parallel_blocks(static_cast<std::size_t>(windows), [&](std::size_t w) {
        const double a = t_lo * std::exp(lr * static_cast<double>(w));
        const double b = t_lo * std::exp(lr * static_cast<double>(w + 1));
        double mx = 0.0;
        for (double t = a; t <= b; t += step) mx = std::max(mx, std::abs(m_poly_eval(B, t)));
        scan.window_t[w] = a;
        scan.window_max[w] = mx;
        ratio[w] = mx / std::min(m_poly_envelope(B, a), m_poly_envelope(B, b));
    });
    scan.fitted_constant = *std::max_element(ratio.begin(), ratio.end());

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int w = 0; w < windows; ++w) {
        const double x = std::log(scan.window_t[w]);
        const double y = std::log(scan.window_max[w]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = windows;
    scan.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return scan;
}

std::vector<std::uint64_t> m_large_value_histogram(u64 B, double T, std::span<const double> levels) {
    std::vector<std::uint64_t> counts(levels.size(), 0);
    for (double t = 1.0; t <= T; t += 1.0) {
        const double v = std::abs(m_poly_eval(B, t));
        for (std::size_t k = 0; k < levels.size(); ++k)
            if (v >= levels[k]) ++counts[k];
    }
    return counts;
}

void ExpSumSpec::validate() const {
    if (B < 2) throw ConfigError("ExpSumSpec: B must be >= 2");
    const double b = static_cast<double>(B);
    if (!(u >= b && u <= 2.0 * b)) throw ConfigError("ExpSumSpec: need B <= u <= 2B");
    if (!(std::fabs(t) >= 2.0)) throw ConfigError("ExpSumSpec: need |t| >= 2");
}

ProcessBResult process_b_check(const ExpSumSpec& spec) {
    spec.validate();
    if (spec.t < 0.0) {
        ExpSumSpec pos = spec;
        pos.t = -spec.t;
        ProcessBResult r = process_b_check(pos);
        r.lhs = std::conj(r.lhs);
        r.rhs = std::conj(r.rhs);
        return r;
    }
    const long double t = spec.t;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    ProcessBResult r;

    // e(-t log b / 2 pi) = exp(-i t log b)
    const u64 top = static_cast<u64>(std::floor(spec.u));
    long double re = 0.0L, im = 0.0L;
    for (u64 b = spec.B; b <= top; ++b) {
        const long double ph = -t * std::log(static_cast<long double>(b));
        re += std::cos(ph);
        im += std::sin(ph);
    }
    r.lhs = cplx(static_cast<double>(re), static_cast<double>(im));

    const long double alpha = -t / (two_pi * spec.B);  // f'(B)
    const long double beta = -t / (two_pi * static_cast<long double>(spec.u));  // f'(u)
    const auto nu_lo = static_cast<long>(std::ceil(alpha));
    const auto nu_hi = static_cast<long>(std::floor(beta));
    re = im = 0.0L;
    for (long nu = nu_lo; nu <= nu_hi; ++nu) {
        const long double x = -t / (two_pi * nu);          // f'(x) = nu
        const long double f = -t * std::log(x) / two_pi;    // f(x_nu)
        const long double f2 = t / (two_pi * x * x);        // f''(x_nu)
        const long double ph = two_pi * (f - nu * x + 0.125L);
        const long double amp = 1.0L / std::sqrt(f2);
        re += amp * std::cos(ph);
        im += amp * std::sin(ph);
        ++r.nu_count;
    }
    r.empty_range = r.nu_count == 0;
    r.rhs = cplx(static_cast<double>(re), static_cast<double>(im));
    r.discrepancy = std::abs(r.lhs - r.rhs);
    const long double lambda2 = t / (two_pi * static_cast<long double>(spec.u) * spec.u);
    r.predicted_error = static_cast<double>(std::log(2.0L + beta - alpha) + 1.0L / std::sqrt(lambda2));
    return r;
}

namespace {

struct CriticalTable {
    std::vector<double> log_n;
    std::vector<double> inv_sqrt_n;
    explicit CriticalTable(int N) : log_n(N + 1), inv_sqrt_n(N + 1) {
        for (int n = 1; n <= N; ++n) {
            log_n[n] = std::log(static_cast<double>(n));
            inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
        }
    }
};

}  // namespace

cplx zeta_critical(double t) {
    if (!(std::fabs(t) <= kCriticalTMax)) throw RangeError("zeta_critical: |t| beyond 1e5");
    static const CriticalTable table(critical_terms(kCriticalTMax) + 1);
    const int N = critical_terms(t);
    constexpr int kBernoulli = 12;

    double re = 0.0, im = 0.0;
    for (int n = N - 1; n >= 1; --n) {
        const double ph = -t * table.log_n[n];
        re += table.inv_sqrt_n[n] * std::cos(ph);
        im += table.inv_sqrt_n[n] * std::sin(ph);
    }
    return cplx(re, im) + zeta_em_tail(0.5, t, N, kBernoulli);
}

std::vector<ZetaMomentRow> zeta_moment_scan(std::span<const double> Ts) {
    if (Ts.empty()) return {};
    const double Tmax = *std::max_element(Ts.begin(), Ts.end());
    if (Tmax > kCriticalTMax) throw RangeError("zeta_moment_scan: T beyond 1e5");
    const auto npanels = static_cast<std::size_t>(std::ceil(Tmax));
    std::vector<double> integral(npanels), peak(npanels);
    parallel_blocks(npanels, [&](std::size_t k) {
        double mx = 0.0;
        auto f = [&mx](double t) {
            const double a = std::abs(zeta_critical(t));
            mx = std::max(mx, a);
            return a * a * a * a;
        };
        integral[k] = integrate_adaptive(f, static_cast<double>(k), static_cast<double>(k + 1), 1e-9).value;
        peak[k] = mx;
    });

    std::vector<ZetaMomentRow> rows;
    for (double T : Ts) {
        ZetaMomentRow row;
        row.T = T;
        const auto end = static_cast<std::size_t>(std::llround(T));
        double c = 0.0;
        for (std::size_t k = 0; k < end; ++k) {
            const double y = integral[k] - c;
            const double s = row.fourth_moment + y;
            c = (s - row.fourth_moment) - y;
            row.fourth_moment = s;
            row.max_abs = std::max(row.max_abs, peak[k]);
        }
        const double L = std::log(T);
        row.fourth_ratio = row.fourth_moment / (T * L * L * L * L);
        row.subconvex_ratio = row.max_abs / (std::pow(T, 1.0 / 6.0) * L * L);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sqfvar
