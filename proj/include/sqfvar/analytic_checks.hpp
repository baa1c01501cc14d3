// analytic_checks.hpp
// Numeric checks of the lattice-point identity behind the small-b count, the
// truncated Fourier series of the sawtooth, and desk-scale mean-value,
// fourth-moment and stationary-phase statements about Dirichlet polynomials
// and zeta on the critical line.

#pragma once
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sqfvar/int_roots.hpp"
#include "sqfvar/rational.hpp"

namespace sqfvar {

using cplx = std::complex<double>;

// psi(u) = u - floor(u) - 1/2, in [-1/2, 1/2); psi(k) = -1/2 at integers.
double psi(double u);

// -sum_{n=1}^{N} sin(2 pi n u) / (pi n): the symmetric truncation of the
// Fourier series of psi. Requires N >= 1.
double psi_fourier(double u, long N);

// sup over a u-grid of |psi(u) - psi_fourier(u, N)| / min(1, 1/(N ||u||)).
double psi_fourier_envelope_constant(long N);

struct IdentityResidual {
    double lhs = 0.0;  // exact count, as a real
    double rhs = 0.0;  // mean term minus the psi differences
    double residual = 0.0;
};

// Both sides of
//   #{x < a^2 b^3 <= x + y, b <= B, mu^2(b) = 1}
//     = H sum_{b<=B} mu^2(b)/b^{3/2}
//       - sum_{b<=B} mu^2(b) [psi(sqrt((x+y)/b^3)) - psi(sqrt(x/b^3))]
// with y = 2 sqrt(x) H + H^2. The fractional parts inside psi are taken
// against exactly computed integer parts.
IdentityResidual counting_identity_check(u64 x, const Rational& H, u64 B);

struct DirichletPoly {
    std::vector<cplx> coeffs;  // coeffs[k] = a_{k+1}

    std::size_t length() const { return coeffs.size(); }
    double l2_mass() const;  // sum |a_n|^2
    void validate() const;   // N >= 1, finite coefficients
};

// D(sigma + it) = sum a_n n^{-sigma - it}.
cplx dirichlet_eval(const DirichletPoly& D, double t, double sigma = 0.0);

struct MeanValueResult {
    double integral = 0.0;    // int_0^T |D(it)|^2 dt
    double prediction = 0.0;  // T sum |a_n|^2
    double ratio = 0.0;
    double c = 0.0;           // |integral - prediction| / (N sum |a_n|^2)
    double quad_error = 0.0;
};

// Adaptive quadrature on panels of length pi / log N. Throws
// QuadratureError when the estimated error exceeds rel_tol.
MeanValueResult mean_value_check(const DirichletPoly& D, double T, double rel_tol = 1e-6);

enum class MFlavor {
    plain,       // sum_{B<b<=2B} b^{-3/4 - it}
    squarefree,  // sum_{B<b<=2B} mu^2(b) b^{-3/4 - 3it}
};

cplx m_poly_eval(u64 B, double t, MFlavor flavor = MFlavor::plain);

// t^{97/84}/B^{9/4} + B^{1/4}/t^{1/2} + log t / B^{3/4}
double m_poly_envelope(u64 B, double t);

struct MEnvelopeScan {
    u64 B = 0;
    double fitted_constant = 0.0;  // max over windows of max|M| / envelope
    double slope = 0.0;            // least-squares d log max|M| / d log t
    std::vector<double> window_t;  // window left ends
    std::vector<double> window_max;
};

// Scans t over [t_lo, t_hi] in log-spaced windows sampled every `step`.
MEnvelopeScan m_envelope_scan(u64 B, double t_lo = 1e3, double t_hi = 1e5, int windows = 20,
                              double step = 0.25);

// Level-set counts #{sampled t : |M(3/4+it)| >= level_k} on a unit-spaced
// grid; a diagnostic for the large-value statement, not a check.
std::vector<std::uint64_t> m_large_value_histogram(u64 B, double T, std::span<const double> levels);

struct ExpSumSpec {
    double t = 0.0;
    u64 B = 2;
    double u = 2.0;
    void validate() const;  // B >= 2, B <= u <= 2B, |t| >= 2
};

struct ProcessBResult {
    cplx lhs;  // sum_{B <= b <= u} e(-t log b / 2 pi)
    cplx rhs;  // e(1/8) sum_nu e(f(x_nu) - nu x_nu) / sqrt(f''(x_nu))
    double discrepancy = 0.0;
    double predicted_error = 0.0;  // log(2 + beta - alpha) + lambda2^{-1/2}
    long nu_count = 0;
    bool empty_range = false;
};

// Phase f(x) = -t log x / (2 pi) is decreasing, so the stationary points
// x_nu = -t / (2 pi nu) come from negative integers nu in
// [f'(B), f'(u)] = [-t/(2 pi B), -t/(2 pi u)]. Negative t is handled by
// conjugation.
ProcessBResult process_b_check(const ExpSumSpec& spec);

inline constexpr double kCriticalTMax = 1e5;

// zeta(1/2 + it) by Euler-Maclaurin; |t| <= 1e5, absolute error <= 1e-8.
// Throws RangeError beyond the envelope.
cplx zeta_critical(double t);

struct ZetaMomentRow {
    double T = 0.0;
    double fourth_moment = 0.0;  // int_0^T |zeta(1/2+it)|^4 dt
    double fourth_ratio = 0.0;   // fourth_moment / (T log^4 T)
    double max_abs = 0.0;        // max sampled |zeta(1/2+it)|, t <= T
    double subconvex_ratio = 0.0;  // max_abs / (T^{1/6} log^2 T)
};

// One pass over [0, max(Ts)] on unit panels; each T must be an integer.
std::vector<ZetaMomentRow> zeta_moment_scan(std::span<const double> Ts);

}  // namespace sqfvar
