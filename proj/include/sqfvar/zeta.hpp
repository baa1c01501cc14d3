// zeta.hpp
// Riemann zeta by Euler-Maclaurin summation, for real arguments and on the
// critical line.

#pragma once
#include <complex>

namespace sqfvar {

struct ZetaOptions {
    // Terms summed directly before the Euler-Maclaurin tail. Kept small for
    // real s: for s < 1 a long direct sum cancels catastrophically.
    int direct_terms = 64;
    int bernoulli_terms = 8;  // at most 12
};

// zeta(s) for real s in [-2, 10], s != 1; absolute error <= 1e-12.
// Throws RangeError at the pole or outside the domain.
double zeta_real(double s, const ZetaOptions& opts = {});

// zeta(sigma + i t) with an explicit direct-term count. No domain checks.
std::complex<double> zeta_em(double sigma, double t, int direct_terms, int bernoulli_terms);

// The Euler-Maclaurin remainder past N direct terms:
// N^{1-s}/(s-1) + N^{-s}/2 + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}.
std::complex<double> zeta_em_tail(double sigma, double t, int direct_terms, int bernoulli_terms);

// Direct-term count used by zeta_critical at height t.
int critical_terms(double t);

}  // namespace sqfvar
