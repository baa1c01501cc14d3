#include "sqfvar/zeta.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sqfvar/errors.hpp"

namespace sqfvar {

namespace {

// B_{2k} / (2k)! for k = 1..12.
const std::array<long double, 12>& bernoulli_coeffs() {
    static const std::array<long double, 12> c = [] {
        const long double num[12] = {1.0L,      -1.0L,       1.0L,   -1.0L,
                                     5.0L,      -691.0L,     7.0L,   -3617.0L,
                                     43867.0L,  -174611.0L,  854513.0L, -236364091.0L};
        const long double den[12] = {6.0L, 30.0L, 42.0L,  30.0L,  66.0L,  2730.0L,
                                     6.0L, 510.0L, 798.0L, 330.0L, 138.0L, 2730.0L};
        std::array<long double, 12> out{};
        long double fact = 1.0L;
        for (int k = 1; k <= 12; ++k) {
            fact *= static_cast<long double>(2 * k - 1) * (2 * k);
            out[k - 1] = num[k - 1] / den[k - 1] / fact;
        }
        return out;
    }();
    return c;
}

}  // namespace

double zeta_real(double s, const ZetaOptions& opts) {
    if (s == 1.0) throw RangeError("zeta_real: pole at s = 1");
    if (!(s >= -2.0 && s <= 10.0)) throw RangeError("zeta_real: s outside [-2, 10]");
    const int N = opts.direct_terms;
    const int m = std::min(opts.bernoulli_terms, 12);
    const long double ls = s;

    long double sum = 0.0L;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -ls);
    const long double LN = N;
    sum += std::pow(LN, 1.0L - ls) / (ls - 1.0L) + 0.5L * std::pow(LN, -ls);

    // Correction k: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    long double rising = ls;
    long double npow = std::pow(LN, -ls - 1.0L);
    const auto& bc = bernoulli_coeffs();
    for (int k = 1; k <= m; ++k) {
        sum += bc[k - 1] * rising * npow;
        rising *= (ls + 2 * k - 1) * (ls + 2 * k);
        npow /= LN * LN;
    }
    return static_cast<double>(sum);
}

namespace {

std::complex<long double> em_tail(std::complex<long double> s, int N, int m) {
    using cld = std::complex<long double>;
    m = std::min(m, 12);
    const long double lnN = std::log(static_cast<long double>(N));
    const cld Ns = std::exp(-s * lnN);  // N^{-s}
    cld sum = Ns * static_cast<long double>(N) / (s - 1.0L) + 0.5L * Ns;
    cld rising = s;
    cld npow = Ns / static_cast<long double>(N);
    const auto& bc = bernoulli_coeffs();
    const long double N2 = static_cast<long double>(N) * N;
    for (int k = 1; k <= m; ++k) {
        sum += bc[k - 1] * rising * npow;
        rising *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
        npow /= N2;
    }
    return sum;
}

}  // namespace

std::complex<double> zeta_em_tail(double sigma, double t, int direct_terms, int bernoulli_terms) {
    const auto v = em_tail({sigma, t}, direct_terms, bernoulli_terms);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

std::complex<double> zeta_em(double sigma, double t, int direct_terms, int bernoulli_terms) {
    const long double lt = t;
    // n^{-s} = n^{-sigma} exp(-i t log n)
    long double re = 0.0L, im = 0.0L;
    for (int n = direct_terms - 1; n >= 1; --n) {
        const long double ln = std::log(static_cast<long double>(n));
        const long double mag = std::exp(-sigma * ln);
        const long double ph = -lt * ln;
        re += mag * std::cos(ph);
        im += mag * std::sin(ph);
    }
    const auto v = std::complex<long double>(re, im) +
                   em_tail({static_cast<long double>(sigma), lt}, direct_terms, bernoulli_terms);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

int critical_terms(double t) { return static_cast<int>(std::fabs(t) / 2.0) + 32; }

}  // namespace sqfvar
