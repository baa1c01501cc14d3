// counting.hpp
// Exact squarefull counts Q(x), short-interval counts over (x, (sqrt(x)+H)^2],
// and the two-term Bateman-Grosswald approximation.

#pragma once
#include "sqfvar/int_roots.hpp"
#include "sqfvar/rational.hpp"

namespace sqfvar {

struct CountResult {
    u64 x = 0;
    u64 q = 0;         // exact Q(x)
    double bg2 = 0.0;  // theta1 sqrt(x) + theta2 cbrt(x)
    double err = 0.0;  // q - bg2
};

// Q(x) = sum over squarefree b with b^3 <= x of isqrt(x / b^3).
u64 count_upto(u64 x);

// theta1 sqrt(x) + theta2 x^{1/3}; x > 0.
double bg_approx(double x);

CountResult count_with_bg(u64 x);

// #{squarefull n : x < n <= (sqrt(x) + H)^2}, boundary decided exactly.
u64 interval_count(u64 x, const Rational& H);

}  // namespace sqfvar
