// rational.hpp
// Positive rational interval parameter H = num/den, with exact sign tests for
// the shifted-square boundary (sqrt(m) - H)^2 versus an integer.

#pragma once
#include <string>

#include "sqfvar/int_roots.hpp"

namespace sqfvar {

class Rational {
public:
    Rational() = default;
    // Reduces to lowest terms. Throws ConfigError unless num > 0, den > 0,
    // and num * den < 2^31 (the bound that keeps the boundary tests in 128 bits).
    Rational(i64 num, i64 den);

    // Accepts "7", "32.5", "65/2".
    static Rational parse(const std::string& text);

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    long double value_ld() const { return static_cast<long double>(num_) / den_; }
    bool is_integer() const { return den_ == 1; }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    i64 num_ = 1;
    i64 den_ = 1;
};

// Sign of (sqrt(m) - H)^2 - n, for m with sqrt(m) >= H. Exact.
int cmp_shifted_square(u64 m, u64 n, const Rational& H);

// n <= (sqrt(x) + H)^2, decided exactly.
bool within_upper(u64 n, u64 x, const Rational& H);

// floor((sqrt(x) + H)^2), exact. Throws ConfigError past 2^63.
u64 upper_end(u64 x, const Rational& H);

}  // namespace sqfvar
