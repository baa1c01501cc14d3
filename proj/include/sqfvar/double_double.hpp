// double_double.hpp
// Unevaluated sum of two doubles (~106-bit mantissa). Only the handful of
// operations the sweep needs for event positions near 2^63.

#pragma once
#include <cmath>
#include <cstdint>

namespace sqfvar {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    static DD from_u64(std::uint64_t v) {
        const double h = static_cast<double>(v & ~std::uint64_t{0x7FF});
        const double l = static_cast<double>(v & std::uint64_t{0x7FF});
        return quick_two_sum(h, l);
    }

    double to_double() const { return hi + lo; }

    static DD two_sum(double a, double b) {
        const double s = a + b;
        const double bb = s - a;
        return {s, (a - (s - bb)) + (b - bb)};
    }
    static DD quick_two_sum(double a, double b) {
        const double s = a + b;
        return {s, b - (s - a)};
    }
    static DD two_prod(double a, double b) {
        const double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    friend DD operator+(const DD& a, const DD& b) {
        DD s = two_sum(a.hi, b.hi);
        DD t = two_sum(a.lo, b.lo);
        s.lo += t.hi;
        s = quick_two_sum(s.hi, s.lo);
        s.lo += t.lo;
        return quick_two_sum(s.hi, s.lo);
    }
    friend DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
    friend DD operator-(const DD& a, const DD& b) { return a + (-b); }
    friend DD operator*(const DD& a, const DD& b) {
        DD p = two_prod(a.hi, b.hi);
        p.lo += a.hi * b.lo + a.lo * b.hi;
        return quick_two_sum(p.hi, p.lo);
    }
    friend DD operator/(const DD& a, const DD& b) {
        const double q1 = a.hi / b.hi;
        DD r = a - b * DD(q1);
        const double q2 = r.hi / b.hi;
        r = r - b * DD(q2);
        const double q3 = r.hi / b.hi;
        return DD(quick_two_sum(q1, q2)) + DD(q3);
    }
    friend bool operator<(const DD& a, const DD& b) {
        return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
    }

    // One Newton step from the double estimate doubles the precision.
    static DD sqrt(const DD& a) {
        if (a.hi <= 0.0) return {};
        const double x = std::sqrt(a.hi);
        const DD sq = two_prod(x, x);
        const DD resid = a - sq;
        return quick_two_sum(x, resid.hi / (2.0 * x));
    }
};

}  // namespace sqfvar
