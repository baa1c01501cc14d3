#include "sqfvar/int_roots.hpp"

#include <cmath>

namespace sqfvar {

u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    // The double estimate is within a couple of units; correct exactly.
    while (static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 icbrt(u64 n) {
    if (n < 2) return n;
    u64 r = static_cast<u64>(std::cbrt(static_cast<double>(n)));
    auto cube = [](u64 v) { return static_cast<u128>(v) * v * v; };
    while (cube(r) > n) --r;
    while (cube(r + 1) <= n) ++r;
    return r;
}

u64 isqrt_ceil(u64 n) {
    u64 r = isqrt(n);
    return static_cast<u128>(r) * r == n ? r : r + 1;
}

bool pow2x3_le(u64 a, u64 b, u64 limit, u64& out) {
    u128 b3 = static_cast<u128>(b) * b * b;
    if (b3 > limit) return false;
    u128 a2 = static_cast<u128>(a) * a;
    if (a2 > limit) return false;
    u128 n = a2 * b3;  // both factors <= 2^64, product fits in 128 bits
    if (n > limit) return false;
    out = static_cast<u64>(n);
    return true;
}

const char* to_chars_u128(u128 v, char (&buf)[40]) {
    char* p = &buf[39];
    *p = '\0';
    do {
        *--p = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    } while (v != 0);
    return p;
}

}  // namespace sqfvar
