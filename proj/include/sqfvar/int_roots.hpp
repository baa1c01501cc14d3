// int_roots.hpp
// Exact integer square and cube roots on the full 64-bit range.
//
// A floating-point estimate seeds each root; the answer is then fixed by
// exact 128-bit comparisons, so the result never depends on rounding.

#pragma once
#include <cstdint>

namespace sqfvar {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Largest value any exact quantity in the toolkit may take.
inline constexpr u64 kExactLimit = u64{1} << 63;

// r with r*r <= n < (r+1)*(r+1)
u64 isqrt(u64 n);

// r with r*r*r <= n < (r+1)*(r+1)*(r+1)
u64 icbrt(u64 n);

// Smallest r with r*r >= n.
u64 isqrt_ceil(u64 n);

// a*a*b*b*b, or nullopt-style sentinel (returns false) when it exceeds
// `limit`. Intermediates are 128-bit so nothing wraps.
bool pow2x3_le(u64 a, u64 b, u64 limit, u64& out);

// 128-bit decimal rendering, used by diagnostics and tests.
const char* to_chars_u128(u128 v, char (&buf)[40]);

}  // namespace sqfvar
