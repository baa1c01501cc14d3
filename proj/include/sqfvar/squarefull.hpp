// squarefull.hpp
// Squarefull (powerful) numbers as their unique a^2 b^3 representation with
// b squarefree, and range enumeration built on the squarefree sieve.

#pragma once
#include <compare>
#include <string>
#include <vector>

#include "sqfvar/int_roots.hpp"

namespace sqfvar {

struct SquarefullRep {
    u64 a = 1;
    u64 b = 1;  // squarefree
    u64 n = 1;  // a^2 b^3

    friend bool operator==(const SquarefullRep&, const SquarefullRep&) = default;
};

// Every squarefull n in [lo, hi], sorted by n. Requires 1 <= lo <= hi < 2^63.
std::vector<SquarefullRep> enumerate_squarefull(u64 lo, u64 hi);

// Enumeration cache on disk. CSV: one header line "# lo=<lo> hi=<hi> version=1"
// followed by "a,b,n" rows. Binary: a header record (lo, hi, version) then one
// record per rep, each record 3 x 8-byte little-endian unsigned.
enum class CacheFormat { csv, binary };

inline constexpr u64 kCacheVersion = 1;

struct EnumerationCache {
    u64 lo = 1;
    u64 hi = 0;
    std::vector<SquarefullRep> reps;

    bool covers(u64 want_lo, u64 want_hi) const { return lo <= want_lo && want_hi <= hi; }
    // The reps restricted to [want_lo, want_hi].
    std::vector<SquarefullRep> slice(u64 want_lo, u64 want_hi) const;
};

void write_cache(const std::string& path, const EnumerationCache& cache, CacheFormat fmt);
// Format is detected from the first bytes. Throws std::runtime_error on I/O
// or parse failure.
EnumerationCache read_cache(const std::string& path);

}  // namespace sqfvar
