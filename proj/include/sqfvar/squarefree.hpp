// squarefree.hpp
// Segmented sieve for the squarefree indicator mu^2(b) on a range [lo, hi].

#pragma once
#include <cstdint>
#include <vector>

#include "sqfvar/int_roots.hpp"

namespace sqfvar {

struct SieveOptions {
    u64 segment_size = u64{1} << 20;
    // Upper bound on hi - lo + 1; larger requests fail instead of allocating.
    u64 max_entries = u64{1} << 32;
};

class SquarefreeTable {
public:
    SquarefreeTable() = default;
    SquarefreeTable(u64 lo, u64 hi, std::vector<std::uint8_t> flags)
        : lo_(lo), hi_(hi), flags_(std::move(flags)) {}

    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    bool empty() const { return flags_.empty(); }

    // Precondition: lo() <= b <= hi().
    bool is_squarefree(u64 b) const { return flags_[b - lo_] != 0; }

    u64 count() const;
    const std::vector<std::uint8_t>& flags() const { return flags_; }

private:
    u64 lo_ = 1;
    u64 hi_ = 0;
    std::vector<std::uint8_t> flags_;
};

// All primes p <= limit (plain Eratosthenes).
std::vector<u64> primes_upto(u64 limit);

// mu^2(b) for b in [lo, hi]. Throws ConfigError when lo == 0, lo > hi, or
// the range exceeds opts.max_entries.
SquarefreeTable squarefree_sieve(u64 lo, u64 hi, const SieveOptions& opts = {});

}  // namespace sqfvar
