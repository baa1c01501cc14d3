#include "sqfvar/squarefree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sqfvar/errors.hpp"

namespace sqfvar {

u64 SquarefreeTable::count() const {
    return std::accumulate(flags_.begin(), flags_.end(), u64{0});
}

std::vector<u64> primes_upto(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<std::uint8_t> composite(limit + 1, 0);
    for (u64 p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (u64 m = p * p; m <= limit; m += p) composite[m] = 1;
    }
    return primes;
}

SquarefreeTable squarefree_sieve(u64 lo, u64 hi, const SieveOptions& opts) {
    if (lo == 0 || lo > hi)
        throw ConfigError("squarefree_sieve: need 1 <= lo <= hi");
    if (hi >= kExactLimit)
        throw ConfigError("squarefree_sieve: hi exceeds 2^63");
    const u64 len = hi - lo + 1;
    if (len > opts.max_entries)
        throw ConfigError("squarefree_sieve: range of " + std::to_string(len) +
                          " entries exceeds the memory budget of " +
                          std::to_string(opts.max_entries));
    const u64 seg = std::max<u64>(opts.segment_size, 1);

    const std::vector<u64> primes = primes_upto(isqrt(hi));
    std::vector<std::uint8_t> flags(len, 1);

    for (u64 s = lo; s <= hi;) {
        const u64 e = (hi - s < seg - 1) ? hi : s + seg - 1;
        std::uint8_t* out = flags.data() + (s - lo);
        for (u64 p : primes) {
            const u64 sq = p * p;
            if (sq > e) break;
            u64 first = (s + sq - 1) / sq * sq;
            for (u64 m = first; m <= e; m += sq) out[m - s] = 0;
        }
        if (e == hi) break;
        s = e + 1;
    }
    return SquarefreeTable(lo, hi, std::move(flags));
}

}  // namespace sqfvar
