#include "sqfvar/squarefull.hpp"

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sqfvar/errors.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/squarefree.hpp"

namespace sqfvar {

std::vector<SquarefullRep> enumerate_squarefull(u64 lo, u64 hi) {
    if (lo == 0 || lo > hi) throw ConfigError("enumerate_squarefull: need 1 <= lo <= hi");
    if (hi >= kExactLimit) throw ConfigError("enumerate_squarefull: hi exceeds 2^63");

    const u64 bmax = icbrt(hi);
    const SquarefreeTable sf = squarefree_sieve(1, bmax);

    // b-blocks are fixed; the final sort makes the result independent of
    // how they were scheduled.
    constexpr u64 kBlock = 256;
    const std::size_t nblocks = (bmax + kBlock - 1) / kBlock;
    std::vector<std::vector<SquarefullRep>> parts(nblocks);
    parallel_blocks(nblocks, [&](std::size_t blk) {
        const u64 b0 = 1 + blk * kBlock;
        const u64 b1 = std::min(bmax, b0 + kBlock - 1);
        auto& out = parts[blk];
        for (u64 b = b0; b <= b1; ++b) {
            if (!sf.is_squarefree(b)) continue;
            const u64 b3 = b * b * b;
            const u64 amin = isqrt((lo - 1) / b3) + 1;
            const u64 amax = isqrt(hi / b3);
            for (u64 a = amin; a <= amax; ++a) {
                u64 n = 0;
                if (!pow2x3_le(a, b, hi, n) || n < lo)
                    throw std::logic_error("enumerate_squarefull: boundary check failed");
                out.push_back({a, b, n});
            }
        }
    });

    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<SquarefullRep> reps;
    reps.reserve(total);
    for (auto& p : parts) reps.insert(reps.end(), p.begin(), p.end());
    std::sort(reps.begin(), reps.end(),
              [](const SquarefullRep& x, const SquarefullRep& y) { return x.n < y.n; });
    return reps;
}

std::vector<SquarefullRep> EnumerationCache::slice(u64 want_lo, u64 want_hi) const {
    auto by_n = [](const SquarefullRep& r, u64 v) { return r.n < v; };
    auto first = std::lower_bound(reps.begin(), reps.end(), want_lo, by_n);
    auto last = std::lower_bound(first, reps.end(), want_hi, by_n);
    if (last != reps.end() && last->n == want_hi) ++last;
    return {first, last};
}

namespace {

void put_le(std::ostream& os, u64 v) {
    std::array<unsigned char, 8> b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}

bool get_le(std::istream& is, u64& v) {
    std::array<unsigned char, 8> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 8)) return false;
    v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return true;
}

}  // namespace

void write_cache(const std::string& path, const EnumerationCache& cache, CacheFormat fmt) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open cache for writing: " + path);
    if (fmt == CacheFormat::csv) {
        os << "# lo=" << cache.lo << " hi=" << cache.hi << " version=" << kCacheVersion << '\n';
        for (const auto& r : cache.reps) os << r.a << ',' << r.b << ',' << r.n << '\n';
    } else {
        put_le(os, cache.lo);
        put_le(os, cache.hi);
        put_le(os, kCacheVersion);
        for (const auto& r : cache.reps) {
            put_le(os, r.a);
            put_le(os, r.b);
            put_le(os, r.n);
        }
    }
    if (!os.flush()) throw std::runtime_error("write failed: " + path);
}

EnumerationCache read_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open cache: " + path);
    EnumerationCache cache;

    char magic[5] = {};
    is.read(magic, 5);
    const bool is_csv = is.gcount() == 5 && std::memcmp(magic, "# lo=", 5) == 0;
    is.clear();
    is.seekg(0);

    if (is_csv) {
        std::string line;
        std::getline(is, line);
        u64 version = 0;
        if (std::sscanf(line.c_str(), "# lo=%" SCNu64 " hi=%" SCNu64 " version=%" SCNu64,
                        &cache.lo, &cache.hi, &version) != 3)
            throw std::runtime_error("malformed cache header: " + path);
        if (version != kCacheVersion) throw std::runtime_error("unsupported cache version: " + path);
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            SquarefullRep r;
            if (std::sscanf(line.c_str(), "%" SCNu64 ",%" SCNu64 ",%" SCNu64, &r.a, &r.b, &r.n) != 3)
                throw std::runtime_error("malformed cache row in " + path + ": " + line);
            cache.reps.push_back(r);
        }
    } else {
        u64 version = 0;
        if (!get_le(is, cache.lo) || !get_le(is, cache.hi) || !get_le(is, version))
            throw std::runtime_error("truncated cache header: " + path);
        if (version != kCacheVersion) throw std::runtime_error("unsupported cache version: " + path);
        SquarefullRep r;
        while (get_le(is, r.a)) {
            if (!get_le(is, r.b) || !get_le(is, r.n))
                throw std::runtime_error("truncated cache record: " + path);
            cache.reps.push_back(r);
        }
    }

    for (std::size_t i = 0; i < cache.reps.size(); ++i) {
        const auto& r = cache.reps[i];
        u64 n = 0;
        if (!pow2x3_le(r.a, r.b, kExactLimit, n) || n != r.n || r.n < cache.lo || r.n > cache.hi ||
            (i > 0 && cache.reps[i - 1].n >= r.n))
            throw std::runtime_error("inconsistent cache record in " + path);
    }
    return cache;
}

}  // namespace sqfvar
