#include "sqfvar/counting.hpp"

#include <cmath>
#include <vector>

#include "sqfvar/asymptotics.hpp"
#include "sqfvar/errors.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/squarefree.hpp"

namespace sqfvar {

u64 count_upto(u64 x) {
    if (x == 0) return 0;
    if (x >= kExactLimit) throw ConfigError("count_upto: x exceeds 2^63");
    const u64 bmax = icbrt(x);
    const SquarefreeTable sf = squarefree_sieve(1, bmax);
    constexpr u64 kBlock = 4096;
    const std::size_t nblocks = (bmax + kBlock - 1) / kBlock;
    std::vector<u64> partial(nblocks, 0);
    parallel_blocks(nblocks, [&](std::size_t blk) {
        const u64 b0 = 1 + blk * kBlock;
        const u64 b1 = std::min(bmax, b0 + kBlock - 1);
        u64 s = 0;
        for (u64 b = b0; b <= b1; ++b)
            if (sf.is_squarefree(b)) s += isqrt(x / (b * b * b));
        partial[blk] = s;
    });
    u64 q = 0;
    for (u64 s : partial) q += s;
    return q;
}

double bg_approx(double x) {
    const auto& z = zeta_constants();
    const long double lx = std::log(static_cast<long double>(x));
    const long double s2 = std::exp(lx / 2.0L);
    const long double s3 = std::exp(lx / 3.0L);
    return static_cast<double>(static_cast<long double>(z.theta1) * s2 +
                               static_cast<long double>(z.theta2) * s3);
}

CountResult count_with_bg(u64 x) {
    CountResult r;
    r.x = x;
    r.q = count_upto(x);
    r.bg2 = x > 0 ? bg_approx(static_cast<double>(x)) : 0.0;
    r.err = static_cast<double>(static_cast<long double>(r.q) - r.bg2);
    return r;
}

u64 interval_count(u64 x, const Rational& H) {
    if (x == 0) throw ConfigError("interval_count: need x >= 1");
    return count_upto(upper_end(x, H)) - count_upto(x);
}

}  // namespace sqfvar
