#include "sqfvar/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "sqfvar/asymptotics.hpp"
#include "sqfvar/errors.hpp"
#include "sqfvar/parallel.hpp"

namespace sqfvar {

double ExperimentConfig::b_small_cut() const { return std::pow(H.value(), 2.0 / 3.0 + eps); }

double ExperimentConfig::b_large_cut() const {
    return std::cbrt(static_cast<double>(X)) / std::pow(H.value(), lam);
}

void ExperimentConfig::validate() const {
    if (X < 1) throw ConfigError("X must be >= 1");
    if (!(eps > 0.0 && eps < 0.01)) throw ConfigError("eps must lie in (0, 0.01)");
    if (!(lam >= 0.0) || !std::isfinite(lam)) throw ConfigError("lam must be >= 0");
    if (X >= kExactLimit / 2) throw ConfigError("X too large for the exact-integer width");
    upper_end(2 * X, H);  // throws ConfigError past 2^63
}

SweepWindow make_window(const ExperimentConfig& cfg) {
    cfg.validate();
    SweepWindow w;
    w.X = cfg.X;
    w.H = cfg.H;
    w.upper_at_X = upper_end(cfg.X, cfg.H);
    w.upper_at_2X = upper_end(2 * cfg.X, cfg.H);
    w.reps = enumerate_squarefull(cfg.X + 1, w.upper_at_2X);
    return w;
}

SweepWindow make_window(const ExperimentConfig& cfg, const std::vector<SquarefullRep>& covering) {
    cfg.validate();
    SweepWindow w;
    w.X = cfg.X;
    w.H = cfg.H;
    w.upper_at_X = upper_end(cfg.X, cfg.H);
    w.upper_at_2X = upper_end(2 * cfg.X, cfg.H);
    auto by_n = [](const SquarefullRep& r, u64 v) { return r.n < v; };
    auto first = std::lower_bound(covering.begin(), covering.end(), cfg.X + 1, by_n);
    auto last = std::lower_bound(first, covering.end(), w.upper_at_2X + 1, by_n);
    w.reps.assign(first, last);
    return w;
}

namespace {

// Two events closer than this are ordered by an exact integer test.
constexpr double kNearTie = 1.0 / (1 << 20);

DD entry_position(u64 m, const Rational& H) {
    const DD root = DD::sqrt(DD::from_u64(m));
    const DD h = DD(static_cast<double>(H.num())) / DD(static_cast<double>(H.den()));
    const DD d = root - h;
    return d * d;
}

bool exact_capable(const Rational& H) {
    return static_cast<i128>(H.num()) * H.den() < (i128{1} << 31);
}

// Upper entry at (sqrt(m) - H)^2 sorts before lower exit at n, ties included.
bool entry_first(const SweepEvent& up, const SweepEvent& low, const Rational& H) {
    const double diff = (up.pos - low.pos).to_double();
    if (std::fabs(diff) > kNearTie) return diff < 0.0;
    if (!exact_capable(H))
        throw PrecisionAlarm("events at " + std::to_string(low.n) + " and entry of " +
                             std::to_string(up.n) + " are closer than 2^-20");
    return cmp_shifted_square(up.n, low.n, H) <= 0;
}

struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

EventList build_events(const SweepWindow& window, BRange range) {
    EventList out;
    if (range.empty()) return out;
    const DD lo(static_cast<double>(window.X));
    const DD hi = DD::from_u64(2 * window.X);

    std::vector<SweepEvent> exits, entries;
    for (const auto& r : window.reps) {
        if (!range.contains(r.b)) continue;
        if (r.n <= window.upper_at_X) ++out.initial;
        if (r.n <= 2 * window.X)
            exits.push_back({DD::from_u64(r.n), -1, EventKind::lower_exit, r.b, r.n});
        if (r.n > window.upper_at_X) {
            DD pos = entry_position(r.n, window.H);
            if (pos < lo) pos = lo;
            if (hi < pos) pos = hi;
            entries.push_back({pos, +1, EventKind::upper_entry, r.b, r.n});
        }
    }

    // Both families are already sorted by n, hence by position.
    out.events.reserve(exits.size() + entries.size());
    std::size_t i = 0, j = 0;
    while (i < entries.size() && j < exits.size()) {
        if (entry_first(entries[i], exits[j], window.H))
            out.events.push_back(entries[i++]);
        else
            out.events.push_back(exits[j++]);
    }
    out.events.insert(out.events.end(), entries.begin() + i, entries.end());
    out.events.insert(out.events.end(), exits.begin() + j, exits.end());
    return out;
}

EventList build_events(const ExperimentConfig& cfg, BRange range) {
    if (range.empty()) return {};
    return build_events(make_window(cfg), range);
}

i64 final_count(const EventList& ev) {
    i64 c = ev.initial;
    for (const auto& e : ev.events) c += e.jump;
    return c;
}

std::vector<double> sweep_variances(const EventList& ev, u64 X, std::span<const double> means) {
    const std::size_t nseg = ev.events.size() + 1;
    const std::size_t nm = means.size();
    constexpr std::size_t kBlock = std::size_t{1} << 15;
    const std::size_t nblocks = (nseg + kBlock - 1) / kBlock;

    // Running count at the start of each block.
    std::vector<i64> start_count(nblocks);
    {
        i64 c = ev.initial;
        for (std::size_t k = 0; k < nseg; ++k) {
            if (k % kBlock == 0) start_count[k / kBlock] = c;
            if (k < ev.events.size()) c += ev.events[k].jump;
        }
    }

    const DD x_lo(static_cast<double>(X));
    const DD x_hi = DD::from_u64(2 * X);
    std::vector<Kahan> acc(nblocks * nm);
    parallel_blocks(nblocks, [&](std::size_t blk) {
        const std::size_t k0 = blk * kBlock;
        const std::size_t k1 = std::min(nseg, k0 + kBlock);
        i64 c = start_count[blk];
        // Segment k spans [pos_{k-1}, pos_k] with pos_{-1} = X, pos_E = 2X.
        for (std::size_t k = k0; k < k1; ++k) {
            const DD& left = k == 0 ? x_lo : ev.events[k - 1].pos;
            const DD& right = k == ev.events.size() ? x_hi : ev.events[k].pos;
            const double len = (right - left).to_double();
            if (len != 0.0) {
                for (std::size_t m = 0; m < nm; ++m) {
                    const double d = static_cast<double>(c) - means[m];
                    acc[blk * nm + m].add(len * d * d);
                }
            }
            if (k < ev.events.size()) c += ev.events[k].jump;
        }
    });

    std::vector<double> out(nm);
    for (std::size_t m = 0; m < nm; ++m) {
        Kahan total;
        for (std::size_t blk = 0; blk < nblocks; ++blk) total.add(acc[blk * nm + m].sum);
        out[m] = total.sum / static_cast<double>(X);
    }
    return out;
}

double variance_exact(const ExperimentConfig& cfg, BRange range, double mean) {
    const double means[1] = {mean};
    return sweep_variances(build_events(cfg, range), cfg.X, means)[0];
}

double restricted_mean(const Rational& H, BRange range, const SquarefreeTable& sf) {
    if (range.empty()) return 0.0;
    // Smallest terms first.
    long double s = 0.0L;
    for (u64 b = range.hi; b >= range.lo; --b) {
        if (sf.is_squarefree(b)) s += 1.0L / (static_cast<long double>(b) * std::sqrt(static_cast<long double>(b)));
        if (b == range.lo) break;
    }
    return static_cast<double>(H.value_ld() * s);
}

VarianceReport variance_report(const ExperimentConfig& cfg) {
    return variance_report(cfg, make_window(cfg));
}

VarianceReport variance_report(const ExperimentConfig& cfg, const SweepWindow& window) {
    cfg.validate();
    VarianceReport r;
    r.X = cfg.X;
    r.H = cfg.H;
    r.eps = cfg.eps;
    r.lam = cfg.lam;
    r.b_small_cut = cfg.b_small_cut();
    r.b_large_cut = cfg.b_large_cut();
    r.degenerate_split = cfg.split_degenerate();
    r.bmax = window.bmax();

    const SquarefreeTable sf = squarefree_sieve(1, std::max<u64>(r.bmax, 1));
    auto floor_cut = [&](double c) -> u64 {
        if (!(c >= 1.0)) return 0;
        return std::min<u64>(r.bmax, static_cast<u64>(std::floor(c)));
    };
    const u64 cs = floor_cut(r.b_small_cut);
    const u64 cl = floor_cut(r.b_large_cut);

    const BRange all{1, r.bmax};
    const BRange j1{1, std::min(cs, cl)};
    const BRange j2{cs + 1, cl};
    const BRange i1{1, cl};
    const BRange i2{cl + 1, r.bmax};

    r.mean_truncated = restricted_mean(cfg.H, all, sf);
    r.mean_full = zeta_constants().theta1 * cfg.H.value();

    {
        const EventList ev = build_events(window, all);
        r.event_count = ev.events.size();
        const double means[2] = {r.mean_truncated, r.mean_full};
        const auto v = sweep_variances(ev, cfg.X, means);
        r.total = v[0];
        r.total_full_mean = v[1];
    }
    auto split = [&](BRange range) {
        const double mean[1] = {restricted_mean(cfg.H, range, sf)};
        return sweep_variances(build_events(window, range), cfg.X, mean)[0];
    };
    r.J1 = split(j1);
    r.J2 = split(j2);
    r.I1 = split(i1);
    r.I2 = split(i2);
    r.cross_I = 2.0 * std::sqrt(r.I1 * r.I2);
    r.cross_J = 2.0 * std::sqrt(r.J1 * r.J2);
    r.predicted = c_infinity() * std::pow(cfg.H.value(), 2.0 / 3.0);
    r.ratio = r.total / r.predicted;
    return r;
}

}  // namespace sqfvar
