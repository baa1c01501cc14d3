// sweep.hpp
// Exact variance integrals over [X, 2X] of short-interval squarefull counts.
//
// For fixed H the count C(x) = #{n squarefull : x < n <= (sqrt(x)+H)^2} is a
// step function of x. It drops by one at x = n (n leaves through the lower
// end) and rises by one at x = (sqrt(m) - H)^2 (m enters through the upper
// end). Sorting those breakpoints turns the integral of (C(x) - mean)^2 into
// a finite sum of (segment length) * (step value)^2.

#pragma once
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqfvar/double_double.hpp"
#include "sqfvar/rational.hpp"
#include "sqfvar/squarefree.hpp"
#include "sqfvar/squarefull.hpp"

namespace sqfvar {

// Inclusive range of b; empty when lo > hi.
struct BRange {
    u64 lo = 1;
    u64 hi = 0;
    bool empty() const { return lo > hi; }
    bool contains(u64 b) const { return lo <= b && b <= hi; }
};

struct ExperimentConfig {
    u64 X = 0;
    Rational H;
    double eps = 0.005;
    double lam = 2.0 / 9.0 - 0.005 / 3.0;

    double b_small_cut() const;  // H^{2/3 + eps}
    double b_large_cut() const;  // X^{1/3} / H^{lam}
    bool split_degenerate() const { return b_small_cut() > b_large_cut(); }
    // Throws ConfigError on X < 1, eps outside (0, 0.01), lam < 0, or when
    // (sqrt(2X) + H)^2 does not fit below 2^63.
    void validate() const;
};

enum class EventKind : std::uint8_t { upper_entry, lower_exit };

struct SweepEvent {
    DD pos;        // in [X, 2X]
    int jump = 0;  // +1 upper entry, -1 lower exit
    EventKind kind = EventKind::lower_exit;
    u64 b = 0;
    u64 n = 0;  // the squarefull number behind the event
};

// Squarefull numbers in (X, (sqrt(2X) + H)^2], enumerated once and shared by
// every b-restricted sweep of one experiment.
struct SweepWindow {
    u64 X = 0;
    Rational H;
    u64 upper_at_X = 0;   // floor((sqrt(X) + H)^2)
    u64 upper_at_2X = 0;  // floor((sqrt(2X) + H)^2)
    std::vector<SquarefullRep> reps;

    u64 bmax() const { return icbrt(upper_at_2X); }
};

SweepWindow make_window(const ExperimentConfig& cfg);
// Same window cut out of a larger sorted enumeration (e.g. a cache).
SweepWindow make_window(const ExperimentConfig& cfg, const std::vector<SquarefullRep>& covering);

struct EventList {
    i64 initial = 0;  // C(X)
    std::vector<SweepEvent> events;
};

// Events of squarefull numbers with b in `range`, sorted by position with
// upper entries first on exact ties.
EventList build_events(const SweepWindow& window, BRange range);
EventList build_events(const ExperimentConfig& cfg, BRange range);

// C(2X) = C(X) + sum of jumps.
i64 final_count(const EventList& ev);

// (1/X) * integral over [X, 2X] of (C(x) - mean)^2 for every mean at once.
// Bit-identical for any thread count.
std::vector<double> sweep_variances(const EventList& ev, u64 X, std::span<const double> means);

double variance_exact(const ExperimentConfig& cfg, BRange range, double mean);

// H * sum_{b in range} mu^2(b) / b^{3/2}; `sf` must cover the range.
double restricted_mean(const Rational& H, BRange range, const SquarefreeTable& sf);

struct VarianceReport {
    u64 X = 0;
    Rational H;
    double eps = 0.0;
    double lam = 0.0;

    double total = 0.0;            // all enumerated b, truncated mean
    double total_full_mean = 0.0;  // all enumerated b, mean theta1 * H
    double I1 = 0.0;               // b <= b_large_cut
    double I2 = 0.0;               // b > b_large_cut
    double J1 = 0.0;               // b <= b_small_cut
    double J2 = 0.0;               // b_small_cut < b <= b_large_cut
    double cross_I = 0.0;          // 2 sqrt(I1 I2)
    double cross_J = 0.0;          // 2 sqrt(J1 J2)
    double predicted = 0.0;        // c_inf H^{2/3}
    double ratio = 0.0;            // total / predicted

    double mean_truncated = 0.0;
    double mean_full = 0.0;
    double b_small_cut = 0.0;
    double b_large_cut = 0.0;
    u64 bmax = 0;
    bool degenerate_split = false;  // middle range empty
    std::uint64_t event_count = 0;
};

VarianceReport variance_report(const ExperimentConfig& cfg);
VarianceReport variance_report(const ExperimentConfig& cfg, const SweepWindow& window);

}  // namespace sqfvar
