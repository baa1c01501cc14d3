#include "sqfvar/experiment.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <stdexcept>

#include "sqfvar/errors.hpp"

namespace sqfvar {

using nlohmann::json;

CsvTable variance_table(std::span<const VarianceReport> reports) {
    CsvTable t(kVarianceColumns);
    for (const auto& r : reports)
        t.add_row({std::to_string(r.X), format_number(r.H.value()), format_number(r.total),
                   format_number(r.J1), format_number(r.J2), format_number(r.I2),
                   format_number(r.predicted), format_number(r.ratio), std::to_string(r.event_count)});
    return t;
}

json report_json(const VarianceReport& r) {
    return {{"X", r.X},
            {"H", r.H.str()},
            {"eps", round12(r.eps)},
            {"lam", round12(r.lam)},
            {"total", round12(r.total)},
            {"total_full_mean", round12(r.total_full_mean)},
            {"I1", round12(r.I1)},
            {"I2", round12(r.I2)},
            {"J1", round12(r.J1)},
            {"J2", round12(r.J2)},
            {"cross_I", round12(r.cross_I)},
            {"cross_J", round12(r.cross_J)},
            {"predicted", round12(r.predicted)},
            {"ratio", round12(r.ratio)},
            {"mean_truncated", round12(r.mean_truncated)},
            {"mean_full", round12(r.mean_full)},
            {"b_small_cut", round12(r.b_small_cut)},
            {"b_large_cut", round12(r.b_large_cut)},
            {"bmax", r.bmax},
            {"degenerate_split", r.degenerate_split},
            {"event_count", r.event_count}};
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(x.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

VarianceGrid run_variance_grid(u64 X, std::span<const Rational> H_grid, double eps, double lam,
                               const GridOptions& opts) {
    if (H_grid.empty()) throw ConfigError("H grid is empty");
    VarianceGrid grid;
    grid.X = X;
    grid.eps = eps;
    grid.lam = lam;

    const double lo = std::pow(static_cast<double>(X), 0.01);
    const double hi = std::pow(static_cast<double>(X), 0.25);
    std::vector<Rational> admitted;
    for (const auto& H : H_grid) {
        if (H.value() > lo && H.value() < hi)
            admitted.push_back(H);
        else
            grid.warnings.push_back("H = " + H.str() + " outside (X^0.01, X^0.25) = (" +
                                    format_number(lo) + ", " + format_number(hi) + "); skipped");
    }
    if (admitted.empty()) return grid;

    Rational hmax = admitted.front();
    for (const auto& H : admitted)
        if (H.value() > hmax.value()) hmax = H;
    ExperimentConfig probe{X, hmax, eps, lam};
    probe.validate();
    const u64 need_lo = X + 1;
    const u64 need_hi = upper_end(2 * X, hmax);
    grid.cache_lo = need_lo;
    grid.cache_hi = need_hi;

    EnumerationCache cache;
    if (!opts.cache_path.empty() && std::filesystem::exists(opts.cache_path)) {
        cache = read_cache(opts.cache_path);
        grid.cache_hit = cache.covers(need_lo, need_hi);
    }
    if (!grid.cache_hit) {
        cache.lo = need_lo;
        cache.hi = need_hi;
        cache.reps = enumerate_squarefull(need_lo, need_hi);
        if (!opts.cache_path.empty()) write_cache(opts.cache_path, cache, opts.cache_format);
    }

    for (const auto& H : admitted) {
        const ExperimentConfig cfg{X, H, eps, lam};
        grid.reports.push_back(variance_report(cfg, make_window(cfg, cache.reps)));
    }
    if (grid.reports.size() >= 2) {
        std::vector<double> hs, vs;
        for (const auto& r : grid.reports) {
            hs.push_back(r.H.value());
            vs.push_back(r.total);
        }
        grid.slope = log_log_slope(hs, vs);
    }
    return grid;
}

std::vector<DiagonalRow> run_diagonal_grid(std::span<const double> H_grid, double eps) {
    if (H_grid.empty()) throw ConfigError("H grid is empty");
    std::vector<DiagonalRow> rows;
    const double cinf = c_infinity();
    for (double H : H_grid) {
        const DiagonalResult d = diagonal_sum({H, eps});
        DiagonalRow row;
        row.H = H;
        row.value = d.value;
        row.predicted = cinf * std::pow(H, 2.0 / 3.0);
        row.ratio = d.value / row.predicted;
        row.deviation = std::fabs(row.ratio - 1.0);
        row.envelope = std::pow(H, -eps / 6.0);
        row.integer_H = d.integer_H;
        row.discard_bound = d.discard_bound;
        rows.push_back(row);
    }
    return rows;
}

CsvTable diagonal_table(std::span<const DiagonalRow> rows) {
    CsvTable t(kDiagonalColumns);
    for (const auto& r : rows)
        t.add_row({format_number(r.H), format_number(r.value), format_number(r.predicted),
                   format_number(r.ratio), format_number(r.deviation), format_number(r.envelope),
                   r.integer_H ? "1" : "0"});
    return t;
}

void emit_plotdata(std::span<const VarianceReport> reports, std::ostream& os) {
    if (reports.empty()) throw std::invalid_argument("emit_plotdata: no results");
    CsvTable t(kPlotColumns);
    for (const auto& r : reports)
        t.add_row({format_number(std::log(r.H.value())), format_number(std::log(r.total)),
                   format_number(std::log(r.predicted))});
    // gnuplot reads whitespace columns and skips '#' lines.
    std::string text = "# " + t.render();
    for (auto& ch : text)
        if (ch == ',') ch = ' ';
    os << text;
    if (!os) throw std::runtime_error("emit_plotdata: write failed");
}

std::vector<Rational> offset_grid(std::span<const Rational> base, const Rational& offset) {
    std::vector<Rational> out;
    for (const auto& b : base)
        out.emplace_back(b.num() * offset.den() + offset.num() * b.den(), b.den() * offset.den());
    return out;
}

json RunManifest::to_json() const {
    return {{"config", config},       {"version", version},         {"started", started},
            {"finished", finished},   {"cache_paths", cache_paths}, {"outputs", outputs}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace sqfvar
