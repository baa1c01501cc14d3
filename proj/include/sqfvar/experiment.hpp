// experiment.hpp
// Experiment orchestration: variance sweeps over H-grids with a shared
// enumeration cache, diagonal-sum grids, report tables and plot data.

#pragma once
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqfvar/asymptotics.hpp"
#include "sqfvar/report.hpp"
#include "sqfvar/squarefull.hpp"
#include "sqfvar/sweep.hpp"

namespace sqfvar {

inline const std::vector<std::string> kVarianceColumns = {
    "X", "H", "total", "J1", "J2", "I2", "predicted", "ratio", "events"};
inline const std::vector<std::string> kDiagonalColumns = {
    "H", "value", "predicted", "ratio", "deviation", "envelope", "integer_H"};
inline const std::vector<std::string> kPlotColumns = {"log_H", "log_variance", "log_predicted"};

CsvTable variance_table(std::span<const VarianceReport> reports);
nlohmann::json report_json(const VarianceReport& r);

struct GridOptions {
    std::string cache_path;  // empty: enumerate in memory
    CacheFormat cache_format = CacheFormat::binary;
};

struct VarianceGrid {
    u64 X = 0;
    double eps = 0.0;
    double lam = 0.0;
    std::vector<VarianceReport> reports;
    std::vector<std::string> warnings;  // skipped grid entries
    std::optional<double> slope;        // log-log slope of total vs H; needs >= 2 reports
    bool cache_hit = false;
    u64 cache_lo = 0;
    u64 cache_hi = 0;
};

// H outside (X^{0.01}, X^{0.25}) is skipped with a warning. Throws
// ConfigError on an empty grid and std::runtime_error on cache I/O failure.
VarianceGrid run_variance_grid(u64 X, std::span<const Rational> H_grid, double eps, double lam,
                               const GridOptions& opts = {});

// Least-squares slope of log y against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

struct DiagonalRow {
    double H = 0.0;
    double value = 0.0;
    double predicted = 0.0;  // c_inf H^{2/3}
    double ratio = 0.0;
    double deviation = 0.0;  // |ratio - 1|
    double envelope = 0.0;   // H^{-eps/6}
    bool integer_H = false;  // sinc-zero degeneracy
    double discard_bound = 0.0;
};

std::vector<DiagonalRow> run_diagonal_grid(std::span<const double> H_grid, double eps);
CsvTable diagonal_table(std::span<const DiagonalRow> rows);

// gnuplot-ready columns log H, log total, log predicted. Throws
// std::invalid_argument on empty input and std::runtime_error when the
// stream fails.
void emit_plotdata(std::span<const VarianceReport> reports, std::ostream& os);

// Grid H values: base + offset for each base.
std::vector<Rational> offset_grid(std::span<const Rational> base, const Rational& offset);

struct RunManifest {
    nlohmann::json config;
    std::string version = SQFVAR_VERSION;
    std::string started;
    std::string finished;
    std::vector<std::string> cache_paths;
    std::vector<std::string> outputs;

    nlohmann::json to_json() const;
};

std::string utc_timestamp();

}  // namespace sqfvar
