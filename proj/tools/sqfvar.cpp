// sqfvar: command-line driver for the squarefull short-interval experiments.
//
// Exit codes: 0 success, 1 a verification check failed, 2 bad configuration.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sqfvar/asymptotics.hpp"
#include "sqfvar/counting.hpp"
#include "sqfvar/errors.hpp"
#include "sqfvar/experiment.hpp"
#include "sqfvar/parallel.hpp"
#include "sqfvar/report.hpp"
#include "sqfvar/squarefull.hpp"
#include "sqfvar/sweep.hpp"
#include "sqfvar/verify.hpp"

using namespace sqfvar;
using nlohmann::json;

namespace {

struct Globals {
    std::string out;
    std::string format = "csv";
    std::string cache;
    unsigned threads = 0;
    double tolerance = 1e-8;
};

// Everything is rendered into a string first so a failed write leaves no
// half-written file behind.
void emit_to(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << std::flush;
        if (!std::cout) throw std::runtime_error("write to stdout failed");
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << text;
        if (!f.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void emit(const Globals& g, const std::string& text) { emit_to(g.out, text); }

// Schema gate: the rendered table must parse back under its fixed header.
std::string checked_csv(const CsvTable& t, const std::vector<std::string>& schema) {
    const std::string text = t.render();
    CsvTable::parse(text, schema);
    return text;
}

std::string json_text(const json& j) { return j.dump() + "\n"; }

u64 parse_u64(const std::string& s, const char* what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw ConfigError(std::string("bad ") + what + ": " + s);
    }
    if (used != s.size()) {
        // Allow 1e12-style input when it is an exact integer.
        const double d = std::stod(s);
        if (!(d >= 1.0 && d < 9.2e18) || d != std::floor(d))
            throw ConfigError(std::string("bad ") + what + ": " + s);
        v = static_cast<unsigned long long>(d);
    }
    return v;
}

CacheFormat cache_format_from(const std::string& s) {
    if (s == "csv") return CacheFormat::csv;
    if (s == "binary") return CacheFormat::binary;
    throw ConfigError("cache format must be csv or binary: " + s);
}

const std::vector<std::string> kCountColumns = {"x", "q", "bg2", "err"};
const std::vector<std::string> kConstantsKeys = {"z32", "z3", "z23", "z2", "z43",
                                                 "theta1", "theta2", "sinc_moment", "c_inf"};

json constants_json() {
    const auto& c = zeta_constants();
    return {{"z32", round12(c.z32)},       {"z3", round12(c.z3)},
            {"z23", round12(c.z23)},       {"z2", round12(c.z2)},
            {"z43", round12(c.z43)},       {"theta1", round12(c.theta1)},
            {"theta2", round12(c.theta2)}, {"sinc_moment", round12(c.sinc_moment)},
            {"c_inf", round12(c.c_inf)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counts and short-interval variance experiments for squarefull numbers"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Globals g;
    app.add_option("--out", g.out, "Output path (default stdout)");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cache", g.cache, "Enumeration cache path");
    app.add_option("--threads", g.threads, "Worker threads (default $SQFVAR_THREADS or 1)");
    app.add_option("--tolerance", g.tolerance, "Relative truncation target of diagonal sums");

    // count
    auto* count = app.add_subcommand("count", "Exact Q(x) and the Bateman-Grosswald approximation");
    std::string count_x;
    bool count_bg = false;
    count->add_option("--x", count_x, "Upper limit x")->required();
    count->add_flag("--bg", count_bg, "Include bg2 and err (always present in the row)");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Write the squarefull numbers in [lo, hi] to the cache");
    std::string en_lo, en_hi, en_cache_format = "binary";
    enumerate->add_option("--lo", en_lo)->required();
    enumerate->add_option("--hi", en_hi)->required();
    enumerate->add_option("--cache-format", en_cache_format)->check(CLI::IsMember({"csv", "binary"}));

    // variance
    auto* variance = app.add_subcommand("variance", "Exact variance of short-interval counts on [X, 2X]");
    std::string v_X, v_H;
    double v_eps = 0.005;
    double v_lam = std::nan("");
    bool v_splits = false;
    std::string v_out;
    variance->add_option("--X", v_X)->required();
    variance->add_option("--H", v_H, "Rational, e.g. 32.5 or 65/2")->required();
    variance->add_option("--eps", v_eps);
    variance->add_option("--lam", v_lam, "Default 2/9 - eps/3");
    variance->add_flag("--splits", v_splits, "Also print the I/J split table");
    variance->add_option("--out", v_out, "csv or json (shorthand for --format)")
        ->check(CLI::IsMember({"csv", "json"}));

    // diagonal
    auto* diagonal = app.add_subcommand("diagonal", "Diagonal sum against c_inf H^{2/3}");
    double d_H = 0.0, d_eps = 0.005;
    diagonal->add_option("--H", d_H)->required();
    diagonal->add_option("--eps", d_eps);

    // constants
    auto* constants = app.add_subcommand("constants", "Zeta constants as JSON");

    // verify
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::string suite;
    std::uint64_t seed = VerifyOptions{}.seed;
    verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", seed);

    // grid
    auto* grid = app.add_subcommand("grid", "Variance or diagonal sums over an H-grid");
    std::string g_X = "10000000000";
    std::vector<std::string> g_H = {"8", "16", "32", "64", "128"};
    std::string g_offset = "1/2";
    double g_eps = 0.005;
    double g_lam = std::nan("");
    bool g_diagonal = false;
    bool g_no_offset = false;
    std::string g_plot, g_manifest, g_cache_format = "binary";
    grid->add_option("--X", g_X);
    grid->add_option("--H", g_H, "Base H values")->delimiter(',');
    grid->add_option("--offset", g_offset, "Added to every base H (default 1/2)");
    grid->add_flag("--no-offset", g_no_offset);
    grid->add_option("--eps", g_eps);
    grid->add_option("--lam", g_lam);
    grid->add_flag("--diagonal", g_diagonal, "Diagonal sums instead of sweeps");
    grid->add_option("--plotdata", g_plot, "gnuplot data file");
    grid->add_option("--manifest", g_manifest, "Run manifest JSON path");
    grid->add_option("--cache-format", g_cache_format)->check(CLI::IsMember({"csv", "binary"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (g.threads > 0) set_thread_count(g.threads);

        if (*count) {
            const u64 x = parse_u64(count_x, "x");
            if (x < 1) throw ConfigError("x must be >= 1");
            const CountResult r = count_with_bg(x);
            if (g.format == "json") {
                emit(g, json_text({{"x", r.x}, {"q", r.q}, {"bg2", round12(r.bg2)}, {"err", round12(r.err)}}));
            } else {
                CsvTable t(kCountColumns);
                t.add_row({std::to_string(r.x), std::to_string(r.q), format_number(r.bg2),
                           format_number(r.err)});
                emit(g, checked_csv(t, kCountColumns));
            }
            return 0;
        }

        if (*enumerate) {
            if (g.cache.empty()) throw ConfigError("enumerate needs --cache <path>");
            const u64 lo = parse_u64(en_lo, "lo"), hi = parse_u64(en_hi, "hi");
            if (lo < 1 || lo > hi) throw ConfigError("need 1 <= lo <= hi");
            EnumerationCache c{lo, hi, enumerate_squarefull(lo, hi)};
            write_cache(g.cache, c, cache_format_from(en_cache_format));
            std::cerr << "wrote " << c.reps.size() << " squarefull numbers to " << g.cache << "\n";
            return 0;
        }

        if (*variance) {
            ExperimentConfig cfg;
            cfg.X = parse_u64(v_X, "X");
            cfg.H = Rational::parse(v_H);
            cfg.eps = v_eps;
            cfg.lam = std::isnan(v_lam) ? 2.0 / 9.0 - v_eps / 3.0 : v_lam;
            cfg.validate();
            VarianceReport r;
            if (!g.cache.empty()) {
                GridOptions opts{g.cache, CacheFormat::binary};
                const Rational H[] = {cfg.H};
                auto vg = run_variance_grid(cfg.X, H, cfg.eps, cfg.lam, opts);
                for (const auto& w : vg.warnings) std::cerr << "warning: " << w << "\n";
                if (vg.reports.empty()) throw ConfigError("H outside the admissible window");
                r = vg.reports.front();
            } else {
                r = variance_report(cfg);
            }
            const std::string fmt = v_out.empty() ? g.format : v_out;
            if (fmt == "json") {
                emit(g, json_text(report_json(r)));
            } else {
                std::string text = checked_csv(variance_table({&r, 1}), kVarianceColumns);
                if (v_splits) {
                    const std::vector<std::string> cols = {"split", "value"};
                    CsvTable s(cols);
                    for (auto [k, v] : {std::pair{"I1", r.I1}, {"I2", r.I2}, {"J1", r.J1},
                                        {"J2", r.J2}, {"cross_I", r.cross_I}, {"cross_J", r.cross_J},
                                        {"total_full_mean", r.total_full_mean}})
                        s.add_row({k, format_number(v)});
                    text += "\n" + checked_csv(s, cols);
                }
                emit(g, text);
            }
            return 0;
        }

        if (*diagonal) {
            if (!(d_H >= 1.0)) throw ConfigError("H must be >= 1");
            if (!(d_eps > 0.0)) throw ConfigError("eps must be > 0");
            const DiagonalResult d = diagonal_sum({d_H, d_eps, g.tolerance});
            const double pred = c_infinity() * std::pow(d_H, 2.0 / 3.0);
            if (d.integer_H) std::cerr << "warning: integer H, the b = 1 layer vanishes (sinc zeros)\n";
            if (g.format == "json") {
                emit(g, json_text({{"H", round12(d_H)}, {"value", round12(d.value)},
                                   {"predicted", round12(pred)}, {"ratio", round12(d.value / pred)},
                                   {"discard_bound", round12(d.discard_bound)},
                                   {"integer_H", d.integer_H}}));
            } else {
                const std::vector<std::string> cols = {"H", "value", "predicted", "ratio"};
                CsvTable t(cols);
                t.add_row({format_number(d_H), format_number(d.value), format_number(pred),
                           format_number(d.value / pred)});
                emit(g, checked_csv(t, cols));
            }
            return 0;
        }

        if (*constants) {
            const json j = constants_json();
            for (const auto& k : kConstantsKeys)
                if (!j.contains(k)) throw std::logic_error("constants schema");
            emit(g, j.dump(2) + "\n");
            return 0;
        }

        if (*verify) {
            VerifyOptions opts;
            opts.seed = seed;
            std::vector<std::string> suites = suite.empty() ? suite_names() : std::vector{suite};
            bool ok = true;
            std::string text;
            for (const auto& s : suites)
                for (const auto& r : run_suite(s, opts)) {
                    text += to_json_line(r) + "\n";
                    if (!r.pass && !r.diagnostic) ok = false;
                }
            emit(g, text);
            return ok ? 0 : 1;
        }

        if (*grid) {
            RunManifest manifest;
            manifest.started = utc_timestamp();
            std::vector<Rational> base;
            for (const auto& h : g_H) base.push_back(Rational::parse(h));
            const std::vector<Rational> Hs =
                g_no_offset ? base : offset_grid(base, Rational::parse(g_offset));
            json hs = json::array();
            for (const auto& h : Hs) hs.push_back(h.str());
            const double lam = std::isnan(g_lam) ? 2.0 / 9.0 - g_eps / 3.0 : g_lam;
            manifest.config = {{"X", g_X},       {"H_grid", hs},
                               {"eps", g_eps},   {"lam", round12(lam)},
                               {"tolerance", g.tolerance},
                               {"mode", g_diagonal ? "diagonal" : "variance"},
                               {"threads", thread_count()}};

            std::string text;
            if (g_diagonal) {
                std::vector<double> hv;
                for (const auto& h : Hs) hv.push_back(h.value());
                const auto rows = run_diagonal_grid(hv, g_eps);
                if (g.format == "json") {
                    json arr = json::array();
                    for (const auto& r : rows)
                        arr.push_back({{"H", round12(r.H)}, {"value", round12(r.value)},
                                       {"predicted", round12(r.predicted)}, {"ratio", round12(r.ratio)},
                                       {"deviation", round12(r.deviation)},
                                       {"envelope", round12(r.envelope)}, {"integer_H", r.integer_H}});
                    text = json_text(arr);
                } else {
                    text = checked_csv(diagonal_table(rows), kDiagonalColumns);
                }
            } else {
                const u64 X = parse_u64(g_X, "X");
                GridOptions opts{g.cache, cache_format_from(g_cache_format)};
                const VarianceGrid vg = run_variance_grid(X, Hs, g_eps, lam, opts);
                for (const auto& w : vg.warnings) std::cerr << "warning: " << w << "\n";
                if (vg.reports.empty()) throw ConfigError("no H in the admissible window");
                if (!g.cache.empty()) manifest.cache_paths.push_back(g.cache);
                if (g.format == "json") {
                    json arr = json::array();
                    for (const auto& r : vg.reports) arr.push_back(report_json(r));
                    json out = {{"reports", arr}};
                    out["slope"] = vg.slope ? json(round12(*vg.slope)) : json(nullptr);
                    text = json_text(out);
                } else {
                    text = checked_csv(variance_table(vg.reports), kVarianceColumns);
                    text += vg.slope ? "# slope," + format_number(*vg.slope) + "\n"
                                     : std::string("# slope,undefined\n");
                }
                if (!g_plot.empty()) {
                    std::ostringstream os;
                    emit_plotdata(vg.reports, os);
                    emit_to(g_plot, os.str());
                    manifest.outputs.push_back(g_plot);
                }
            }
            emit(g, text);
            if (!g.out.empty()) manifest.outputs.push_back(g.out);
            if (!g_manifest.empty()) {
                manifest.finished = utc_timestamp();
                emit_to(g_manifest, manifest.to_json().dump(2) + "\n");
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
