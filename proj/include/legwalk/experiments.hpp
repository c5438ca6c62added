#pragma once

// Named, schema-checked experiments. Each experiment turns a parameter map into a
// set of artifacts (CSV/JSON/SVG text) and a summary; run_experiment writes them
// to an output directory together with a versioned JSON report.
//
// Written files depend only on the configuration and the prime table, so reruns
// are byte-identical. Wall time is kept in memory only, and SVG timestamps can be
// switched off.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "legwalk/errors.hpp"
#include "legwalk/gaussian.hpp"
#include "legwalk/params.hpp"
#include "legwalk/prime_cache.hpp"
#include "legwalk/svg.hpp"
#include "legwalk/walks.hpp"

namespace legwalk {

enum class ParamType { Integer, Grid, Gauss, Choice, Flag };

struct ParamSpec {
    std::string key;
    ParamType type;
    std::string default_value;
    std::vector<std::string> choices = {};
};

struct ExperimentConfig {
    std::string name;
    std::map<std::string, std::string> params;
    std::filesystem::path output_dir;  ///< empty: nothing is written
    std::set<std::string> formats{"csv", "json"};
    bool svg_timestamp = true;
    std::size_t svg_max_points = 20000;  ///< polyline decimation threshold, 0 keeps every point
};

struct Artifact {
    std::string filename;
    std::string format;  ///< csv, json or svg
    std::string content;
};

struct ExperimentReport {
    std::string name;
    std::map<std::string, std::string> params;  ///< resolved, defaults filled in
    std::vector<std::string> files;             ///< written file names, relative to output_dir
    std::vector<Artifact> artifacts;            ///< everything produced, written or not
    nlohmann::json summary;
    double wall_time_s = 0;
    i64 prime_cache_limit = 0;
    std::string prime_cache_digest;

    /// Deterministic report document (no wall time).
    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = 1;
        j["experiment"] = name;
        j["params"] = params;
        j["files"] = files;
        j["summary"] = summary;
        j["inputs"] = {{"prime_cache_limit", prime_cache_limit}, {"prime_cache_digest", prime_cache_digest}};
        return j;
    }

    /// First CSV artifact (the table a command prints when no output directory is given).
    [[nodiscard]] const Artifact* primary() const {
        for (const auto& a : artifacts)
            if (a.format == "csv") return &a;
        return artifacts.empty() ? nullptr : &artifacts.front();
    }
};

/// Resolved, typed access to an experiment's parameters.
class Params {
public:
    Params(const std::vector<ParamSpec>& schema, const std::map<std::string, std::string>& given,
           const std::string& experiment) {
        for (const auto& [k, v] : given) {
            const auto it = std::find_if(schema.begin(), schema.end(), [&](const ParamSpec& s) { return s.key == k; });
            if (it == schema.end()) throw config_error("experiment '" + experiment + "' has no parameter '" + k + "'");
        }
        for (const auto& spec : schema) {
            const auto it = given.find(spec.key);
            std::string v = it != given.end() ? it->second : spec.default_value;
            validate(spec, v, experiment);
            values_[spec.key] = v;
        }
    }

    [[nodiscard]] i64 integer(const std::string& k) const { return parse_integer(values_.at(k)); }
    [[nodiscard]] std::vector<i64> grid(const std::string& k) const { return parse_grid(values_.at(k)); }
    [[nodiscard]] GaussInt gauss(const std::string& k) const { return parse_gauss_int(values_.at(k)); }
    [[nodiscard]] const std::string& text(const std::string& k) const { return values_.at(k); }
    [[nodiscard]] bool flag(const std::string& k) const { return values_.at(k) == "true"; }
    [[nodiscard]] const std::map<std::string, std::string>& all() const { return values_; }

private:
    static void validate(const ParamSpec& spec, std::string& v, const std::string& experiment) {
        const std::string where = "experiment '" + experiment + "' parameter '" + spec.key + "'";
        try {
            switch (spec.type) {
                case ParamType::Integer: (void)parse_integer(v); break;
                case ParamType::Grid: (void)parse_grid(v); break;
                case ParamType::Gauss: (void)parse_gauss_int(v); break;
                case ParamType::Choice:
                    if (std::find(spec.choices.begin(), spec.choices.end(), v) == spec.choices.end())
                        throw config_error("'" + v + "' is not one of the allowed values");
                    break;
                case ParamType::Flag:
                    if (v == "1" || v == "yes") v = "true";
                    if (v == "0" || v == "no") v = "false";
                    if (v != "true" && v != "false") throw config_error("expected true or false, got '" + v + "'");
                    break;
            }
        } catch (const config_error& e) {
            throw config_error(where + ": " + e.what());
        }
    }

    std::map<std::string, std::string> values_;
};

/// Shared state handed to experiment bodies.
struct ExperimentContext {
    const PrimeCacheStore& store;
    std::function<void(const std::string&)> progress;
    bool svg_timestamp = true;
    std::size_t svg_max_points = 20000;
    i64 table_limit = 0;
    std::string table_digest = {};

    /// Prime table covering every n < limit; records the cache limit and digest used.
    PrimeTable table(i64 limit) {
        if (progress) progress("loading primes below " + std::to_string(limit));
        PrimeTable t = store.get(std::max<i64>(limit, 3));
        if (t.limit() > table_limit) {
            table_limit = t.limit();
            table_digest = prime_table_digest(t);
        }
        return t;
    }

    void note(const std::string& msg) const {
        if (progress) progress(msg);
    }
};

struct ExperimentOutput {
    std::vector<Artifact> artifacts;
    nlohmann::json summary = nlohmann::json::object();
};

struct ExperimentDef {
    std::string name;
    std::string description;
    std::vector<ParamSpec> schema;
    std::function<ExperimentOutput(const Params&, ExperimentContext&)> run;
};

namespace detail {

inline double round7(double v) { return std::round(v * 1e7) / 1e7; }

inline QFilter parse_filter(const std::string& s) {
    if (s == "all") return QFilter::All;
    if (s == "1mod4") return QFilter::OneMod4;
    if (s == "3mod4") return QFilter::ThreeMod4;
    throw config_error("unknown filter '" + s + "'");
}

inline Direction parse_direction(const std::string& s) {
    if (s == "qp") return Direction::QOverP;
    if (s == "pq") return Direction::POverQ;
    throw config_error("unknown direction '" + s + "'");
}

inline WalkStatistic parse_statistic(const std::string& s) {
    if (s == "qr") return WalkStatistic::QrRatio;
    if (s == "run2") return WalkStatistic::Run2;
    if (s == "run3") return WalkStatistic::Run3;
    if (s == "run4") return WalkStatistic::Run4;
    throw config_error("unknown statistic '" + s + "'");
}

inline std::optional<double> try_stat(const std::function<double()>& f) {
    try {
        return f();
    } catch (const undefined_statistic_error&) {
        return std::nullopt;
    }
}

inline nlohmann::json opt_json(std::optional<double> v) { return v ? nlohmann::json(round7(*v)) : nlohmann::json(); }

inline nlohmann::json walk_summary(const WalkSeries& w) {
    i64 plus = 0, minus = 0, zero = 0, below = 0;
    for (const auto& s : w.steps()) {
        plus += s.value == 1;
        minus += s.value == -1;
        zero += s.value == 0;
    }
    for (std::size_t t = 1; t < w.sums().size(); ++t) below += w.sums()[t] < 0;
    nlohmann::json j;
    j["description"] = w.description();
    j["steps"] = w.size();
    j["plus"] = plus;
    j["minus"] = minus;
    j["zero"] = zero;
    j["final_sum"] = w.sums().back();
    j["fraction_below_axis"] = w.size() ? round7(static_cast<double>(below) / static_cast<double>(w.size())) : 0.0;
    j["max_abs_sum_over_sqrt_t"] = w.size() ? round7(max_envelope_ratio(w)) : 0.0;
    j["qr_ratio"] = opt_json(try_stat([&] { return qr_ratio(w); }));
    for (int n : {2, 3, 4})
        j["run" + std::to_string(n) + "_ratio"] = opt_json(try_stat([&] { return consecutive_run_ratio(w, n); }));
    return j;
}

inline SvgStyle svg_style(const ExperimentContext& ctx, std::string title, bool envelope = false) {
    SvgStyle s;
    s.timestamp = ctx.svg_timestamp;
    s.title = std::move(title);
    s.envelope = envelope;
    s.max_points = ctx.svg_max_points;
    return s;
}

inline ExperimentOutput run_race(i64 m, const std::vector<i64>& grid, ExperimentContext& ctx, const std::string& stem) {
    const i64 top = *std::max_element(grid.begin(), grid.end());
    const PrimeTable t = ctx.table(top + 1);
    const RaceTally tally = race_tally(t, m, grid);
    ExperimentOutput out;
    out.artifacts.push_back({stem + ".csv", "csv", race_csv(tally)});
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : tally.rows) rows.push_back({{"x", r.x}, {"counts", r.counts}});
    out.summary = {{"modulus", m}, {"residues", tally.residues}, {"rows", rows}};
    return out;
}

inline ExperimentOutput run_walk(i64 p, i64 q_limit, QFilter f, Direction d, ExperimentContext& ctx,
                                 const std::string& stem) {
    if (p < 3 || !is_prime(p)) throw invalid_modulus_error("p must be an odd prime, got " + std::to_string(p));
    const PrimeTable t = ctx.table(std::max<i64>(q_limit, 4));
    const WalkSeries w = rational_walk(t, p, q_limit, f, d);
    ExperimentOutput out;
    out.artifacts.push_back({stem + ".csv", "csv", walk_csv(w)});
    if (w.size() > 0)
        out.artifacts.push_back({stem + ".svg", "svg", walk_svg(w, svg_style(ctx, w.description(), true))});
    out.summary = walk_summary(w);
    return out;
}

inline ExperimentOutput run_curves(const std::vector<i64>& p_set, const std::vector<i64>& checkpoints,
                                   const std::vector<std::pair<QFilter, WalkStatistic>>& variants, Direction d,
                                   ExperimentContext& ctx, const std::string& stem, bool suffix) {
    const PrimeTable t = ctx.table(checkpoints.back());
    ExperimentOutput out;
    for (auto [f, s] : variants) {
        ctx.note("averaging " + std::string(to_string(s)) + " over " + std::to_string(p_set.size()) + " moduli (" +
                 to_string(f) + ")");
        const RatioCurve c = average_ratio_curve(t, p_set, checkpoints, f, s, d);
        const std::string name = suffix ? stem + "_" + to_string(s) + "_" + to_string(f) : stem;
        out.artifacts.push_back({name + ".csv", "csv", ratio_curve_csv(c)});
        out.artifacts.push_back({name + ".svg", "svg", ratio_curve_svg(c, svg_style(ctx, name))});
        nlohmann::json pts = nlohmann::json::array();
        for (std::size_t i = 0; i < c.checkpoints.size(); ++i)
            pts.push_back({{"checkpoint", c.checkpoints[i]},
                           {"mean", std::isnan(c.mean[i]) ? nlohmann::json() : nlohmann::json(round7(c.mean[i]))},
                           {"stdev", std::isnan(c.stdev[i]) ? nlohmann::json() : nlohmann::json(round7(c.stdev[i]))},
                           {"n", c.n[i]}});
        out.summary[name] = {{"statistic", to_string(s)},
                             {"filter", to_string(f)},
                             {"moduli", p_set.size()},
                             {"skipped", c.skipped},
                             {"weighting", "equal weight per modulus"},
                             {"points", pts}};
    }
    return out;
}

inline std::vector<i64> p_set_below(ExperimentContext& ctx, i64 bound) {
    const PrimeTable t = ctx.table(std::max<i64>(bound, 4));
    return odd_primes_below(t, bound);
}

inline ExperimentOutput run_correlation(i64 p, i64 max_norm, bool include_ramified, ExperimentContext& ctx,
                                        const std::string& stem) {
    const auto [pi1, pi2] = split_pair(p);
    const PrimeTable t = ctx.table(max_norm + 1);
    const WalkSeries w1 = gaussian_walk(t, pi1, max_norm, include_ramified);
    const WalkSeries w2 = gaussian_walk(t, pi2, max_norm, include_ramified);
    const double r = pearson_correlation(w1, w2);
    ExperimentOutput out;
    out.artifacts.push_back({stem + "_pi1.csv", "csv", walk_csv(w1)});
    out.artifacts.push_back({stem + "_pi2.csv", "csv", walk_csv(w2)});
    out.artifacts.push_back({stem + "_pi1.svg", "svg", walk_svg(w1, svg_style(ctx, w1.description()))});
    out.artifacts.push_back({stem + "_pi2.svg", "svg", walk_svg(w2, svg_style(ctx, w2.description()))});
    const int twist = (p - 1) / 4 % 2 == 0 ? 1 : -1;
    out.summary = {{"p", p},
                   {"pi1", to_string(pi1)},
                   {"pi2", to_string(pi2)},
                   {"max_norm", max_norm},
                   {"include_ramified", include_ramified},
                   {"steps", w1.size()},
                   {"correlation", round7(r)},
                   {"twist_sign", twist},
                   {"walk_pi1", walk_summary(w1)},
                   {"walk_pi2", walk_summary(w2)}};
    return out;
}

inline const std::vector<std::string> kFilters{"all", "1mod4", "3mod4"};
inline const std::vector<std::string> kDirections{"qp", "pq"};
inline const std::vector<std::string> kStats{"qr", "run2", "run3", "run4"};

}  // namespace detail

/// Every registered experiment, in a fixed order.
inline const std::vector<ExperimentDef>& experiment_registry() {
    using detail::kDirections;
    using detail::kFilters;
    using detail::kStats;
    static const std::vector<ExperimentDef> defs{
        {"race", "prime counts per coprime residue class on an x-grid",
         {{"mod", ParamType::Integer, "3"}, {"grid", ParamType::Grid, "10^1..10^6"}},
         [](const Params& p, ExperimentContext& ctx) {
             return detail::run_race(p.integer("mod"), p.grid("grid"), ctx, "race");
         }},
        {"mod3-race", "the mod 3 race at powers of ten",
         {{"grid", ParamType::Grid, "10^1..10^6"}},
         [](const Params& p, ExperimentContext& ctx) { return detail::run_race(3, p.grid("grid"), ctx, "mod3-race"); }},
        {"walk", "Legendre symbol walk over rational primes q",
         {{"p", ParamType::Integer, "97"},
          {"q-limit", ParamType::Integer, "1e7"},
          {"filter", ParamType::Choice, "all", kFilters},
          {"direction", ParamType::Choice, "qp", kDirections}},
         [](const Params& p, ExperimentContext& ctx) {
             return detail::run_walk(p.integer("p"), p.integer("q-limit"), detail::parse_filter(p.text("filter")),
                                     detail::parse_direction(p.text("direction")), ctx, "walk");
         }},
        {"walk97", "the (q/97) walk over all primes q",
         {{"q-limit", ParamType::Integer, "1e7"}},
         [](const Params& p, ExperimentContext& ctx) {
             return detail::run_walk(97, p.integer("q-limit"), QFilter::All, Direction::QOverP, ctx, "walk97");
         }},
        {"mod4-split", "walks over all q, q ≡ 1 (mod 4) and q ≡ 3 (mod 4), plus averaged ratios per filter",
         {{"p", ParamType::Integer, "97"},
          {"q-limit", ParamType::Integer, "1e7"},
          {"p-below", ParamType::Integer, "1000"},
          {"checkpoints", ParamType::Grid, "10^3..10^7"}},
         [](const Params& p, ExperimentContext& ctx) {
             ExperimentOutput out;
             for (const auto& [f, tag] : {std::pair{QFilter::All, "all"}, std::pair{QFilter::OneMod4, "1mod4"},
                                          std::pair{QFilter::ThreeMod4, "3mod4"}}) {
                 auto part = detail::run_walk(p.integer("p"), p.integer("q-limit"), f, Direction::QOverP, ctx,
                                              std::string("mod4-split_walk_") + tag);
                 for (auto& a : part.artifacts) out.artifacts.push_back(std::move(a));
                 out.summary[std::string("walk_") + tag] = part.summary;
             }
             auto curves = detail::run_curves(
                 detail::p_set_below(ctx, p.integer("p-below")), p.grid("checkpoints"),
                 {{QFilter::OneMod4, WalkStatistic::QrRatio}, {QFilter::ThreeMod4, WalkStatistic::QrRatio}},
                 Direction::QOverP, ctx, "mod4-split_avg", true);
             for (auto& a : curves.artifacts) out.artifacts.push_back(std::move(a));
             out.summary["curves"] = curves.summary;
             return out;
         }},
        {"avg-ratio", "statistic averaged over (q/p) walks for every odd prime p below a bound",
         {{"p-below", ParamType::Integer, "1000"},
          {"checkpoints", ParamType::Grid, "10^3..10^7"},
          {"stat", ParamType::Choice, "qr", kStats},
          {"filter", ParamType::Choice, "all", kFilters},
          {"direction", ParamType::Choice, "qp", kDirections}},
         [](const Params& p, ExperimentContext& ctx) {
             return detail::run_curves(detail::p_set_below(ctx, p.integer("p-below")), p.grid("checkpoints"),
                                       {{detail::parse_filter(p.text("filter")), detail::parse_statistic(p.text("stat"))}},
                                       detail::parse_direction(p.text("direction")), ctx, "avg-ratio", false);
         }},
        {"consecutive", "averaged 2-, 3- and 4-run ratios",
         {{"p-below", ParamType::Integer, "1000"},
          {"checkpoints", ParamType::Grid, "10^3..10^7"},
          {"filter", ParamType::Choice, "all", kFilters}},
         [](const Params& p, ExperimentContext& ctx) {
             const QFilter f = detail::parse_filter(p.text("filter"));
             return detail::run_curves(detail::p_set_below(ctx, p.integer("p-below")), p.grid("checkpoints"),
                                       {{f, WalkStatistic::Run2}, {f, WalkStatistic::Run3}, {f, WalkStatistic::Run4}},
                                       Direction::QOverP, ctx, "consecutive", true);
         }},
        {"log-measure", "logarithmic measure of the x <= X where the leader is strictly ahead",
         {{"mod", ParamType::Integer, "4"},
          {"leader", ParamType::Integer, "3"},
          {"laggard", ParamType::Integer, "1"},
          {"X", ParamType::Integer, "1e7"}},
         [](const Params& p, ExperimentContext& ctx) {
             const i64 m = p.integer("mod"), a = p.integer("leader"), b = p.integer("laggard"), X = p.integer("X");
             const PrimeTable t = ctx.table(X + 1);
             const double v = logarithmic_measure(t, m, a, b, X);
             ExperimentOutput out;
             out.artifacts.push_back({"log-measure.csv", "csv",
                                      "mod,leader,laggard,X,measure\n" + std::to_string(m) + "," + std::to_string(a) +
                                          "," + std::to_string(b) + "," + std::to_string(X) + "," + format_fixed(v) +
                                          "\n"});
             out.summary = {{"mod", m}, {"leader", a}, {"laggard", b}, {"X", X}, {"measure", detail::round7(v)}};
             return out;
         }},
        {"gwalk", "Gaussian Legendre symbol walk over first-quadrant Gaussian primes",
         {{"pi", ParamType::Gauss, "4+9i"},
          {"max-norm", ParamType::Integer, "1e5"},
          {"exclude-ramified", ParamType::Flag, "false"}},
         [](const Params& p, ExperimentContext& ctx) {
             const i64 max_norm = p.integer("max-norm");
             const PrimeTable t = ctx.table(max_norm + 1);
             const WalkSeries w = gaussian_walk(t, p.gauss("pi"), max_norm, !p.flag("exclude-ramified"));
             ExperimentOutput out;
             out.artifacts.push_back({"gwalk.csv", "csv", walk_csv(w)});
             out.artifacts.push_back({"gwalk.svg", "svg", walk_svg(w, detail::svg_style(ctx, w.description(), true))});
             out.summary = detail::walk_summary(w);
             return out;
         }},
        {"correlate", "correlation of the walks modulo alpha+beta i and beta+alpha i of norm p",
         {{"p", ParamType::Integer, "97"},
          {"max-norm", ParamType::Integer, "1e5"},
          {"exclude-ramified", ParamType::Flag, "false"}},
         [](const Params& p, ExperimentContext& ctx) {
             return detail::run_correlation(p.integer("p"), p.integer("max-norm"), !p.flag("exclude-ramified"), ctx,
                                            "correlate");
         }},
        {"gauss-corr", "paired Gaussian walks for p=97 (positive) and p=29 (negative) correlation",
         {{"p", ParamType::Integer, "29"},
          {"max-norm", ParamType::Integer, "1e5"},
          {"exclude-ramified", ParamType::Flag, "false"}},
         [](const Params& p, ExperimentContext& ctx) {
             return detail::run_correlation(p.integer("p"), p.integer("max-norm"), !p.flag("exclude-ramified"), ctx,
                                            "gauss-corr");
         }},
        {"gauss-plot", "Gaussian primes of bounded norm: list and four-quadrant scatter",
         {{"max-norm", ParamType::Integer, "10609"}},
         [](const Params& p, ExperimentContext& ctx) {
             const i64 max_norm = p.integer("max-norm");
             const PrimeTable t = ctx.table(max_norm + 1);
             const auto primes = enumerate_gaussian_primes(t, max_norm);
             const auto pts = gaussian_plot_points(t, max_norm);
             ExperimentOutput out;
             out.artifacts.push_back({"gauss-plot.csv", "csv", gaussian_primes_csv(primes)});
             SvgStyle style = detail::svg_style(ctx, "Gaussian primes, norm <= " + std::to_string(max_norm));
             style.marker_radius = std::max(0.4, 1000.0 / (static_cast<double>(max_norm) / 50.0) / 20.0);
             out.artifacts.push_back({"gauss-plot.svg", "svg", scatter_svg(pts, style)});
             out.summary = {{"max_norm", max_norm},
                            {"first_quadrant_primes", primes.size()},
                            {"count_formula", count_gaussian_primes(t, max_norm)},
                            {"plotted_points", pts.size()}};
             return out;
         }},
    };
    return defs;
}

inline const ExperimentDef& find_experiment(const std::string& name) {
    for (const auto& d : experiment_registry())
        if (d.name == name) return d;
    throw config_error("unknown experiment '" + name + "'");
}

/// Validates the config, runs the experiment and writes the requested formats.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg, const PrimeCacheStore& store = PrimeCacheStore{},
                                       std::function<void(const std::string&)> progress = {}) {
    const ExperimentDef& def = find_experiment(cfg.name);
    for (const auto& f : cfg.formats)
        if (f != "csv" && f != "json" && f != "svg") throw config_error("unknown output format '" + f + "'");
    const Params params(def.schema, cfg.params, cfg.name);

    if (!cfg.output_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(cfg.output_dir, ec);
        if (ec || !std::filesystem::is_directory(cfg.output_dir))
            throw config_error("output directory " + cfg.output_dir.string() + " is not writable");
    }

    const auto start = std::chrono::steady_clock::now();
    ExperimentContext ctx{store, std::move(progress), cfg.svg_timestamp, cfg.svg_max_points};
    ExperimentOutput out = def.run(params, ctx);

    ExperimentReport rep;
    rep.name = cfg.name;
    rep.params = params.all();
    rep.summary = std::move(out.summary);
    rep.artifacts = std::move(out.artifacts);
    rep.prime_cache_limit = ctx.table_limit;
    rep.prime_cache_digest = ctx.table_digest;

    if (!cfg.output_dir.empty()) {
        auto write = [&](const std::string& name, const std::string& content) {
            std::ofstream f(cfg.output_dir / name, std::ios::binary | std::ios::trunc);
            if (!f) throw config_error("cannot write " + (cfg.output_dir / name).string());
            f.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!f) throw config_error("short write to " + (cfg.output_dir / name).string());
            rep.files.push_back(name);
        };
        for (const auto& a : rep.artifacts)
            if (cfg.formats.count(a.format)) write(a.filename, a.content);
        if (cfg.formats.count("json")) {
            const std::string name = cfg.name + ".report.json";
            rep.files.push_back(name);  // listed inside itself
            const std::string doc = rep.to_json().dump(2) + "\n";
            rep.files.pop_back();
            write(name, doc);
        }
    }
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace legwalk
