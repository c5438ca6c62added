// legwalk command-line interface.

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "legwalk/experiments.hpp"
#include "legwalk/verify.hpp"

namespace {

using namespace legwalk;

struct Common {
    std::string out_dir;
    std::vector<std::string> formats;
    std::string cache_dir;
    bool cache_only = false;
    bool no_timestamp = false;
    bool quiet = false;
    std::size_t max_points = 20000;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out-dir", c.out_dir, "write artifacts and a JSON report here instead of printing CSV");
    app->add_option("--format", c.formats, "output formats (csv, json, svg)")->delimiter(',');
    app->add_option("--cache-dir", c.cache_dir, "prime cache directory")->envname("LEGWALK_CACHE");
    app->add_flag("--cache-only", c.cache_only, "fail instead of sieving when the cache is too small");
    app->add_flag("--no-timestamp", c.no_timestamp, "omit the generated-at comment in SVG output");
    app->add_flag("-q,--quiet", c.quiet, "no progress messages");
}

PrimeCacheStore make_store(const Common& c) {
    std::optional<std::filesystem::path> dir;
    if (!c.cache_dir.empty()) dir = c.cache_dir;
    return PrimeCacheStore(dir, !c.cache_only);
}

// Binds an option that fills params[key] only when given, so schema defaults apply otherwise.
CLI::Option* param(CLI::App* app, std::map<std::string, std::string>& params, const std::string& flag,
                   const std::string& key, const std::string& help) {
    return app->add_option_function<std::string>(
        flag, [&params, key](const std::string& v) { params[key] = v; }, help);
}

// Runs an experiment and prints either the primary artifact (no --out-dir) or the report.
// `want` picks the artifact format printed to stdout.
int execute(const std::string& name, const std::map<std::string, std::string>& params, const Common& c,
            const std::string& want = "csv") {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.params = params;
    cfg.svg_timestamp = !c.no_timestamp;
    cfg.svg_max_points = c.max_points;
    if (!c.formats.empty()) cfg.formats = {c.formats.begin(), c.formats.end()};
    if (!c.out_dir.empty()) cfg.output_dir = c.out_dir;

    const PrimeCacheStore store = make_store(c);
    auto progress = [&c](const std::string& msg) {
        if (!c.quiet) std::cerr << "[legwalk] " << msg << "\n";
    };
    const ExperimentReport rep = run_experiment(cfg, store, progress);
    if (!c.quiet) std::cerr << "[legwalk] " << name << " finished in " << format_fixed(rep.wall_time_s, 2) << " s\n";

    if (!c.out_dir.empty()) {
        std::cout << rep.to_json().dump(2) << "\n";
        return 0;
    }
    for (const auto& a : rep.artifacts)
        if (a.format == want) {
            std::cout << a.content;
            return 0;
        }
    std::cerr << "error: experiment '" << name << "' produced no " << want << " output\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Legendre symbol walks over rational and Gaussian primes"};
    app.require_subcommand(1);

    Common common;
    std::map<std::string, std::string> params;
    std::function<int()> action;

    // sieve
    auto* sieve = app.add_subcommand("sieve", "build a prime cache file");
    std::string sieve_limit;
    sieve->add_option("--limit", sieve_limit, "exclusive upper bound")->required();
    add_common(sieve, common);
    sieve->callback([&] {
        action = [&] {
            if (common.cache_dir.empty()) throw config_error("sieve needs --cache-dir or LEGWALK_CACHE");
            const i64 limit = parse_integer(sieve_limit);
            const PrimeTable t = PrimeCacheStore(std::filesystem::path(common.cache_dir)).get(limit);
            std::cout << "limit=" << t.limit() << " count=" << t.size() << " digest=" << prime_table_digest(t) << "\n";
            return 0;
        };
    });

    // race
    auto* race = app.add_subcommand("race", "prime counts per residue class");
    param(race, params, "--mod", "mod", "modulus");
    param(race, params, "--grid", "grid", "x values: 10^a..10^b, lo..hi or a comma list");
    add_common(race, common);
    race->callback([&] { action = [&] { return execute("race", params, common); }; });

    // walk
    auto* walk = app.add_subcommand("walk", "Legendre symbol walk over primes q");
    param(walk, params, "--p", "p", "odd prime modulus")->required();
    param(walk, params, "--q-limit", "q-limit", "q ranges over primes in [3, q-limit)");
    param(walk, params, "--filter", "filter", "all, 1mod4 or 3mod4");
    param(walk, params, "--direction", "direction", "qp for (q/p), pq for (p/q)");
    add_common(walk, common);
    walk->callback([&] { action = [&] { return execute("walk", params, common); }; });

    // gwalk
    auto* gwalk = app.add_subcommand("gwalk", "Gaussian Legendre symbol walk");
    param(gwalk, params, "--pi", "pi", "Gaussian prime modulus, e.g. 4+9i")->required();
    param(gwalk, params, "--max-norm", "max-norm", "norm bound for the iterated primes");
    gwalk->add_flag_callback("--exclude-ramified", [&] { params["exclude-ramified"] = "true"; },
                             "skip 1+i as a numerator");
    add_common(gwalk, common);
    gwalk->callback([&] { action = [&] { return execute("gwalk", params, common); }; });

    // avg-ratio
    auto* avg = app.add_subcommand("avg-ratio", "statistic averaged over all odd primes p below a bound");
    param(avg, params, "--p-below", "p-below", "average over odd primes p < this");
    param(avg, params, "--checkpoints", "checkpoints", "q limits at which to evaluate");
    param(avg, params, "--stat", "stat", "qr, run2, run3 or run4");
    param(avg, params, "--filter", "filter", "all, 1mod4 or 3mod4");
    param(avg, params, "--direction", "direction", "qp or pq");
    add_common(avg, common);
    avg->callback([&] { action = [&] { return execute("avg-ratio", params, common); }; });

    // log-measure
    auto* logm = app.add_subcommand("log-measure", "logarithmic measure of a prime race");
    param(logm, params, "--mod", "mod", "modulus");
    param(logm, params, "--leader", "leader", "residue class expected to lead");
    param(logm, params, "--laggard", "laggard", "residue class it is compared against");
    param(logm, params, "--X", "X", "upper end of the scan");
    add_common(logm, common);
    logm->callback([&] { action = [&] { return execute("log-measure", params, common); }; });

    // correlate
    auto* corr = app.add_subcommand("correlate", "correlation of the two Gaussian walks above a split prime p");
    param(corr, params, "--p", "p", "prime p = 1 mod 4");
    param(corr, params, "--max-norm", "max-norm", "norm bound");
    corr->add_flag_callback("--exclude-ramified", [&] { params["exclude-ramified"] = "true"; },
                            "skip 1+i as a numerator");
    add_common(corr, common);
    corr->callback([&] { action = [&] { return execute("correlate", params, common); }; });

    // verify
    auto* ver = app.add_subcommand("verify", "brute-force verification suites");
    std::string suite = "all", scale = "quick";
    std::optional<i64> vp, vq;
    bool as_json = false;
    ver->add_option("--suite", suite, "modular, gaussian, relations, conjecture or all");
    ver->add_option("--scale", scale, "quick or full");
    ver->add_option("--p", vp, "restrict the relations suite to this p");
    ver->add_option("--q", vq, "restrict the relations suite to this q");
    ver->add_flag("--json", as_json, "print the report as JSON");
    ver->callback([&] {
        action = [&] {
            const VerifyReport rep = verify(parse_verify_suite(suite), parse_verify_scale(scale), {vp, vq});
            std::cout << (as_json ? rep.to_json().dump(2) + "\n" : rep.text());
            return rep.passed() ? 0 : 1;
        };
    });

    // run
    auto* run = app.add_subcommand("run", "run a registered experiment");
    std::string exp_name;
    std::vector<std::string> kv;
    bool list = false;
    run->add_option("experiment", exp_name, "experiment name");
    run->add_option("--param,-P", kv, "parameter as key=value (repeatable)");
    run->add_flag("--list", list, "list experiments and their parameters");
    add_common(run, common);
    run->callback([&] {
        action = [&] {
            if (list || exp_name.empty()) {
                for (const auto& d : experiment_registry()) {
                    std::cout << d.name << ": " << d.description << "\n";
                    for (const auto& s : d.schema) std::cout << "    " << s.key << " (default " << s.default_value << ")\n";
                }
                return exp_name.empty() && !list ? 1 : 0;
            }
            for (const auto& item : kv) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) throw config_error("--param expects key=value, got '" + item + "'");
                params[item.substr(0, eq)] = item.substr(eq + 1);
            }
            return execute(exp_name, params, common);
        };
    });

    // plot
    auto* plot = app.add_subcommand("plot", "render SVG figures");
    plot->require_subcommand(1);
    auto plot_common = [&](CLI::App* sub) {
        add_common(sub, common);
        sub->add_option("--max-points", common.max_points, "decimate walk polylines above this many points (0 keeps all)");
    };
    auto plot_run = [&](const std::string& name) {
        if (common.formats.empty()) common.formats = {"svg", "json"};
        return execute(name, params, common, "svg");
    };

    auto* pw = plot->add_subcommand("walk", "rational walk with the square-root envelope");
    param(pw, params, "--p", "p", "odd prime modulus")->required();
    param(pw, params, "--q-limit", "q-limit", "q bound");
    param(pw, params, "--filter", "filter", "all, 1mod4 or 3mod4");
    param(pw, params, "--direction", "direction", "qp or pq");
    plot_common(pw);
    pw->callback([&] { action = [&] { return plot_run("walk"); }; });

    auto* pg = plot->add_subcommand("gwalk", "Gaussian walk with the square-root envelope");
    param(pg, params, "--pi", "pi", "Gaussian prime modulus")->required();
    param(pg, params, "--max-norm", "max-norm", "norm bound");
    pg->add_flag_callback("--exclude-ramified", [&] { params["exclude-ramified"] = "true"; }, "skip 1+i");
    plot_common(pg);
    pg->callback([&] { action = [&] { return plot_run("gwalk"); }; });

    auto* pgauss = plot->add_subcommand("gauss", "scatter of Gaussian primes in all four quadrants");
    param(pgauss, params, "--max-norm", "max-norm", "norm bound");
    plot_common(pgauss);
    pgauss->callback([&] { action = [&] { return plot_run("gauss-plot"); }; });

    auto* pc = plot->add_subcommand("curve", "averaged ratio curve with one-stdev bars");
    param(pc, params, "--p-below", "p-below", "average over odd primes p < this");
    param(pc, params, "--checkpoints", "checkpoints", "q limits");
    param(pc, params, "--stat", "stat", "qr, run2, run3 or run4");
    param(pc, params, "--filter", "filter", "all, 1mod4 or 3mod4");
    plot_common(pc);
    pc->callback([&] { action = [&] { return plot_run("avg-ratio"); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        return action ? action() : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
