#include <gtest/gtest.h>

#include <fstream>
#include <iterator>
#include <random>

#include "legwalk/experiments.hpp"
#include "legwalk/verify.hpp"

using namespace legwalk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("legwalk-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ExperimentReport run(const std::string& name, std::map<std::string, std::string> params, const fs::path& out = {},
                     const PrimeCacheStore& store = PrimeCacheStore{}) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.params = std::move(params);
    cfg.output_dir = out;
    cfg.svg_timestamp = false;
    return run_experiment(cfg, store);
}

}  // namespace

TEST(Params, Integers) {
    EXPECT_EQ(parse_integer("123"), 123);
    EXPECT_EQ(parse_integer("-7"), -7);
    EXPECT_EQ(parse_integer("1e6"), 1'000'000);
    EXPECT_EQ(parse_integer("2.5E3"), 2500);
    EXPECT_EQ(parse_integer("10^7"), 10'000'000);
    EXPECT_EQ(parse_integer(" 42 "), 42);
    EXPECT_EQ(parse_integer("1.000e3"), 1000);
    for (const char* bad : {"", "abc", "1.5", "1e-1", "2.5e0", "1e30", "10^-1", "12x", "9223372036854775808"})
        EXPECT_THROW(parse_integer(bad), config_error) << bad;
}

TEST(Params, Grids) {
    EXPECT_EQ(parse_grid("10^1..10^6"), (std::vector<i64>{10, 100, 1000, 10'000, 100'000, 1'000'000}));
    EXPECT_EQ(parse_grid("10^3..10^3"), (std::vector<i64>{1000}));
    EXPECT_EQ(parse_grid("2..6"), (std::vector<i64>{2, 3, 4, 5, 6}));
    EXPECT_EQ(parse_grid("10,1e3,10^4"), (std::vector<i64>{10, 1000, 10'000}));
    EXPECT_EQ(parse_grid("77"), (std::vector<i64>{77}));
    for (const char* bad : {"", "10^3..10^1", "5..2", "1..1e9", "a,b", "10^1..10^19"})
        EXPECT_THROW(parse_grid(bad), config_error) << bad;
}

TEST(PrimeCacheFile, RoundTripAndHeader) {
    const PrimeTable t = sieve_upto(100);
    const std::string bytes = serialize_prime_cache(t);
    EXPECT_EQ(bytes.substr(0, bytes.find('\n') + 1), "PRIMECACHE v1 limit=100 count=25\n");
    EXPECT_EQ(bytes.size(), 33u + 25 * 8);
    EXPECT_EQ(static_cast<unsigned char>(bytes[33]), 2u);  // first prime, little-endian
    EXPECT_EQ(bytes[34], 0);
    const PrimeTable back = deserialize_prime_cache(bytes);
    EXPECT_EQ(back.limit(), 100);
    EXPECT_TRUE(std::equal(t.primes().begin(), t.primes().end(), back.primes().begin(), back.primes().end()));
    EXPECT_EQ(prime_table_digest(t), prime_table_digest(back));
    EXPECT_NE(prime_table_digest(t), prime_table_digest(sieve_upto(101)));
}

TEST(PrimeCacheFile, RejectsCorruption) {
    const std::string good = serialize_prime_cache(sieve_upto(50));
    EXPECT_THROW(deserialize_prime_cache("garbage"), cache_error);
    EXPECT_THROW(deserialize_prime_cache("PRIMECACHE v2 limit=50 count=15\n"), cache_error);
    EXPECT_THROW(deserialize_prime_cache(good.substr(0, good.size() - 1)), cache_error);
    std::string swapped = good;
    std::swap(swapped[good.find('\n') + 1], swapped[good.find('\n') + 9]);  // 2 and 3 out of order
    EXPECT_THROW(deserialize_prime_cache(swapped), cache_error);
    std::string small = good;
    small.replace(small.find("limit=50"), 8, "limit=40");
    EXPECT_THROW(deserialize_prime_cache(small), cache_error);
}

TEST(PrimeCacheStoreTest, BuildsReusesAndRefuses) {
    TempDir dir;
    const PrimeCacheStore store(dir.path);
    EXPECT_EQ(store.largest_cached_limit(), 0);
    const PrimeTable t = store.get(1000);
    EXPECT_TRUE(fs::exists(prime_cache_path(dir.path, 1000)));
    EXPECT_EQ(store.largest_cached_limit(), 1000);
    EXPECT_EQ(store.get(500).limit(), 1000);  // larger cache satisfies smaller requests
    EXPECT_EQ(t.size(), 168u);

    const PrimeCacheStore strict(dir.path, false);
    EXPECT_NO_THROW(strict.get(800));
    try {
        (void)strict.get(5000);
        FAIL() << "expected cache_error";
    } catch (const cache_error& e) {
        EXPECT_NE(std::string(e.what()).find("5000"), std::string::npos) << e.what();
    }
    EXPECT_THROW(PrimeCacheStore(std::nullopt, false).get(10), cache_error);
}

TEST(Svg, WalkPolylineAndEnvelope) {
    WalkSeries w;
    for (int v : {1, -1, 1}) w.push(v, i64{3});
    SvgStyle style;
    style.timestamp = false;
    const std::string svg = walk_svg(w, style);
    const auto pts_start = svg.find("points=\"") + 8;
    const std::string pts = svg.substr(pts_start, svg.find('"', pts_start) - pts_start);
    EXPECT_EQ(std::count(pts.begin(), pts.end(), ','), 4);
    EXPECT_EQ(svg.find("class=\"envelope\""), std::string::npos);
    EXPECT_EQ(svg.find("<!--"), std::string::npos);
    style.envelope = true;
    const std::string env = walk_svg(w, style);
    std::size_t paths = 0;
    for (auto pos = env.find("<path class=\"envelope\""); pos != std::string::npos;
         pos = env.find("<path class=\"envelope\"", pos + 1))
        ++paths;
    EXPECT_EQ(paths, 2u);
    style.timestamp = true;
    EXPECT_NE(walk_svg(w, style).find("<!-- generated "), std::string::npos);
    EXPECT_THROW(walk_svg(WalkSeries{}, style), undefined_input_error);
}

TEST(Svg, DecimationKeepsEndpoints) {
    WalkSeries w;
    for (int i = 0; i < 1000; ++i) w.push(i % 3 == 0 ? -1 : 1, i64{i});
    SvgStyle style;
    style.timestamp = false;
    style.max_points = 50;
    const std::string svg = walk_svg(w, style);
    const auto s = svg.find("points=\"") + 8;
    const std::string pts = svg.substr(s, svg.find('"', s) - s);
    const auto n = std::count(pts.begin(), pts.end(), ',');
    EXPECT_LE(n, 51);
    EXPECT_GE(n, 25);
}

TEST(Svg, ScatterHasEqualAspectAndAllQuadrants) {
    const PrimeTable t = sieve_upto(10'610);
    const auto pts = gaussian_plot_points(t, 10'609);
    const auto first = enumerate_gaussian_primes(t, 10'609);
    EXPECT_EQ(pts.size(), 4 * first.size());
    for (auto [x, y] : pts) {
        EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), std::pair{-y, x}));
        EXPECT_TRUE(std::binary_search(pts.begin(), pts.end(), std::pair{x, -y}));
    }
    SvgStyle style;
    style.timestamp = false;
    const std::string svg = scatter_svg(pts, style);
    EXPECT_NE(svg.find("width=\"500\" height=\"500\""), std::string::npos);
    EXPECT_EQ(static_cast<std::size_t>(std::count(svg.begin(), svg.end(), '\n')), pts.size() + 4);
    EXPECT_THROW(scatter_svg({}, style), undefined_input_error);
}

TEST(Experiments, RegistryIsComplete) {
    for (const char* name : {"race", "mod3-race", "walk", "walk97", "gwalk", "avg-ratio", "consecutive", "mod4-split",
                             "log-measure", "correlate", "gauss-corr", "gauss-plot"})
        EXPECT_NO_THROW(find_experiment(name)) << name;
    EXPECT_THROW(find_experiment("nope"), config_error);
}

TEST(Experiments, SchemaRejectsUnknownAndInvalid) {
    EXPECT_THROW(run("walk97", {{"q_limit", "10"}}), config_error);
    EXPECT_THROW(run("walk97", {{"q-limit", "ten"}}), config_error);
    EXPECT_THROW(run("walk", {{"filter", "2mod4"}}), config_error);
    EXPECT_THROW(run("gwalk", {{"pi", "4+9j"}}), config_error);
    EXPECT_THROW(run("gwalk", {{"exclude-ramified", "maybe"}}), config_error);
    ExperimentConfig cfg;
    cfg.name = "walk97";
    cfg.formats = {"csv", "xml"};
    EXPECT_THROW(run_experiment(cfg), config_error);
}

TEST(Experiments, Mod3RaceReproducesTable) {
    const auto rep = run("mod3-race", {});
    EXPECT_EQ(rep.primary()->content,
              "x,1mod3,2mod3\n10,1,2\n100,11,13\n1000,80,87\n10000,611,617\n100000,4784,4807\n1000000,39231,39266\n");
}

TEST(Experiments, Walk97Tiny) {
    const auto rep = run("walk97", {{"q-limit", "10"}});
    EXPECT_EQ(rep.summary["steps"], 3);
    EXPECT_EQ(rep.primary()->content, "t,source,step,sum\n1,3,1,1\n2,5,-1,0\n3,7,-1,-1\n");
    const auto r1000 = run("walk", {{"p", "97"}, {"q-limit", "1000"}});
    EXPECT_EQ(r1000.summary["qr_ratio"].get<double>(), 0.4698795);
}

TEST(Experiments, GaussCorrNegativeForTwentyNine) {
    const auto rep = run("gauss-corr", {{"max-norm", "1e5"}});
    EXPECT_LT(rep.summary["correlation"].get<double>(), -0.9);
    EXPECT_EQ(rep.summary["pi1"], "2+5i");
    EXPECT_EQ(rep.summary["twist_sign"], -1);
}

TEST(Experiments, WritesFilesAndReport) {
    TempDir dir;
    ExperimentConfig cfg;
    cfg.name = "walk";
    cfg.params = {{"p", "13"}, {"q-limit", "2000"}};
    cfg.output_dir = dir.path / "out";
    cfg.formats = {"csv", "json", "svg"};
    cfg.svg_timestamp = false;
    const auto rep = run_experiment(cfg);
    EXPECT_EQ(rep.files, (std::vector<std::string>{"walk.csv", "walk.svg", "walk.report.json"}));
    for (const auto& f : rep.files) EXPECT_TRUE(fs::exists(cfg.output_dir / f)) << f;
    const auto j = nlohmann::json::parse(slurp(cfg.output_dir / "walk.report.json"));
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["experiment"], "walk");
    EXPECT_EQ(j["params"]["p"], "13");
    EXPECT_EQ(j["params"]["filter"], "all");
    EXPECT_FALSE(j.contains("wall_time_s"));
    EXPECT_EQ(j["inputs"]["prime_cache_digest"].get<std::string>().size(), 16u);
    EXPECT_GE(rep.wall_time_s, 0.0);

    cfg.formats = {"csv"};
    cfg.output_dir = dir.path / "csv-only";
    EXPECT_EQ(run_experiment(cfg).files, std::vector<std::string>{"walk.csv"});
}

TEST(Experiments, UnwritableOutputDirectory) {
    TempDir dir;
    std::ofstream(dir.path / "file") << "x";
    EXPECT_THROW(run("walk97", {{"q-limit", "100"}}, dir.path / "file" / "sub"), config_error);
}

TEST(Experiments, CacheTooSmallNamesLimit) {
    TempDir dir;
    const PrimeCacheStore strict(dir.path, false);
    try {
        (void)run("walk97", {{"q-limit", "5000"}}, {}, strict);
        FAIL() << "expected cache_error";
    } catch (const cache_error& e) {
        EXPECT_NE(std::string(e.what()).find("5000"), std::string::npos) << e.what();
    }
}

TEST(Experiments, RerunsAreByteIdentical) {
    TempDir dir;
    const PrimeCacheStore store(dir.path / "cache");
    const std::vector<std::pair<std::string, std::map<std::string, std::string>>> cases{
        {"race", {{"mod", "4"}, {"grid", "10^1..10^5"}}},
        {"walk", {{"p", "97"}, {"q-limit", "1e5"}, {"filter", "3mod4"}}},
        {"gwalk", {{"pi", "2+3i"}, {"max-norm", "5000"}}},
        {"avg-ratio", {{"p-below", "50"}, {"checkpoints", "10^2..10^4"}}},
        {"consecutive", {{"p-below", "30"}, {"checkpoints", "10^3..10^4"}}},
        {"mod4-split", {{"q-limit", "1e4"}, {"p-below", "30"}, {"checkpoints", "10^3..10^4"}}},
        {"log-measure", {{"X", "1e5"}}},
        {"correlate", {{"p", "13"}, {"max-norm", "5000"}}},
        {"gauss-plot", {{"max-norm", "2000"}}},
    };
    for (const auto& [name, params] : cases) {
        ExperimentConfig cfg;
        cfg.name = name;
        cfg.params = params;
        cfg.formats = {"csv", "json", "svg"};
        cfg.svg_timestamp = false;
        cfg.output_dir = dir.path / (name + "-a");
        const auto a = run_experiment(cfg, store);
        cfg.output_dir = dir.path / (name + "-b");
        const auto b = run_experiment(cfg, store);
        ASSERT_EQ(a.files, b.files) << name;
        ASSERT_FALSE(a.files.empty()) << name;
        for (const auto& f : a.files)
            EXPECT_EQ(slurp(dir.path / (name + "-a") / f), slurp(dir.path / (name + "-b") / f)) << name << "/" << f;
    }
}

TEST(Verify, QuickSuitesPass) {
    for (VerifySuite s : {VerifySuite::Modular, VerifySuite::Conjecture}) {
        const VerifyReport rep = verify(s, VerifyScale::Quick);
        EXPECT_TRUE(rep.passed()) << rep.text();
    }
    const VerifyReport rel = verify(VerifySuite::Relations, VerifyScale::Quick, {97, 13});
    EXPECT_TRUE(rel.passed()) << rel.text();
    EXPECT_NE(rel.text().find("ALL PASSED"), std::string::npos);
    EXPECT_EQ(rel.to_json()["schema"], 1);
    EXPECT_THROW(parse_verify_suite("bogus"), config_error);
    EXPECT_THROW(parse_verify_scale("huge"), config_error);
}

TEST(Verify, ReportsFailures) {
    CheckResult c{"demo", "always-false"};
    for (int i = 0; i < 20; ++i) c.record(i % 2 == 0, [i] { return "case " + std::to_string(i); });
    EXPECT_EQ(c.checked, 20);
    EXPECT_EQ(c.failures, 10);
    EXPECT_EQ(c.counterexamples.size(), CheckResult::kMaxListed);
    VerifyReport rep;
    rep.checks.push_back(c);
    EXPECT_FALSE(rep.passed());
    EXPECT_NE(rep.text().find("FAIL demo/always-false checked=20 failures=10"), std::string::npos);
    EXPECT_NE(rep.text().find("FAILURES PRESENT"), std::string::npos);
    EXPECT_FALSE(VerifyReport{}.passed());
}
