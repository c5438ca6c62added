#pragma once

// Legendre-symbol walks over rational and Gaussian primes and the statistics
// computed on them: residue ratios, consecutive-run frequencies, averaged ratio
// curves, prime-race tallies, the logarithmic measure of a race, and Pearson
// correlation of two walks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "legwalk/errors.hpp"
#include "legwalk/gaussian.hpp"
#include "legwalk/modular.hpp"
#include "legwalk/primes.hpp"

namespace legwalk {

/// Fixed-point decimal rendering, C locale, no grouping.
inline std::string format_fixed(double v, int decimals = 7) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

enum class QFilter { All, OneMod4, ThreeMod4 };
enum class Direction { QOverP, POverQ };

inline const char* to_string(QFilter f) {
    switch (f) {
        case QFilter::All: return "all";
        case QFilter::OneMod4: return "1mod4";
        case QFilter::ThreeMod4: return "3mod4";
    }
    return "?";
}

inline const char* to_string(Direction d) { return d == Direction::QOverP ? "qp" : "pq"; }

/// One step of a walk: the symbol value and the prime that produced it. `index` is 1-based.
struct SymbolStep {
    int value = 0;
    std::variant<i64, GaussInt> source;
    i64 index = 0;
};

inline std::string source_string(const SymbolStep& s) {
    if (const i64* q = std::get_if<i64>(&s.source)) return std::to_string(*q);
    return to_string(std::get<GaussInt>(s.source));
}

/// Ordered steps and their cumulative sums S(0)=0, S(t) = S(t-1) + step t.
class WalkSeries {
public:
    WalkSeries() = default;
    explicit WalkSeries(std::string description) : description_(std::move(description)) {}

    void push(int value, std::variant<i64, GaussInt> source) {
        if (value < -1 || value > 1) throw undefined_input_error("walk step must be -1, 0 or +1");
        const i64 t = static_cast<i64>(steps_.size()) + 1;
        steps_.push_back({value, std::move(source), t});
        sums_.push_back(sums_.back() + value);
    }

    void reserve(std::size_t n) {
        steps_.reserve(n);
        sums_.reserve(n + 1);
    }

    [[nodiscard]] std::span<const SymbolStep> steps() const { return steps_; }
    /// sums()[t] = S(t), size() + 1 entries.
    [[nodiscard]] std::span<const i64> sums() const { return sums_; }
    [[nodiscard]] std::size_t size() const { return steps_.size(); }
    [[nodiscard]] const std::string& description() const { return description_; }

private:
    std::vector<SymbolStep> steps_;
    std::vector<i64> sums_{0};
    std::string description_;
};

inline bool passes(QFilter f, i64 q) {
    switch (f) {
        case QFilter::All: return true;
        case QFilter::OneMod4: return q % 4 == 1;
        case QFilter::ThreeMod4: return q % 4 == 3;
    }
    return false;
}

/// Walk of (q/p) (or (p/q)) for primes 3 <= q < q_limit passing `filter`.
/// `table` must cover q_limit - 1.
inline WalkSeries rational_walk(const PrimeTable& table, i64 p, i64 q_limit, QFilter filter = QFilter::All,
                                Direction direction = Direction::QOverP) {
    if (p < 3 || !is_prime(p))
        throw invalid_modulus_error("rational_walk: p must be an odd prime, got " + std::to_string(p));
    if (q_limit > 3) table.require_below_limit(q_limit - 1, "rational_walk");
    WalkSeries w("rational p=" + std::to_string(p) + " q<" + std::to_string(q_limit) + " filter=" +
                 to_string(filter) + " direction=" + to_string(direction));

    std::vector<int> lut;  // (r/p) for r in [0, p)
    if (direction == Direction::QOverP) {
        lut.resize(static_cast<std::size_t>(p));
        for (i64 r = 0; r < p; ++r) lut[static_cast<std::size_t>(r)] = legendre(r, p).value();
    }
    auto ps = table.primes();
    auto first = std::lower_bound(ps.begin(), ps.end(), i64{3});
    auto last = std::lower_bound(ps.begin(), ps.end(), q_limit);
    w.reserve(static_cast<std::size_t>(last - first));
    for (auto it = first; it < last; ++it) {
        const i64 q = *it;
        if (!passes(filter, q)) continue;
        const int v = direction == Direction::QOverP ? lut[static_cast<std::size_t>(q % p)] : legendre(p, q).value();
        w.push(v, q);
    }
    return w;
}

inline WalkSeries rational_walk(i64 p, i64 q_limit, QFilter filter = QFilter::All,
                                Direction direction = Direction::QOverP) {
    return rational_walk(sieve_upto(std::max<i64>(q_limit, 3)), p, q_limit, filter, direction);
}

/// Walk of [k/pi] for k over first-quadrant Gaussian primes of norm <= max_norm in
/// (norm, re) order. `table` must cover max_norm.
inline WalkSeries gaussian_walk(const PrimeTable& table, GaussInt pi, i64 max_norm, bool include_ramified = true) {
    detail::require_symbol_modulus(pi);
    WalkSeries w("gaussian pi=" + to_string(pi) + " max_norm=" + std::to_string(max_norm) +
                 (include_ramified ? "" : " exclude_ramified"));
    for (GaussInt k : enumerate_gaussian_primes(table, max_norm)) {
        if (!include_ramified && norm(k) == 2) continue;
        w.push(gaussian_legendre(k, pi).value.value(), k);
    }
    return w;
}

inline WalkSeries gaussian_walk(GaussInt pi, i64 max_norm, bool include_ramified = true) {
    if (max_norm < 2) throw undefined_input_error("gaussian_walk: max_norm must be >= 2");
    return gaussian_walk(sieve_upto(max_norm + 1), pi, max_norm, include_ramified);
}

namespace detail {
inline std::size_t prefix(const WalkSeries& w, std::optional<std::size_t> upto) {
    return upto ? std::min(*upto, w.size()) : w.size();
}
}  // namespace detail

/// Number of leading steps whose rational source q is below `q_limit`.
inline std::size_t steps_below(const WalkSeries& w, i64 q_limit) {
    auto st = w.steps();
    auto it = std::partition_point(st.begin(), st.end(), [&](const SymbolStep& s) {
        const i64* q = std::get_if<i64>(&s.source);
        if (!q) throw undefined_input_error("steps_below: walk has non-rational sources");
        return *q < q_limit;
    });
    return static_cast<std::size_t>(it - st.begin());
}

/// (#+1 steps) / (#nonzero steps) over steps 1..upto.
inline double qr_ratio(const WalkSeries& w, std::optional<std::size_t> upto = std::nullopt) {
    const std::size_t n = detail::prefix(w, upto);
    i64 plus = 0, nonzero = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int v = w.steps()[i].value;
        plus += v == 1;
        nonzero += v != 0;
    }
    if (nonzero == 0) throw undefined_statistic_error("qr_ratio: no nonzero steps in range");
    return static_cast<double>(plus) / static_cast<double>(nonzero);
}

/// Fraction of overlapping length-n windows of the zero-free step subsequence whose
/// values all agree.
inline double consecutive_run_ratio(const WalkSeries& w, int n, std::optional<std::size_t> upto = std::nullopt) {
    if (n < 2) throw undefined_input_error("consecutive_run_ratio: n must be >= 2");
    const std::size_t len = detail::prefix(w, upto);
    std::vector<int> nz;
    nz.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
        if (w.steps()[i].value != 0) nz.push_back(w.steps()[i].value);
    if (nz.size() < static_cast<std::size_t>(n))
        throw undefined_statistic_error("consecutive_run_ratio: fewer than n nonzero steps");
    // run[i] = length of the equal-value run ending at i
    i64 hits = 0, run = 1;
    for (std::size_t i = 0; i < nz.size(); ++i) {
        run = (i > 0 && nz[i] == nz[i - 1]) ? run + 1 : 1;
        if (i + 1 >= static_cast<std::size_t>(n) && run >= n) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(nz.size() - static_cast<std::size_t>(n) + 1);
}

enum class WalkStatistic { QrRatio, Run2, Run3, Run4 };

inline const char* to_string(WalkStatistic s) {
    switch (s) {
        case WalkStatistic::QrRatio: return "qr";
        case WalkStatistic::Run2: return "run2";
        case WalkStatistic::Run3: return "run3";
        case WalkStatistic::Run4: return "run4";
    }
    return "?";
}

inline double evaluate(WalkStatistic s, const WalkSeries& w, std::optional<std::size_t> upto) {
    switch (s) {
        case WalkStatistic::QrRatio: return qr_ratio(w, upto);
        case WalkStatistic::Run2: return consecutive_run_ratio(w, 2, upto);
        case WalkStatistic::Run3: return consecutive_run_ratio(w, 3, upto);
        case WalkStatistic::Run4: return consecutive_run_ratio(w, 4, upto);
    }
    return 0.0;
}

/// Mean and population standard deviation of a walk statistic across moduli, per checkpoint.
struct RatioCurve {
    std::vector<i64> checkpoints;
    std::vector<double> mean;
    std::vector<double> stdev;
    std::vector<i64> n;  ///< walks contributing at each checkpoint
    std::vector<i64> p_set;
    i64 skipped = 0;  ///< (walk, checkpoint) entries dropped because the statistic was undefined
};

/// Averages `statistic` over walks for each p in `p_set`; checkpoint c restricts to q < c.
/// Every p is weighted equally.
inline RatioCurve average_ratio_curve(const PrimeTable& table, std::span<const i64> p_set,
                                      std::span<const i64> checkpoints, QFilter filter, WalkStatistic statistic,
                                      Direction direction = Direction::QOverP) {
    if (p_set.empty()) throw undefined_input_error("average_ratio_curve: empty p_set");
    if (checkpoints.empty()) throw undefined_input_error("average_ratio_curve: no checkpoints");
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw undefined_input_error("average_ratio_curve: checkpoints must be increasing");

    RatioCurve curve;
    curve.checkpoints.assign(checkpoints.begin(), checkpoints.end());
    curve.p_set.assign(p_set.begin(), p_set.end());
    std::vector<std::vector<double>> values(checkpoints.size());
    for (i64 p : p_set) {
        const WalkSeries w = rational_walk(table, p, checkpoints.back(), filter, direction);
        for (std::size_t c = 0; c < checkpoints.size(); ++c) {
            try {
                values[c].push_back(evaluate(statistic, w, steps_below(w, checkpoints[c])));
            } catch (const undefined_statistic_error&) {
                ++curve.skipped;
            }
        }
    }
    for (const auto& v : values) {
        curve.n.push_back(static_cast<i64>(v.size()));
        if (v.empty()) {
            curve.mean.push_back(std::nan(""));
            curve.stdev.push_back(std::nan(""));
            continue;
        }
        long double sum = 0;
        for (double x : v) sum += x;
        const long double mean = sum / static_cast<long double>(v.size());
        long double ss = 0;
        for (double x : v) ss += (x - mean) * (x - mean);
        curve.mean.push_back(static_cast<double>(mean));
        curve.stdev.push_back(static_cast<double>(std::sqrt(ss / static_cast<long double>(v.size()))));
    }
    return curve;
}

/// Odd primes below `bound`, in order.
inline std::vector<i64> odd_primes_below(const PrimeTable& table, i64 bound) {
    std::vector<i64> out;
    for (i64 p : table.primes()) {
        if (p >= bound) break;
        if (p != 2) out.push_back(p);
    }
    return out;
}

/// Powers of ten 10^lo .. 10^hi.
inline std::vector<i64> powers_of_ten(int lo, int hi) {
    std::vector<i64> out;
    i64 v = 1;
    for (int e = 0; e <= hi; ++e, v *= 10)
        if (e >= lo) out.push_back(v);
    return out;
}

struct RaceRow {
    i64 x = 0;
    std::vector<i64> counts;  ///< aligned with RaceTally::residues
};

struct RaceTally {
    i64 modulus = 0;
    std::vector<i64> residues;  ///< residues coprime to modulus, ascending
    std::vector<RaceRow> rows;
};

/// pi(x; m, r) for each x in the grid and each residue r coprime to m.
inline RaceTally race_tally(const PrimeTable& table, i64 m, std::span<const i64> x_grid) {
    if (m < 2) throw undefined_input_error("race_tally: modulus must be >= 2");
    RaceTally out;
    out.modulus = m;
    for (i64 x : x_grid) {
        if (x < 0) throw undefined_input_error("race_tally: negative grid value");
        table.require_below_limit(x, "race_tally");
    }
    std::vector<std::vector<i64>> classes;
    for (i64 r = 0; r < m; ++r) {
        if (gcd(r, m) != 1) continue;
        out.residues.push_back(r);
        classes.push_back(primes_in_ap(table, APClass(m, r)));
    }
    for (i64 x : x_grid) {
        RaceRow row{x, {}};
        for (const auto& cls : classes)
            row.counts.push_back(static_cast<i64>(std::upper_bound(cls.begin(), cls.end(), x) - cls.begin()));
        out.rows.push_back(std::move(row));
    }
    return out;
}

/// (1/ln X) * sum of 1/x over integers 2 <= x <= X with pi(x;m,leader) > pi(x;m,laggard).
inline double logarithmic_measure(const PrimeTable& table, i64 m, i64 leader, i64 laggard, i64 X) {
    const APClass lead(m, leader), lag(m, laggard);
    if (!lead.coprime() || !lag.coprime())
        throw undefined_input_error("logarithmic_measure: residues must be coprime to the modulus");
    if (leader == laggard) throw undefined_input_error("logarithmic_measure: leader and laggard coincide");
    if (X < 2) throw undefined_input_error("logarithmic_measure: X must be >= 2");
    table.require_below_limit(X, "logarithmic_measure");
    i64 a = 0, b = 0;
    long double sum = 0;
    for (i64 x = 2; x <= X; ++x) {
        if (table.contains(x)) {
            const i64 r = x % m;
            a += r == leader;
            b += r == laggard;
        }
        if (a > b) sum += 1.0L / static_cast<long double>(x);
    }
    return static_cast<double>(sum / std::log(static_cast<long double>(X)));
}

/// Pearson correlation of the cumulative sums S(1..n) of two equal-length walks.
inline double pearson_correlation(const WalkSeries& w1, const WalkSeries& w2) {
    if (w1.size() != w2.size()) throw undefined_input_error("pearson_correlation: walks differ in length");
    if (w1.size() < 2) throw undefined_input_error("pearson_correlation: need at least two steps");
    const auto s1 = w1.sums().subspan(1), s2 = w2.sums().subspan(1);
    const auto n = static_cast<long double>(s1.size());
    long double m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        m1 += s1[i];
        m2 += s2[i];
    }
    m1 /= n;
    m2 /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        const long double dx = s1[i] - m1, dy = s2[i] - m2;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw undefined_statistic_error("pearson_correlation: a walk has zero variance");
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

/// max over t >= 1 of |S(t)| / sqrt(t).
inline double max_envelope_ratio(const WalkSeries& w) {
    double best = 0;
    const auto s = w.sums();
    for (std::size_t t = 1; t < s.size(); ++t)
        best = std::max(best, std::abs(static_cast<double>(s[t])) / std::sqrt(static_cast<double>(t)));
    return best;
}

/// CSV `t,source,step,sum`.
inline std::string walk_csv(const WalkSeries& w) {
    std::string out = "t,source,step,sum\n";
    for (const auto& s : w.steps())
        out += std::to_string(s.index) + "," + source_string(s) + "," + std::to_string(s.value) + "," +
               std::to_string(w.sums()[static_cast<std::size_t>(s.index)]) + "\n";
    return out;
}

/// CSV `checkpoint,mean,stdev,n`, ratios to 7 decimals.
inline std::string ratio_curve_csv(const RatioCurve& c) {
    std::string out = "checkpoint,mean,stdev,n\n";
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i)
        out += std::to_string(c.checkpoints[i]) + "," + format_fixed(c.mean[i]) + "," + format_fixed(c.stdev[i]) + "," +
               std::to_string(c.n[i]) + "\n";
    return out;
}

/// CSV `x,<r1>,<r2>,...` with one column per residue class.
inline std::string race_csv(const RaceTally& t) {
    std::string out = "x";
    for (i64 r : t.residues) out += "," + std::to_string(r) + "mod" + std::to_string(t.modulus);
    out += "\n";
    for (const auto& row : t.rows) {
        out += std::to_string(row.x);
        for (i64 c : row.counts) out += "," + std::to_string(c);
        out += "\n";
    }
    return out;
}

}  // namespace legwalk
