#pragma once

// Slow reference implementations. Nothing here calls into legwalk, so a bug in
// the library cannot hide behind the same bug in its reference.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Plain unsegmented sieve with a byte per number.
inline std::vector<i64> naive_sieve(i64 limit) {
    std::vector<i64> out;
    if (limit < 3) return out;
    std::vector<char> composite(static_cast<std::size_t>(limit), 0);
    for (i64 i = 2; i < limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (i64 j = i * i; j < limit; j += i) composite[j] = 1;
    }
    return out;
}

inline i64 count_upto(const std::vector<i64>& primes, i64 x, i64 m = 1, i64 r = 0) {
    i64 c = 0;
    for (i64 p : primes)
        if (p <= x && p % m == r) ++c;
    return c;
}

inline i64 md(i64 a, i64 m) { return ((a % m) + m) % m; }

/// Legendre symbol by searching for a square root.
inline int legendre(i64 a, i64 p) {
    a = md(a, p);
    if (a == 0) return 0;
    for (i64 x = 1; x < p; ++x)
        if (x * x % p == a) return 1;
    return -1;
}

inline i64 gcd_naive(i64 a, i64 b) {
    a = std::llabs(a);
    b = std::llabs(b);
    i64 best = 1;
    for (i64 d = 1; d <= std::max(a, b); ++d)
        if (a % d == 0 && b % d == 0) best = d;
    return best;
}

inline i64 totient_naive(i64 n) {
    i64 c = 0;
    for (i64 k = 1; k <= n; ++k) c += gcd_naive(k, n) == 1;
    return c;
}

struct G {
    i64 re, im;
};

inline i64 gnorm(G z) { return z.re * z.re + z.im * z.im; }

/// Does d divide z in Z[i]? z/d = z*conj(d)/N(d).
inline bool gdivides(G d, G z) {
    const i64 n = gnorm(d);
    if (n == 0) return z.re == 0 && z.im == 0;
    const i64 re = z.re * d.re + z.im * d.im;
    const i64 im = z.im * d.re - z.re * d.im;
    return re % n == 0 && im % n == 0;
}

/// Gaussian prime by definition: norm prime, or unit times a rational prime = 3 mod 4.
inline bool is_gaussian_prime(G z) {
    const i64 a = std::llabs(z.re), b = std::llabs(z.im);
    if (a == 0) return b % 4 == 3 && is_prime(b);
    if (b == 0) return a % 4 == 3 && is_prime(a);
    return is_prime(a * a + b * b);
}

/// First-quadrant Gaussian primes (re >= 1, im >= 0) of norm <= n, ordered by (norm, re).
inline std::vector<G> gaussian_primes(i64 n) {
    std::vector<std::pair<std::pair<i64, i64>, G>> tmp;
    for (i64 a = 1; a * a <= n; ++a)
        for (i64 b = 0; a * a + b * b <= n; ++b)
            if (is_gaussian_prime({a, b})) tmp.push_back({{a * a + b * b, a}, G{a, b}});
    std::sort(tmp.begin(), tmp.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<G> out;
    for (const auto& t : tmp) out.push_back(t.second);
    return out;
}

/// Quadratic character of k modulo the Gaussian prime pi, by exhaustive search of
/// square roots over a complete residue system {u+vi : 0 <= u,v < N(pi)}.
/// Slow (N(pi)^2 candidates); keep N(pi) small.
inline int gaussian_symbol(G k, G pi) {
    if (gdivides(pi, k)) return 0;
    const i64 n = gnorm(pi);
    for (i64 u = 0; u < n; ++u)
        for (i64 v = 0; v < n; ++v) {
            const G sq{u * u - v * v - k.re, 2 * u * v - k.im};
            if (gdivides(pi, sq)) return 1;
        }
    return -1;
}

/// Population mean/stdev.
inline std::pair<double, double> mean_stdev(const std::vector<double>& xs) {
    double s = 0;
    for (double x : xs) s += x;
    const double m = s / static_cast<double>(xs.size());
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    return {m, std::sqrt(v / static_cast<double>(xs.size()))};
}

/// Two-pass Pearson coefficient.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const auto [mx, sx] = mean_stdev(x);
    const auto [my, sy] = mean_stdev(y);
    double c = 0;
    for (std::size_t i = 0; i < x.size(); ++i) c += (x[i] - mx) * (y[i] - my);
    return c / static_cast<double>(x.size()) / (sx * sy);
}

/// Fraction of overlapping length-n windows of `signs` whose entries are all equal.
inline double run_fraction(const std::vector<int>& signs, int n) {
    i64 hits = 0, total = 0;
    for (std::size_t i = 0; i + n <= signs.size(); ++i) {
        bool same = true;
        for (int j = 1; j < n; ++j) same = same && signs[i + j] == signs[i];
        hits += same;
        ++total;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

/// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}
    i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng_); }
    G gauss(i64 r) { return {uniform(-r, r), uniform(-r, r)}; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
