#pragma once

// Rational primes: a segmented sieve of Eratosthenes producing an immutable
// PrimeTable, prime counting overall and in arithmetic progressions, Euler's
// totient, and density ratios against x / ln x.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "legwalk/errors.hpp"
#include "legwalk/modular.hpp"

namespace legwalk {

/// floor(sqrt(n)) for n >= 0, exact for the whole i64 range.
constexpr i64 isqrt(i64 n) {
    if (n < 0) throw undefined_input_error("isqrt of a negative number");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Deterministic trial division. Used for one-off checks, not bulk work.
constexpr bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (i64 d = 5; d * d <= n; d += 6)
        if (n % d == 0 || n % (d + 2) == 0) return false;
    return true;
}

/// Residue class `residue mod modulus`.
struct APClass {
    i64 modulus = 2;
    i64 residue = 1;

    APClass() = default;
    APClass(i64 m, i64 r) : modulus(m), residue(r) {
        if (m < 2) throw undefined_input_error("APClass modulus must be >= 2");
        if (r < 0 || r >= m) throw undefined_input_error("APClass residue must lie in [0, modulus)");
    }

    [[nodiscard]] bool contains(i64 n) const { return mod_floor(n, modulus) == residue; }
    [[nodiscard]] bool coprime() const { return gcd(residue, modulus) == 1; }
};

/// Primes below an exclusive bound, in increasing order, with O(1) membership.
/// Immutable once built; safe to share between threads.
class PrimeTable {
public:
    PrimeTable() = default;

    /// Builds a table from an already sorted prime list, validating ordering and bounds.
    static PrimeTable from_sorted(i64 limit, std::vector<i64> primes) {
        if (limit < 0) throw undefined_input_error("PrimeTable limit must be >= 0");
        if (limit > 2 && (primes.empty() || primes.front() != 2))
            throw undefined_input_error("PrimeTable must start at 2");
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (primes[i] < 2 || primes[i] >= limit)
                throw undefined_input_error("PrimeTable entry outside [2, limit)");
            if (i > 0 && primes[i] <= primes[i - 1])
                throw undefined_input_error("PrimeTable entries must be strictly increasing");
        }
        PrimeTable t;
        t.limit_ = limit;
        t.primes_ = std::move(primes);
        t.bits_.assign(static_cast<std::size_t>(limit / 64 + 1), 0);
        for (i64 p : t.primes_) t.bits_[static_cast<std::size_t>(p >> 6)] |= u64{1} << (p & 63);
        return t;
    }

    [[nodiscard]] i64 limit() const { return limit_; }
    [[nodiscard]] std::span<const i64> primes() const { return primes_; }
    [[nodiscard]] std::size_t size() const { return primes_.size(); }

    /// Membership for n < limit; anything outside [2, limit) reports false.
    [[nodiscard]] bool contains(i64 n) const {
        if (n < 2 || n >= limit_) return false;
        return (bits_[static_cast<std::size_t>(n >> 6)] >> (n & 63)) & 1;
    }

    void require_below_limit(i64 x, const char* what) const {
        if (x >= limit_)
            throw out_of_range_error(std::string(what) + ": x=" + std::to_string(x) +
                                     " is not below the table limit " + std::to_string(limit_));
    }

private:
    i64 limit_ = 0;
    std::vector<i64> primes_;
    std::vector<u64> bits_;
};

inline constexpr i64 kDefaultSegmentSize = i64{1} << 20;

/// Segmented sieve of Eratosthenes: all primes p < limit.
/// Working memory per segment is `segment_size` bytes plus the base primes up to sqrt(limit).
inline PrimeTable sieve_upto(i64 limit, i64 segment_size = kDefaultSegmentSize) {
    if (limit < 0) throw undefined_input_error("sieve_upto: limit must be >= 0");
    if (segment_size < 1) throw undefined_input_error("sieve_upto: segment size must be positive");
    if (limit < 3) return PrimeTable::from_sorted(limit, {});

    // Base primes up to sqrt(limit - 1) with a plain sieve.
    const i64 root = isqrt(limit - 1);
    std::vector<bool> small(static_cast<std::size_t>(root + 1), true);
    std::vector<i64> base;
    for (i64 i = 2; i <= root; ++i) {
        if (!small[static_cast<std::size_t>(i)]) continue;
        base.push_back(i);
        for (i64 j = i * i; j <= root; j += i) small[static_cast<std::size_t>(j)] = false;
    }

    std::vector<i64> primes;
    if (limit > 100) {
        const double ln = std::log(static_cast<double>(limit));
        primes.reserve(static_cast<std::size_t>(static_cast<double>(limit) / (ln - 1.1)) + 16);
    }
    std::vector<std::uint8_t> composite;
    for (i64 lo = 2; lo < limit; lo += segment_size) {
        const i64 hi = std::min(limit, lo + segment_size);
        composite.assign(static_cast<std::size_t>(hi - lo), 0);
        for (i64 p : base) {
            if (p * p >= hi) break;
            i64 start = std::max(p * p, (lo + p - 1) / p * p);
            for (i64 j = start; j < hi; j += p) composite[static_cast<std::size_t>(j - lo)] = 1;
        }
        for (i64 n = lo; n < hi; ++n)
            if (!composite[static_cast<std::size_t>(n - lo)]) primes.push_back(n);
    }
    return PrimeTable::from_sorted(limit, std::move(primes));
}

/// Increasing subsequence of the table's primes lying in `cls`.
inline std::vector<i64> primes_in_ap(const PrimeTable& table, const APClass& cls) {
    std::vector<i64> out;
    for (i64 p : table.primes())
        if (cls.contains(p)) out.push_back(p);
    return out;
}

/// pi(x) = #{p <= x}.
inline i64 count_primes(const PrimeTable& table, i64 x) {
    table.require_below_limit(x, "count_primes");
    auto ps = table.primes();
    return static_cast<i64>(std::upper_bound(ps.begin(), ps.end(), x) - ps.begin());
}

/// pi(x; m, r) = #{p <= x : p ≡ r (mod m)}.
inline i64 count_primes_ap(const PrimeTable& table, i64 x, const APClass& cls) {
    table.require_below_limit(x, "count_primes_ap");
    i64 n = 0;
    for (i64 p : table.primes()) {
        if (p > x) break;
        if (cls.contains(p)) ++n;
    }
    return n;
}

/// Euler's phi by trial factorisation.
constexpr i64 totient(i64 n) {
    if (n < 1) throw undefined_input_error("totient: n must be >= 1");
    i64 result = n;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        while (n % d == 0) n /= d;
        result -= result / d;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// pi(x) / (x / ln x), or pi(x; m, r) / (x / (phi(m) ln x)) when a class is given.
/// The class must be coprime; non-coprime classes hold finitely many primes.
inline double density_ratio(const PrimeTable& table, i64 x, std::optional<APClass> cls = std::nullopt) {
    if (x < 3) throw undefined_input_error("density_ratio: x must be >= 3");
    table.require_below_limit(x, "density_ratio");
    const double lx = std::log(static_cast<double>(x));
    const double xd = static_cast<double>(x);
    if (!cls) return static_cast<double>(count_primes(table, x)) / (xd / lx);
    if (!cls->coprime())
        throw undefined_input_error("density_ratio: residue class is not coprime to its modulus");
    const double phi = static_cast<double>(totient(cls->modulus));
    return static_cast<double>(count_primes_ap(table, x, *cls)) / (xd / (phi * lx));
}

}  // namespace legwalk
