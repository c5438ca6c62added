#pragma once

// On-disk prime cache.
//
//   PRIMECACHE v1 limit=<n> count=<k>\n
//   k little-endian 8-byte unsigned primes
//
// A PrimeCacheStore looks up caches in a directory and sieves (and saves) on a miss.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "legwalk/errors.hpp"
#include "legwalk/primes.hpp"

namespace legwalk {

inline std::string prime_cache_header(i64 limit, std::size_t count) {
    return "PRIMECACHE v1 limit=" + std::to_string(limit) + " count=" + std::to_string(count) + "\n";
}

/// Exact byte image of the cache file for `table`.
inline std::string serialize_prime_cache(const PrimeTable& table) {
    std::string out = prime_cache_header(table.limit(), table.size());
    out.reserve(out.size() + table.size() * 8);
    for (i64 p : table.primes()) {
        u64 v = static_cast<u64>(p);
        for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
    }
    return out;
}

namespace detail {
inline i64 parse_header_field(std::string_view token, std::string_view key) {
    if (token.substr(0, key.size()) != key) throw cache_error("prime cache: malformed header field");
    token.remove_prefix(key.size());
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v < 0)
        throw cache_error("prime cache: malformed number in header");
    return v;
}
}  // namespace detail

inline PrimeTable deserialize_prime_cache(std::string_view bytes) {
    const auto nl = bytes.find('\n');
    if (nl == std::string_view::npos) throw cache_error("prime cache: missing header line");
    std::istringstream header{std::string(bytes.substr(0, nl))};
    std::string magic, version, lim, cnt, extra;
    header >> magic >> version >> lim >> cnt;
    if (magic != "PRIMECACHE" || version != "v1" || (header >> extra))
        throw cache_error("prime cache: unrecognised header");
    const i64 limit = detail::parse_header_field(lim, "limit=");
    const i64 count = detail::parse_header_field(cnt, "count=");
    bytes.remove_prefix(nl + 1);
    if (bytes.size() != static_cast<std::size_t>(count) * 8)
        throw cache_error("prime cache: payload size does not match count");
    std::vector<i64> primes(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < primes.size(); ++i) {
        u64 v = 0;
        for (int b = 0; b < 8; ++b) v |= u64{static_cast<unsigned char>(bytes[i * 8 + b])} << (8 * b);
        primes[i] = static_cast<i64>(v);
    }
    try {
        return PrimeTable::from_sorted(limit, std::move(primes));
    } catch (const undefined_input_error& e) {
        throw cache_error(std::string("prime cache: ") + e.what());
    }
}

inline void write_prime_cache(const PrimeTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cache_error("cannot write prime cache " + path.string());
    const std::string bytes = serialize_prime_cache(table);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw cache_error("short write to prime cache " + path.string());
}

inline PrimeTable read_prime_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_error("cannot open prime cache " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_prime_cache(bytes);
}

/// 64-bit FNV-1a; used as the cache digest recorded in experiment reports.
constexpr u64 fnv1a64(std::string_view bytes) {
    u64 h = 0xcbf29ce484222325ULL;
    for (char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(u64 v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

inline std::string prime_table_digest(const PrimeTable& table) {
    return hex64(fnv1a64(serialize_prime_cache(table)));
}

inline std::filesystem::path prime_cache_path(const std::filesystem::path& dir, i64 limit) {
    return dir / ("primes-" + std::to_string(limit) + ".cache");
}

/// Supplies PrimeTables of at least a requested limit, backed by an optional cache directory.
class PrimeCacheStore {
public:
    PrimeCacheStore() = default;
    explicit PrimeCacheStore(std::optional<std::filesystem::path> dir, bool allow_build = true)
        : dir_(std::move(dir)), allow_build_(allow_build) {}

    [[nodiscard]] const std::optional<std::filesystem::path>& dir() const { return dir_; }

    /// (limit, path) for every cache file in the directory.
    [[nodiscard]] std::vector<std::pair<i64, std::filesystem::path>> cached() const {
        std::vector<std::pair<i64, std::filesystem::path>> out;
        if (!dir_ || !std::filesystem::is_directory(*dir_)) return out;
        for (const auto& entry : std::filesystem::directory_iterator(*dir_)) {
            const std::string name = entry.path().filename().string();
            if (!name.starts_with("primes-") || !name.ends_with(".cache")) continue;
            const std::string_view digits = std::string_view(name).substr(7, name.size() - 13);
            i64 l = 0;
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), l);
            if (ec == std::errc{} && ptr == digits.data() + digits.size()) out.emplace_back(l, entry.path());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Smallest cached limit >= `limit`, if any.
    [[nodiscard]] std::optional<std::filesystem::path> find(i64 limit) const {
        for (const auto& [l, path] : cached())
            if (l >= limit) return path;
        return std::nullopt;
    }

    [[nodiscard]] i64 largest_cached_limit() const {
        const auto all = cached();
        return all.empty() ? 0 : all.back().first;
    }

    /// Table with limit >= `limit`. Throws cache_error naming the required limit when
    /// building is disabled and no sufficient cache exists.
    [[nodiscard]] PrimeTable get(i64 limit) const {
        if (auto path = find(limit)) {
            PrimeTable t = read_prime_cache(*path);
            if (t.limit() < limit)
                throw cache_error("prime cache " + path->string() + " has limit " + std::to_string(t.limit()) +
                                  " but limit " + std::to_string(limit) + " is required");
            return t;
        }
        if (!allow_build_)
            throw cache_error("prime cache too small: largest cached limit is " +
                              std::to_string(largest_cached_limit()) + ", required limit is " +
                              std::to_string(limit) + " (run `legwalk sieve --limit " + std::to_string(limit) +
                              "`)");
        PrimeTable t = sieve_upto(limit);
        if (dir_) {
            std::filesystem::create_directories(*dir_);
            write_prime_cache(t, prime_cache_path(*dir_, limit));
        }
        return t;
    }

private:
    std::optional<std::filesystem::path> dir_;
    bool allow_build_ = true;
};

}  // namespace legwalk
