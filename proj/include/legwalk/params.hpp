#pragma once

// Parsing of numeric command-line/config values: integers in plain, scientific
// ("1e6", "2.5e3") or power ("10^6") notation, and x-grids ("10^1..10^6",
// "2..50", "10,100,1000").

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "legwalk/errors.hpp"
#include "legwalk/modular.hpp"

namespace legwalk {

namespace detail {
inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline i64 parse_plain(std::string_view s, std::string_view whole) {
    i64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw config_error("not an integer: '" + std::string(whole) + "'");
    return v;
}

inline i64 checked_mul(i64 a, i64 b, std::string_view whole) {
    i64 r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw config_error("integer overflow in '" + std::string(whole) + "'");
    return r;
}
}  // namespace detail

/// Integer from "123", "-7", "1e6", "2.5E3" or "10^6". Non-integral values are rejected.
inline i64 parse_integer(std::string_view text) {
    const std::string_view s = detail::trim(text);
    if (s.empty()) throw config_error("empty integer");
    if (const auto caret = s.find('^'); caret != std::string_view::npos) {
        const i64 base = detail::parse_plain(s.substr(0, caret), text);
        const i64 exp = detail::parse_plain(s.substr(caret + 1), text);
        if (exp < 0) throw config_error("negative exponent in '" + std::string(text) + "'");
        i64 v = 1;
        for (i64 i = 0; i < exp; ++i) v = detail::checked_mul(v, base, text);
        return v;
    }
    const auto e = s.find_first_of("eE");
    if (e == std::string_view::npos) return detail::parse_plain(s, text);

    std::string_view mant = s.substr(0, e);
    i64 exp = detail::parse_plain(s.substr(e + 1), text);
    bool neg = false;
    if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
        neg = mant.front() == '-';
        mant.remove_prefix(1);
    }
    std::string digits;
    if (const auto dot = mant.find('.'); dot != std::string_view::npos) {
        digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
        exp -= static_cast<i64>(mant.size() - dot - 1);
    } else {
        digits = std::string(mant);
    }
    if (digits.empty()) throw config_error("not an integer: '" + std::string(text) + "'");
    for (char c : digits)
        if (c < '0' || c > '9') throw config_error("not an integer: '" + std::string(text) + "'");
    while (exp < 0) {
        if (digits.empty() || digits.back() != '0')
            throw config_error("not an integer: '" + std::string(text) + "'");
        digits.pop_back();
        ++exp;
    }
    i64 v = digits.empty() ? 0 : detail::parse_plain(digits, text);
    for (i64 i = 0; i < exp; ++i) v = detail::checked_mul(v, 10, text);
    return neg ? -v : v;
}

/// Grid of x values. "10^a..10^b" is the powers of ten from 10^a to 10^b; "lo..hi" is every
/// integer in [lo, hi]; otherwise a comma-separated list.
inline std::vector<i64> parse_grid(std::string_view text) {
    const std::string_view s = detail::trim(text);
    std::vector<i64> out;
    if (const auto dots = s.find(".."); dots != std::string_view::npos) {
        const std::string_view a = detail::trim(s.substr(0, dots)), b = detail::trim(s.substr(dots + 2));
        if (a.starts_with("10^") && b.starts_with("10^")) {
            const i64 lo = detail::parse_plain(a.substr(3), text), hi = detail::parse_plain(b.substr(3), text);
            if (lo < 0 || hi < lo || hi > 18) throw config_error("bad power-of-ten grid '" + std::string(text) + "'");
            for (i64 e = lo; e <= hi; ++e) {
                i64 v = 1;
                for (i64 i = 0; i < e; ++i) v *= 10;
                out.push_back(v);
            }
            return out;
        }
        const i64 lo = parse_integer(a), hi = parse_integer(b);
        if (hi < lo) throw config_error("empty grid '" + std::string(text) + "'");
        if (hi - lo > 10'000'000) throw config_error("grid '" + std::string(text) + "' has too many points");
        for (i64 x = lo; x <= hi; ++x) out.push_back(x);
        return out;
    }
    std::string_view rest = s;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(parse_integer(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (out.empty()) throw config_error("empty grid");
    return out;
}

}  // namespace legwalk
