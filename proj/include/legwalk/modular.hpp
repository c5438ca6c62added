#pragma once

// Exact modular arithmetic over the rational integers: gcd, fast exponentiation,
// inverses by extended Euclid, and the Legendre symbol via Euler's criterion.
// Brute-force quadratic-residue sets live here as well; they are the reference
// the criterion is checked against.

#include <cstdint>
#include <set>
#include <string>

#include "legwalk/errors.hpp"

namespace legwalk {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Value of a Legendre symbol: -1, 0 or +1.
class LegendreValue {
public:
    constexpr LegendreValue() = default;
    constexpr explicit LegendreValue(int v) : value_(v) {
        if (v < -1 || v > 1) throw undefined_input_error("LegendreValue must be -1, 0 or +1");
    }

    [[nodiscard]] constexpr int value() const { return value_; }
    [[nodiscard]] constexpr bool is_residue() const { return value_ == 1; }
    [[nodiscard]] constexpr bool is_zero() const { return value_ == 0; }

    friend constexpr LegendreValue operator*(LegendreValue a, LegendreValue b) {
        return LegendreValue(a.value_ * b.value_);
    }
    friend constexpr bool operator==(LegendreValue, LegendreValue) = default;
    friend constexpr bool operator==(LegendreValue a, int b) { return a.value_ == b; }

private:
    int value_ = 0;
};

/// Least non-negative residue of a modulo m (m > 0).
constexpr i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Greatest common divisor, always non-negative. gcd(a, 0) = |a|.
constexpr i64 gcd(i64 a, i64 b) {
    if (a == 0 && b == 0) throw undefined_input_error("gcd(0, 0) is undefined");
    u64 x = a < 0 ? u64(0) - u64(a) : u64(a);
    u64 y = b < 0 ? u64(0) - u64(b) : u64(b);
    while (y != 0) {
        u64 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<i64>(x);
}

constexpr i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<__int128>(a) * b % m);
}

/// base^exp mod m by square-and-multiply; intermediates are 128-bit so any m < 2^63 is safe.
constexpr i64 mod_pow(i64 base, i64 exp, i64 m) {
    if (m < 2) throw undefined_input_error("mod_pow: modulus must be >= 2");
    if (exp < 0) throw undefined_input_error("mod_pow: negative exponent");
    i64 result = 1;
    base = mod_floor(base, m);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m via the extended Euclidean algorithm. Result in [1, m).
constexpr i64 mod_inverse(i64 a, i64 m) {
    if (m < 2) throw undefined_input_error("mod_inverse: modulus must be >= 2");
    i64 r0 = m, r1 = mod_floor(a, m);
    if (r1 == 0) throw no_inverse_error("mod_inverse: argument is divisible by the modulus");
    i64 s0 = 0, s1 = 1;  // invariant: s_k * a ≡ r_k (mod m)
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        i64 s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw no_inverse_error("mod_inverse: argument shares a factor with the modulus");
    return mod_floor(s0, m);
}

namespace detail {
constexpr void require_odd_modulus(i64 p) {
    if (p < 3 || p % 2 == 0)
        throw invalid_modulus_error("Legendre symbol needs an odd prime modulus, got " + std::to_string(p));
}
}  // namespace detail

/// Legendre symbol (a/p) by Euler's criterion. `a` may be negative; it is reduced mod p first.
/// p must be an odd prime; only oddness is checked here.
constexpr LegendreValue legendre(i64 a, i64 p) {
    detail::require_odd_modulus(p);
    const i64 r = mod_pow(a, (p - 1) / 2, p);
    if (r == 0) return LegendreValue(0);
    if (r == 1) return LegendreValue(1);
    if (r == p - 1) return LegendreValue(-1);
    throw invalid_modulus_error("Euler's criterion produced " + std::to_string(r) + "; modulus " +
                                std::to_string(p) + " is not prime");
}

/// { x^2 mod p : 1 <= x < p } by enumeration. Oracle scale only (p <= 10^5).
inline std::set<i64> qr_set_bruteforce(i64 p) {
    detail::require_odd_modulus(p);
    std::set<i64> out;
    for (i64 x = 1; x < p; ++x) out.insert(x * x % p);
    return out;
}

/// The sign in (q/p) = sign * (p/q) for distinct odd primes p, q.
constexpr int reciprocity_sign(i64 p, i64 q) {
    detail::require_odd_modulus(p);
    detail::require_odd_modulus(q);
    if (p == q) throw undefined_input_error("reciprocity_sign: primes must be distinct");
    return (((p - 1) / 2) * ((q - 1) / 2)) % 2 == 0 ? 1 : -1;
}

}  // namespace legwalk
