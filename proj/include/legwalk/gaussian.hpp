#pragma once

// Gaussian integers Z[i]: arithmetic, prime classification, norm-ordered
// enumeration of first-quadrant primes, the residue map Z[i]/(pi) -> Z/pZ and
// Gaussian Legendre symbols, together with brute-force oracles and checks of
// the symbol identities used to explain paired-walk correlations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "legwalk/errors.hpp"
#include "legwalk/modular.hpp"
#include "legwalk/primes.hpp"

namespace legwalk {

struct GaussInt {
    i64 re = 0;
    i64 im = 0;

    friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
    friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
    friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
    friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend constexpr bool operator==(GaussInt, GaussInt) = default;
};

inline constexpr GaussInt kI{0, 1};

constexpr GaussInt conj(GaussInt z) { return {z.re, -z.im}; }

/// N(z) = re^2 + im^2.
constexpr i64 norm(GaussInt z) { return z.re * z.re + z.im * z.im; }

/// z, iz, -z, -iz.
constexpr std::array<GaussInt, 4> associates(GaussInt z) {
    return {z, kI * z, -z, -(kI * z)};
}

/// True iff d | z in Z[i]. d must be nonzero.
constexpr bool divides(GaussInt d, GaussInt z) {
    const i64 n = norm(d);
    if (n == 0) throw undefined_input_error("divides: divisor is zero");
    const __int128 re = static_cast<__int128>(z.re) * d.re + static_cast<__int128>(z.im) * d.im;
    const __int128 im = static_cast<__int128>(z.im) * d.re - static_cast<__int128>(z.re) * d.im;
    return re % n == 0 && im % n == 0;
}

/// Exact quotient z / d; requires divides(d, z).
constexpr GaussInt exact_div(GaussInt z, GaussInt d) {
    if (!divides(d, z)) throw undefined_input_error("exact_div: not divisible");
    const i64 n = norm(d);
    const GaussInt t = z * conj(d);
    return {t.re / n, t.im / n};
}

inline std::string to_string(GaussInt z) {
    if (z.im == 0) return std::to_string(z.re);
    std::string s = z.re == 0 ? "" : std::to_string(z.re);
    if (z.im < 0) s += "-";
    else if (z.re != 0) s += "+";
    const i64 m = z.im < 0 ? -z.im : z.im;
    if (m != 1) s += std::to_string(m);
    return s + "i";
}

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i" (whitespace-free).
inline GaussInt parse_gauss_int(std::string_view text) {
    auto fail = [&] { throw config_error("cannot parse Gaussian integer '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    auto parse_int = [&](std::string_view s, bool imag) -> i64 {
        if (imag && (s.empty() || s == "+")) return 1;
        if (imag && s == "-") return -1;
        std::size_t pos = 0;
        bool neg = false;
        if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
            neg = s[0] == '-';
            pos = 1;
        }
        if (pos == s.size()) fail();
        i64 v = 0;
        for (; pos < s.size(); ++pos) {
            if (s[pos] < '0' || s[pos] > '9') fail();
            v = v * 10 + (s[pos] - '0');
        }
        return neg ? -v : v;
    };
    if (text.back() != 'i') return {parse_int(text, false), 0};
    text.remove_suffix(1);
    // split at the last sign that is not the leading character
    std::size_t split = std::string_view::npos;
    for (std::size_t i = text.size(); i-- > 1;)
        if (text[i] == '+' || text[i] == '-') {
            split = i;
            break;
        }
    if (split == std::string_view::npos) return {0, parse_int(text, true)};
    return {parse_int(text.substr(0, split), false), parse_int(text.substr(split), true)};
}

enum class GaussPrimeKind { Ramified, Split, Inert };

inline const char* to_string(GaussPrimeKind k) {
    switch (k) {
        case GaussPrimeKind::Ramified: return "ramified";
        case GaussPrimeKind::Split: return "split";
        case GaussPrimeKind::Inert: return "inert";
    }
    return "?";
}

/// Classification of a Gaussian prime and the rational prime p lying under it.
struct GaussPrimeClass {
    GaussPrimeKind kind;
    i64 p;
};

namespace detail {
template <class IsPrime>
std::optional<GaussPrimeClass> classify(GaussInt z, IsPrime&& prime) {
    const i64 n = norm(z);
    if (n == 2) return GaussPrimeClass{GaussPrimeKind::Ramified, 2};
    if (z.re == 0 || z.im == 0) {
        const i64 m = z.re == 0 ? (z.im < 0 ? -z.im : z.im) : (z.re < 0 ? -z.re : z.re);
        if (m % 4 == 3 && prime(m)) return GaussPrimeClass{GaussPrimeKind::Inert, m};
        return std::nullopt;
    }
    if (n % 4 == 1 && prime(n)) return GaussPrimeClass{GaussPrimeKind::Split, n};
    return std::nullopt;
}
}  // namespace detail

/// Classification when z is irreducible in Z[i], otherwise nullopt.
inline std::optional<GaussPrimeClass> is_gaussian_prime(GaussInt z) {
    return detail::classify(z, [](i64 n) { return is_prime(n); });
}

/// Associate of z with odd real part, preferring a positive real part.
/// For odd Gaussian primes this is the (alpha odd, beta even) form, unique up to sign.
inline GaussInt odd_real_associate(GaussInt z) {
    std::optional<GaussInt> fallback;
    for (GaussInt w : associates(z)) {
        if (w.re % 2 == 0) continue;
        if (w.re > 0) return w;
        if (!fallback) fallback = w;
    }
    if (fallback) return *fallback;
    throw undefined_input_error("odd_real_associate: no associate of " + to_string(z) + " has odd real part");
}

/// First-quadrant (re >= 1, im >= 0) Gaussian primes of norm <= max_norm, ordered by
/// (norm, re). `table` must cover max_norm.
inline std::vector<GaussInt> enumerate_gaussian_primes(const PrimeTable& table, i64 max_norm) {
    if (max_norm < 2) throw undefined_input_error("enumerate_gaussian_primes: max_norm must be >= 2");
    table.require_below_limit(max_norm, "enumerate_gaussian_primes");
    std::vector<GaussInt> out;
    const auto prime = [&](i64 n) { return table.contains(n); };
    for (i64 x = 1; x * x <= max_norm; ++x)
        for (i64 y = 0; x * x + y * y <= max_norm; ++y)
            if (detail::classify(GaussInt{x, y}, prime)) out.push_back({x, y});
    std::sort(out.begin(), out.end(), [](GaussInt a, GaussInt b) {
        const i64 na = norm(a), nb = norm(b);
        return na != nb ? na < nb : a.re < b.re;
    });
    return out;
}

inline std::vector<GaussInt> enumerate_gaussian_primes(i64 max_norm) {
    if (max_norm < 2) throw undefined_input_error("enumerate_gaussian_primes: max_norm must be >= 2");
    return enumerate_gaussian_primes(sieve_upto(max_norm + 1), max_norm);
}

/// pi_G(x) = 2 pi(x;4,1) + pi(floor(sqrt x);4,3) + 1.
inline i64 count_gaussian_primes(const PrimeTable& table, i64 x) {
    if (x < 2) throw undefined_input_error("count_gaussian_primes: x must be >= 2");
    table.require_below_limit(x, "count_gaussian_primes");
    return 2 * count_primes_ap(table, x, APClass(4, 1)) + count_primes_ap(table, isqrt(x), APClass(4, 3)) + 1;
}

/// pi_G(x) over its prime-number-theorem estimate 2x/(phi(4) ln x) + sqrt(x)/(phi(4) ln sqrt x).
inline double gaussian_density_ratio(const PrimeTable& table, i64 x) {
    if (x < 4) throw undefined_input_error("gaussian_density_ratio: x must be >= 4");
    const double xd = static_cast<double>(x);
    const double phi4 = static_cast<double>(totient(4));
    const double root = std::sqrt(xd);
    const double estimate = 2.0 * xd / (phi4 * std::log(xd)) + root / (phi4 * std::log(root));
    return static_cast<double>(count_gaussian_primes(table, x)) / estimate;
}

namespace detail {
inline GaussPrimeClass require_symbol_modulus(GaussInt pi) {
    const auto cls = is_gaussian_prime(pi);
    if (!cls) throw invalid_modulus_error(to_string(pi) + " is not a Gaussian prime");
    if (cls->kind == GaussPrimeKind::Ramified)
        throw invalid_modulus_error("Gaussian Legendre symbol is undefined modulo an associate of 1+i");
    return *cls;
}
}  // namespace detail

/// Image of k = a+bi under Z[i]/(pi) -> Z/pZ for a split prime pi = alpha+beta*i:
/// r = a + alpha^{-1} b beta (mod p). pi divides k - r.
inline i64 residue_map(GaussInt k, GaussInt pi) {
    const auto cls = is_gaussian_prime(pi);
    if (!cls || cls->kind != GaussPrimeKind::Split)
        throw invalid_modulus_error("residue_map needs a split Gaussian prime, got " + to_string(pi));
    const i64 p = cls->p;
    const i64 alpha_inv = mod_inverse(pi.re, p);
    const i64 b_beta = mul_mod(mod_floor(k.im, p), mod_floor(pi.im, p), p);
    return mod_floor(k.re + mul_mod(alpha_inv, b_beta, p), p);
}

/// Gaussian Legendre symbol [numerator / modulus].
struct GLSymbol {
    LegendreValue value;
    GaussInt numerator;
    GaussInt modulus;
};

/// [k/pi] via the rational Legendre symbol: (N(k)/alpha) for inert pi = unit*alpha,
/// (r/p) with r the residue-map image for split pi. Zero when pi | k.
inline GLSymbol gaussian_legendre(GaussInt k, GaussInt pi) {
    const auto cls = detail::require_symbol_modulus(pi);
    if (cls.kind == GaussPrimeKind::Inert)
        return {legendre(mul_mod(k.re, k.re, cls.p) + mul_mod(k.im, k.im, cls.p), cls.p), k, pi};
    return {legendre(residue_map(k, pi), cls.p), k, pi};
}

/// Second route for split moduli: ((a alpha + b beta)/p) evaluated on the odd-real-part
/// associate of pi, where (alpha/p) = 1. Inert moduli use the norm form.
inline LegendreValue gaussian_legendre_linear(GaussInt k, GaussInt pi) {
    const auto cls = detail::require_symbol_modulus(pi);
    const i64 p = cls.p;
    if (cls.kind == GaussPrimeKind::Inert) return legendre(mul_mod(k.re, k.re, p) + mul_mod(k.im, k.im, p), p);
    const GaussInt m = odd_real_associate(pi);
    return legendre(mul_mod(mod_floor(k.re, p), mod_floor(m.re, p), p) +
                        mul_mod(mod_floor(k.im, p), mod_floor(m.im, p), p),
                    p);
}

/// Oracle: decides solvability of x^2 ≡ k (mod pi) by exhaustive search over residue
/// representatives (integers 0..p-1 for split pi, u+vi with u,v in [0,alpha) for inert).
inline int gls_bruteforce(GaussInt k, GaussInt pi) {
    const auto cls = detail::require_symbol_modulus(pi);
    if (divides(pi, k)) return 0;
    const i64 p = cls.p;
    const i64 a = mod_floor(k.re, p), b = mod_floor(k.im, p);
    if (cls.kind == GaussPrimeKind::Split) {
        // pi | z  <=>  z * conj(pi) ≡ 0 componentwise mod p; linear in z, so reduce mod p.
        const i64 al = mod_floor(pi.re, p), be = mod_floor(pi.im, p);
        for (i64 x = 1; x < p; ++x) {
            const i64 zr = mod_floor(x * x % p - a, p);
            const i64 zi = mod_floor(-b, p);
            const i64 re = (zr * al + zi * be) % p;
            const i64 im = mod_floor(zi * al - zr * be, p);
            if (re == 0 && im == 0) return 1;
        }
        return -1;
    }
    for (i64 u = 0; u < p; ++u)
        for (i64 v = 0; v < p; ++v)
            if (mod_floor(u * u - v * v - a, p) == 0 && mod_floor(2 * u * v - b, p) == 0) return 1;
    return -1;
}

/// Outcome of checking the three Gaussian symbol identities for a split modulus.
struct Theorem4Result {
    bool i_identity = false;           ///< [i/pi] = (-1)^((p-1)/4)
    bool one_plus_i_identity = false;  ///< [(1+i)/pi] = (-1)^(((alpha+beta)^2-1)/8)
    bool reciprocity = false;          ///< [k/pi] = [pi/k] for every tested k
    i64 reciprocity_checked = 0;
    std::vector<GaussInt> reciprocity_failures;

    [[nodiscard]] bool all() const { return i_identity && one_plus_i_identity && reciprocity; }
};

/// Checks the identities for split `pi`. Both arguments are taken in their
/// (alpha odd, beta even) associate form; `others` are candidate Gaussian primes k,
/// of which the ramified one and associates of pi are skipped.
inline Theorem4Result theorem4_identities(GaussInt pi, std::span<const GaussInt> others) {
    const auto cls = is_gaussian_prime(pi);
    if (!cls || cls->kind != GaussPrimeKind::Split)
        throw invalid_modulus_error("theorem4_identities needs a split Gaussian prime, got " + to_string(pi));
    const i64 p = cls->p;
    const GaussInt m = odd_real_associate(pi);
    Theorem4Result out;

    const int twist = ((p - 1) / 4) % 2 == 0 ? 1 : -1;
    out.i_identity = gaussian_legendre(kI, m).value == twist;

    const i64 s = m.re + m.im;
    const int sup2 = ((s * s - 1) / 8) % 2 == 0 ? 1 : -1;
    out.one_plus_i_identity = gaussian_legendre(GaussInt{1, 1}, m).value == sup2;

    for (GaussInt k : others) {
        const auto kc = is_gaussian_prime(k);
        if (!kc || kc->kind == GaussPrimeKind::Ramified || divides(pi, k)) continue;
        const GaussInt kn = odd_real_associate(k);
        ++out.reciprocity_checked;
        if (gaussian_legendre(kn, m).value != gaussian_legendre(m, kn).value) out.reciprocity_failures.push_back(k);
    }
    out.reciprocity = out.reciprocity_failures.empty();
    return out;
}

/// First-quadrant pair (alpha+beta i, beta+alpha i), alpha < beta, of norm p ≡ 1 (mod 4).
inline std::pair<GaussInt, GaussInt> split_pair(i64 p) {
    if (p % 4 != 1 || !is_prime(p)) throw invalid_modulus_error(std::to_string(p) + " is not a prime ≡ 1 mod 4");
    for (i64 a = 1; 2 * a * a < p; ++a) {
        const i64 b = isqrt(p - a * a);
        if (a * a + b * b == p) return {GaussInt{a, b}, GaussInt{b, a}};
    }
    throw invalid_modulus_error("no two-square decomposition of " + std::to_string(p));
}

struct ConjectureViolation {
    GaussInt pi1, pi2, k;
    int product;   ///< [k/pi1][k/pi2]
    int expected;  ///< (q/p)
};

/// Scans [k/pi1][k/pi2] = (q/p) for every split pair of norm p <= p_max and every
/// first-quadrant split k of norm q <= q_max, q != p. Returns the violations.
inline std::vector<ConjectureViolation> conjecture1_scan(i64 p_max, i64 q_max) {
    std::vector<ConjectureViolation> out;
    if (p_max < 5 || q_max < 5) return out;
    const PrimeTable table = sieve_upto(std::max(p_max, q_max) + 1);
    const auto ks = enumerate_gaussian_primes(table, q_max);
    for (i64 p : table.primes()) {
        if (p > p_max) break;
        if (p % 4 != 1) continue;
        const auto [pi1, pi2] = split_pair(p);
        for (GaussInt k : ks) {
            const i64 q = norm(k);
            if (q == p || k.im == 0 || q == 2) continue;
            const int expected = legendre(q, p).value();
            const int product = (gaussian_legendre(k, pi1).value * gaussian_legendre(k, pi2).value).value();
            if (product != expected) out.push_back({pi1, pi2, k, product, expected});
        }
    }
    return out;
}

/// The four symbols pi_{1a}, pi_{1b}, pi_{2a}, pi_{2b} for pi1 = alpha+beta i, pi2 = beta+alpha i,
/// k_a = a+bi, k_b = b+ai, and the relations they satisfy.
struct PairRelations {
    int pi1a = 0, pi1b = 0, pi2a = 0, pi2b = 0;
    int twist = 0;     ///< (-1)^((p-1)/4)
    int q_over_p = 0;  ///< (q/p)
    bool rel_1a1b = false, rel_2a2b = false, rel_1a2a = false, rel_1b2b = false;

    [[nodiscard]] bool all() const { return rel_1a1b && rel_2a2b && rel_1a2a && rel_1b2b; }
};

inline PairRelations pair_relations_check(GaussInt pi, GaussInt k) {
    const auto pc = is_gaussian_prime(pi);
    const auto kc = is_gaussian_prime(k);
    if (!pc || pc->kind != GaussPrimeKind::Split)
        throw invalid_modulus_error("pair_relations_check: " + to_string(pi) + " is not a split prime");
    if (!kc || kc->kind != GaussPrimeKind::Split)
        throw undefined_input_error("pair_relations_check: " + to_string(k) + " is not a split prime");
    const i64 p = pc->p, q = kc->p;
    if (p == q) throw undefined_input_error("pair_relations_check: norms must differ");
    const GaussInt pi1 = pi, pi2{pi.im, pi.re};
    const GaussInt ka = k, kb{k.im, k.re};
    PairRelations r;
    r.pi1a = gaussian_legendre(ka, pi1).value.value();
    r.pi1b = gaussian_legendre(kb, pi1).value.value();
    r.pi2a = gaussian_legendre(ka, pi2).value.value();
    r.pi2b = gaussian_legendre(kb, pi2).value.value();
    r.twist = ((p - 1) / 4) % 2 == 0 ? 1 : -1;
    r.q_over_p = legendre(q, p).value();
    r.rel_1a1b = r.pi1a * r.pi1b == r.twist * r.q_over_p;
    r.rel_2a2b = r.pi2a * r.pi2b == r.twist * r.q_over_p;
    r.rel_1a2a = r.pi1a * r.pi2a == r.q_over_p;
    r.rel_1b2b = r.pi1b * r.pi2b == r.q_over_p;
    return r;
}

/// CSV `re,im,norm,kind`, one row per prime, LF endings.
inline std::string gaussian_primes_csv(std::span<const GaussInt> primes) {
    std::string out = "re,im,norm,kind\n";
    for (GaussInt z : primes) {
        const auto cls = is_gaussian_prime(z);
        out += std::to_string(z.re) + "," + std::to_string(z.im) + "," + std::to_string(norm(z)) + "," +
               (cls ? to_string(cls->kind) : "composite") + "\n";
    }
    return out;
}

}  // namespace legwalk
