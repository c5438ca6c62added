#pragma once

// Verification suites: every symbol identity is checked against a brute-force
// oracle or an independent algebraic route over a bounded range. Failures are
// report content; the caller decides what to do with them.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "legwalk/gaussian.hpp"
#include "legwalk/modular.hpp"
#include "legwalk/primes.hpp"

namespace legwalk {

enum class VerifySuite { Modular, Gaussian, Relations, Conjecture, All };
enum class VerifyScale { Quick, Full };

inline VerifySuite parse_verify_suite(std::string_view s) {
    if (s == "modular") return VerifySuite::Modular;
    if (s == "gaussian") return VerifySuite::Gaussian;
    if (s == "relations") return VerifySuite::Relations;
    if (s == "conjecture") return VerifySuite::Conjecture;
    if (s == "all") return VerifySuite::All;
    throw config_error("unknown verify suite '" + std::string(s) + "'");
}

inline VerifyScale parse_verify_scale(std::string_view s) {
    if (s == "quick") return VerifyScale::Quick;
    if (s == "full") return VerifyScale::Full;
    throw config_error("unknown verify scale '" + std::string(s) + "'");
}

struct CheckResult {
    std::string suite;
    std::string name;
    i64 checked = 0;
    i64 failures = 0;
    std::vector<std::string> counterexamples = {};  ///< first few failures

    [[nodiscard]] bool passed() const { return failures == 0 && checked > 0; }

    void record(bool ok, const std::function<std::string()>& describe) {
        ++checked;
        if (ok) return;
        ++failures;
        if (counterexamples.size() < kMaxListed) counterexamples.push_back(describe());
    }

    static constexpr std::size_t kMaxListed = 10;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    [[nodiscard]] bool passed() const {
        for (const auto& c : checks)
            if (!c.passed()) return false;
        return !checks.empty();
    }

    /// One line per check, then indented counterexamples.
    [[nodiscard]] std::string text() const {
        std::string out;
        for (const auto& c : checks) {
            out += std::string(c.passed() ? "PASS " : "FAIL ") + c.suite + "/" + c.name +
                   " checked=" + std::to_string(c.checked) + " failures=" + std::to_string(c.failures) + "\n";
            for (const auto& ce : c.counterexamples) out += "    " + ce + "\n";
        }
        out += passed() ? "ALL PASSED\n" : "FAILURES PRESENT\n";
        return out;
    }

    [[nodiscard]] nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = 1;
        j["passed"] = passed();
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"suite", c.suite},
                                   {"name", c.name},
                                   {"checked", c.checked},
                                   {"failures", c.failures},
                                   {"passed", c.passed()},
                                   {"counterexamples", c.counterexamples}});
        return j;
    }
};

/// Optional (p, q) focus for the relations suite.
struct VerifyOptions {
    std::optional<i64> p;
    std::optional<i64> q;
};

namespace detail {

inline std::string sym(GaussInt k, GaussInt pi) { return "[" + to_string(k) + " / " + to_string(pi) + "]"; }

/// Gaussian integers with norm <= bound, all quadrants.
inline std::vector<GaussInt> gaussian_disc(i64 bound) {
    std::vector<GaussInt> out;
    const i64 r = isqrt(bound);
    for (i64 a = -r; a <= r; ++a)
        for (i64 b = -r; b <= r; ++b)
            if (a * a + b * b <= bound) out.push_back({a, b});
    return out;
}

inline std::vector<i64> odd_primes_upto(const PrimeTable& t, i64 bound) {
    std::vector<i64> out;
    for (i64 p : t.primes()) {
        if (p > bound) break;
        if (p > 2) out.push_back(p);
    }
    return out;
}

inline void verify_modular(VerifyScale scale, VerifyReport& rep) {
    const bool full = scale == VerifyScale::Full;
    const i64 sieve_bound = full ? 100'000 : 10'000;
    const i64 euler_bound = full ? 10'000 : 500;
    const i64 mult_bound = full ? 500 : 100;
    const PrimeTable table = sieve_upto(sieve_bound + 1);

    CheckResult sieve{"modular", "sieve-vs-trial-division"};
    for (i64 n = 0; n <= sieve_bound; ++n)
        sieve.record(table.contains(n) == is_prime(n), [&] { return "n=" + std::to_string(n); });
    rep.checks.push_back(std::move(sieve));

    CheckResult euler{"modular", "euler-criterion-vs-bruteforce"};
    for (i64 p : odd_primes_upto(table, euler_bound)) {
        const auto qr = qr_set_bruteforce(p);
        for (i64 a = 0; a < p; ++a) {
            const int v = legendre(a, p).value();
            const int expect = a == 0 ? 0 : (qr.count(a) ? 1 : -1);
            euler.record(v == expect, [&] { return "(" + std::to_string(a) + "/" + std::to_string(p) + ")"; });
        }
    }
    rep.checks.push_back(std::move(euler));

    CheckResult mult{"modular", "multiplicativity"};
    for (i64 p : odd_primes_upto(table, mult_bound))
        for (i64 a = 0; a < p; ++a)
            for (i64 b = 0; b < p; ++b)
                mult.record(legendre(a, p) * legendre(b, p) == legendre(a * b % p, p), [&] {
                    return "p=" + std::to_string(p) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
                });
    rep.checks.push_back(std::move(mult));

    CheckResult period{"modular", "periodicity"};
    CheckResult sup1{"modular", "supplement-minus-one"};
    CheckResult sup2{"modular", "supplement-two"};
    CheckResult inverse{"modular", "mod-inverse"};
    for (i64 p : odd_primes_upto(table, euler_bound)) {
        const i64 step = full ? 1 : std::max<i64>(1, p / 50);
        for (i64 a = -p; a < p; a += step)
            period.record(legendre(a, p) == legendre(a + p, p),
                          [&] { return "p=" + std::to_string(p) + " a=" + std::to_string(a); });
        sup1.record(legendre(-1, p) == ((p - 1) / 2 % 2 == 0 ? 1 : -1), [&] { return "p=" + std::to_string(p); });
        sup2.record(legendre(2, p) == ((p * p - 1) / 8 % 2 == 0 ? 1 : -1), [&] { return "p=" + std::to_string(p); });
        for (i64 a = 1; a < p; a += step)
            inverse.record(a * mod_inverse(a, p) % p == 1,
                           [&] { return "a=" + std::to_string(a) + " p=" + std::to_string(p); });
    }
    rep.checks.push_back(std::move(period));
    rep.checks.push_back(std::move(sup1));
    rep.checks.push_back(std::move(sup2));
    rep.checks.push_back(std::move(inverse));

    CheckResult recip{"modular", "quadratic-reciprocity"};
    const auto small = odd_primes_upto(table, 500);
    for (i64 p : small)
        for (i64 q : small)
            if (p != q)
                recip.record(legendre(q, p).value() == reciprocity_sign(p, q) * legendre(p, q).value(),
                             [&] { return "p=" + std::to_string(p) + " q=" + std::to_string(q); });
    rep.checks.push_back(std::move(recip));

    CheckResult g{"modular", "gcd-vs-naive"};
    std::mt19937_64 rng(20160301);
    std::uniform_int_distribution<i64> dist(-5000, 5000);
    for (int i = 0; i < (full ? 20000 : 2000); ++i) {
        const i64 a = dist(rng), b = dist(rng);
        if (a == 0 && b == 0) continue;
        i64 naive = 1;
        const i64 m = std::max(a < 0 ? -a : a, b < 0 ? -b : b);
        for (i64 d = 1; d <= m; ++d)
            if (a % d == 0 && b % d == 0) naive = d;
        g.record(gcd(a, b) == naive, [&] { return "gcd(" + std::to_string(a) + "," + std::to_string(b) + ")"; });
    }
    rep.checks.push_back(std::move(g));
}

inline void verify_gaussian(VerifyScale scale, VerifyReport& rep) {
    const bool full = scale == VerifyScale::Full;
    const i64 modulus_bound = full ? 2000 : 500;
    const i64 numerator_bound = 1000;
    const i64 count_bound = full ? 100'000 : 10'000;
    const i64 thm4_bound = full ? 10'000 : 500;
    const PrimeTable table = sieve_upto(count_bound + 1);

    const auto moduli_all = enumerate_gaussian_primes(table, modulus_bound);
    std::vector<GaussInt> moduli;
    for (GaussInt m : moduli_all)
        if (norm(m) != 2) moduli.push_back(m);
    const auto disc = gaussian_disc(numerator_bound);

    CheckResult oracle{"gaussian", "symbol-vs-bruteforce"};
    CheckResult linear{"gaussian", "residue-route-vs-linear-route"};
    CheckResult assoc{"gaussian", "modulus-associate-invariance"};
    CheckResult resmap{"gaussian", "residue-map-divisibility"};
    for (GaussInt pi : moduli) {
        const bool split = pi.im != 0;
        for (GaussInt k : disc) {
            const int v = gaussian_legendre(k, pi).value.value();
            oracle.record(v == gls_bruteforce(k, pi), [&] { return sym(k, pi); });
            linear.record(v == gaussian_legendre_linear(k, pi).value(), [&] { return sym(k, pi); });
            for (GaussInt u : associates(pi))
                assoc.record(gaussian_legendre(k, u).value.value() == v, [&] { return sym(k, u); });
            if (split)
                for (GaussInt u : associates(pi)) {
                    const i64 r = residue_map(k, u);
                    resmap.record(divides(u, k - GaussInt{r, 0}),
                                  [&] { return "k=" + to_string(k) + " pi=" + to_string(u); });
                }
        }
    }
    rep.checks.push_back(std::move(oracle));
    rep.checks.push_back(std::move(linear));
    rep.checks.push_back(std::move(assoc));
    rep.checks.push_back(std::move(resmap));

    CheckResult count{"gaussian", "enumeration-vs-count-formula"};
    {
        const auto all = enumerate_gaussian_primes(table, count_bound);
        std::size_t idx = 0;
        for (i64 x = 2; x <= count_bound; ++x) {
            while (idx < all.size() && norm(all[idx]) <= x) ++idx;
            count.record(static_cast<i64>(idx) == count_gaussian_primes(table, x),
                         [&] { return "x=" + std::to_string(x); });
        }
    }
    rep.checks.push_back(std::move(count));

    std::mt19937_64 rng(97);
    std::uniform_int_distribution<i64> coord(-60, 60);
    CheckResult mult{"gaussian", "top-multiplicativity"};
    CheckResult period{"gaussian", "top-periodicity"};
    CheckResult normmult{"gaussian", "norm-multiplicativity"};
    for (GaussInt pi : moduli) {
        if (norm(pi) > 500) break;
        for (int i = 0; i < (full ? 200 : 40); ++i) {
            const GaussInt k{coord(rng), coord(rng)}, l{coord(rng), coord(rng)};
            const GaussInt shift = pi * GaussInt{coord(rng), coord(rng)};
            if (!divides(pi, k) && !divides(pi, l))
                mult.record(gaussian_legendre(k, pi).value * gaussian_legendre(l, pi).value ==
                                gaussian_legendre(k * l, pi).value,
                            [&] { return sym(k, pi) + " * " + sym(l, pi); });
            period.record(gaussian_legendre(k, pi).value == gaussian_legendre(k + shift, pi).value,
                          [&] { return sym(k, pi) + " shift " + to_string(shift); });
            normmult.record(norm(k * l) == norm(k) * norm(l),
                            [&] { return "z=" + to_string(k) + " w=" + to_string(l); });
        }
    }
    rep.checks.push_back(std::move(mult));
    rep.checks.push_back(std::move(period));
    rep.checks.push_back(std::move(normmult));

    CheckResult sym8{"gaussian", "eightfold-symmetry"};
    for (GaussInt z : enumerate_gaussian_primes(table, full ? 10'000 : 1000))
        for (GaussInt w : associates(z))
            for (GaussInt img : {w, conj(w)})
                sym8.record(is_gaussian_prime(img).has_value(), [&] { return to_string(img); });
    rep.checks.push_back(std::move(sym8));

    CheckResult t1{"gaussian", "thm4-i-identity"};
    CheckResult t2{"gaussian", "thm4-one-plus-i-identity"};
    CheckResult t3{"gaussian", "thm4-reciprocity"};
    const auto others = enumerate_gaussian_primes(table, thm4_bound);
    for (GaussInt pi : others) {
        if (pi.im == 0 || norm(pi) == 2) continue;
        const auto r = theorem4_identities(pi, others);
        t1.record(r.i_identity, [&] { return to_string(pi); });
        t2.record(r.one_plus_i_identity, [&] { return to_string(pi); });
        t3.record(r.reciprocity, [&] {
            return to_string(pi) + " fails against " + std::to_string(r.reciprocity_failures.size()) + " k, first " +
                   to_string(r.reciprocity_failures.front());
        });
    }
    rep.checks.push_back(std::move(t1));
    rep.checks.push_back(std::move(t2));
    rep.checks.push_back(std::move(t3));
}

inline void verify_relations(VerifyScale scale, const VerifyOptions& opt, VerifyReport& rep) {
    const bool full = scale == VerifyScale::Full;
    const i64 p_bound = opt.p.value_or(full ? 1000 : 100);
    const i64 q_bound = opt.q.value_or(full ? 10'000 : 1000);
    const PrimeTable table = sieve_upto(std::max(p_bound, q_bound) + 1);
    const auto gps = enumerate_gaussian_primes(table, std::max<i64>(q_bound, 2));

    CheckResult rel{"relations", "pair-relations"};
    if (opt.p || opt.q) rel.name += " p" + std::string(opt.p ? "=" : "<=") + std::to_string(p_bound) + " q" +
                                     std::string(opt.q ? "=" : "<=") + std::to_string(q_bound);
    for (i64 p : table.primes()) {
        if (p > p_bound) break;
        if (p % 4 != 1 || (opt.p && p != *opt.p)) continue;
        const auto [pi1, pi2] = split_pair(p);
        for (GaussInt k : gps) {
            const i64 q = norm(k);
            if (k.im == 0 || q == 2 || q == p || (opt.q && q != *opt.q)) continue;
            for (GaussInt pi : {pi1, pi2}) {
                const auto r = pair_relations_check(pi, k);
                rel.record(r.all(), [&] { return "pi=" + to_string(pi) + " k=" + to_string(k); });
            }
        }
    }
    rep.checks.push_back(std::move(rel));

    CheckResult mech{"relations", "paired-walk-sign-mechanics"};
    for (i64 p : {13, 17, 29, 37, 41, 97}) {
        if (opt.p && p != *opt.p) continue;
        const auto [pi1, pi2] = split_pair(p);
        for (GaussInt ka : gps) {
            const i64 q = norm(ka);
            if (ka.im == 0 || q == 2 || q == p || ka.re > ka.im || (opt.q && q != *opt.q)) continue;
            const GaussInt kb{ka.im, ka.re};
            const int a1 = gaussian_legendre(ka, pi1).value.value(), b1 = gaussian_legendre(kb, pi1).value.value();
            const int a2 = gaussian_legendre(ka, pi2).value.value(), b2 = gaussian_legendre(kb, pi2).value.value();
            const bool twist_even = (p - 1) / 4 % 2 == 0;
            const bool qr = legendre(q, p).is_residue();
            bool ok = false;
            if (twist_even && qr) ok = a1 == b1 && b1 == a2 && a2 == b2;
            else if (!twist_even && !qr) ok = a1 == b1 && a2 == b2 && a1 == -a2;
            else ok = a1 + b1 == 0 && a2 + b2 == 0;
            mech.record(ok, [&] { return "p=" + std::to_string(p) + " k=" + to_string(ka); });
        }
    }
    if (mech.checked > 0 || !opt.p) rep.checks.push_back(std::move(mech));
}

inline void verify_conjecture(VerifyScale scale, VerifyReport& rep) {
    const bool full = scale == VerifyScale::Full;
    const i64 p_max = full ? 1000 : 100, q_max = full ? 10'000 : 1000;
    CheckResult c{"conjecture", "pair-product-equals-legendre p<=" + std::to_string(p_max) +
                                    " q<=" + std::to_string(q_max)};
    const auto violations = conjecture1_scan(p_max, q_max);
    // every (pair, k) combination counts as one check
    const PrimeTable table = sieve_upto(q_max + 1);
    const auto ks = enumerate_gaussian_primes(table, q_max);
    for (i64 p : table.primes()) {
        if (p > p_max) break;
        if (p % 4 != 1) continue;
        for (GaussInt k : ks)
            if (k.im != 0 && norm(k) != 2 && norm(k) != p) ++c.checked;
    }
    c.failures = static_cast<i64>(violations.size());
    for (const auto& v : violations) {
        if (c.counterexamples.size() >= CheckResult::kMaxListed) break;
        c.counterexamples.push_back(sym(v.k, v.pi1) + sym(v.k, v.pi2) + "=" + std::to_string(v.product) +
                                    " expected " + std::to_string(v.expected));
    }
    rep.checks.push_back(std::move(c));
}

}  // namespace detail

/// Runs a suite at the given scale.
inline VerifyReport verify(VerifySuite suite, VerifyScale scale, const VerifyOptions& opt = {}) {
    VerifyReport rep;
    const bool all = suite == VerifySuite::All;
    if (all || suite == VerifySuite::Modular) detail::verify_modular(scale, rep);
    if (all || suite == VerifySuite::Gaussian) detail::verify_gaussian(scale, rep);
    if (all || suite == VerifySuite::Relations) detail::verify_relations(scale, opt, rep);
    if (all || suite == VerifySuite::Conjecture) detail::verify_conjecture(scale, rep);
    return rep;
}

}  // namespace legwalk
