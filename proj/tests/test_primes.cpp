#include <gtest/gtest.h>

#include <cmath>

#include "legwalk/primes.hpp"
#include "oracles.hpp"

using namespace legwalk;

TEST(Sieve, SmallTableIsExact) {
    const PrimeTable t = sieve_upto(31);
    const std::vector<i64> want{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    EXPECT_EQ(std::vector<i64>(t.primes().begin(), t.primes().end()), want);
    EXPECT_EQ(t.limit(), 31);
}

TEST(Sieve, TinyLimits) {
    EXPECT_EQ(sieve_upto(0).size(), 0u);
    EXPECT_EQ(sieve_upto(2).size(), 0u);
    EXPECT_EQ(sieve_upto(3).size(), 1u);
    EXPECT_THROW(sieve_upto(-1), undefined_input_error);
}

TEST(Sieve, MatchesNaiveSieveUpTo1e5) {
    const auto want = oracle::naive_sieve(100'000);
    const PrimeTable t = sieve_upto(100'000);
    ASSERT_EQ(t.size(), want.size());
    EXPECT_TRUE(std::equal(want.begin(), want.end(), t.primes().begin()));
}

TEST(Sieve, MatchesTrialDivisionForEveryLimit) {
    for (i64 limit = 0; limit <= 400; ++limit) {
        const PrimeTable t = sieve_upto(limit, 16);
        std::vector<i64> want;
        for (i64 n = 2; n < limit; ++n)
            if (oracle::is_prime(n)) want.push_back(n);
        ASSERT_EQ(std::vector<i64>(t.primes().begin(), t.primes().end()), want) << "limit " << limit;
    }
}

TEST(Sieve, SegmentSizeDoesNotChangeResult) {
    const PrimeTable a = sieve_upto(200'003);
    for (i64 seg : {1, 7, 64, 4096, 1 << 20}) {
        const PrimeTable b = sieve_upto(200'003, seg);
        ASSERT_EQ(a.size(), b.size()) << seg;
        EXPECT_TRUE(std::equal(a.primes().begin(), a.primes().end(), b.primes().begin())) << seg;
    }
}

TEST(Sieve, MembershipAgreesWithList) {
    const PrimeTable t = sieve_upto(10'000);
    std::size_t seen = 0;
    for (i64 n = -5; n < 10'010; ++n) {
        const bool listed = std::binary_search(t.primes().begin(), t.primes().end(), n);
        EXPECT_EQ(t.contains(n), listed) << n;
        seen += listed;
    }
    EXPECT_EQ(seen, t.size());
}

TEST(Sieve, OneMillionCount) {
    const PrimeTable t = sieve_upto(1'000'001);
    EXPECT_EQ(count_primes(t, 1'000'000), 78498);
    EXPECT_EQ(static_cast<i64>(oracle::naive_sieve(1'000'001).size()), 78498);
}

TEST(PrimeTable, RejectsBadSequences) {
    EXPECT_THROW(PrimeTable::from_sorted(10, {3, 5, 7}), undefined_input_error);
    EXPECT_THROW(PrimeTable::from_sorted(10, {2, 5, 3}), undefined_input_error);
    EXPECT_THROW(PrimeTable::from_sorted(10, {2, 3, 5, 7, 11}), undefined_input_error);
    EXPECT_NO_THROW(PrimeTable::from_sorted(10, {2, 3, 5, 7}));
}

TEST(Counting, SmallValues) {
    const PrimeTable t = sieve_upto(1000);
    EXPECT_EQ(count_primes(t, 30), 10);
    EXPECT_EQ(count_primes(t, 1), 0);
    EXPECT_EQ(count_primes(t, -4), 0);
    EXPECT_EQ(count_primes(t, 2), 1);
    EXPECT_EQ(count_primes_ap(t, 10, APClass(3, 0)), 1);
    EXPECT_THROW(count_primes(t, 1000), out_of_range_error);
    EXPECT_THROW(count_primes_ap(t, 1000, APClass(3, 1)), out_of_range_error);
}

TEST(Counting, ProgressionsMod3) {
    const PrimeTable t = sieve_upto(1'000'001);
    const i64 want[][3] = {{10, 1, 2},           {100, 11, 13},          {1000, 80, 87},
                           {10'000, 611, 617},   {100'000, 4784, 4807},  {1'000'000, 39231, 39266}};
    for (const auto& row : want) {
        EXPECT_EQ(count_primes_ap(t, row[0], APClass(3, 1)), row[1]) << row[0];
        EXPECT_EQ(count_primes_ap(t, row[0], APClass(3, 2)), row[2]) << row[0];
    }
}

TEST(Counting, PrimesInProgression) {
    const PrimeTable t = sieve_upto(100);
    EXPECT_EQ(primes_in_ap(t, APClass(3, 2)).size(), 13u);
    EXPECT_EQ(primes_in_ap(t, APClass(2, 0)), std::vector<i64>{2});
    EXPECT_EQ(primes_in_ap(sieve_upto(11), APClass(3, 1)), std::vector<i64>{7});
    for (i64 p : primes_in_ap(t, APClass(4, 3))) EXPECT_EQ(p % 4, 3);
}

TEST(Counting, PartitionOverResidues) {
    const PrimeTable t = sieve_upto(50'000);
    const auto primes = oracle::naive_sieve(50'000);
    oracle::Gen g(11);
    for (int trial = 0; trial < 60; ++trial) {
        const i64 m = g.uniform(2, 40), x = g.uniform(0, 49'999);
        i64 sum = 0;
        for (i64 r = 0; r < m; ++r) {
            const i64 c = count_primes_ap(t, x, APClass(m, r));
            EXPECT_EQ(c, oracle::count_upto(primes, x, m, r));
            sum += c;
        }
        EXPECT_EQ(sum, count_primes(t, x)) << "m=" << m << " x=" << x;
    }
}

TEST(APClassTest, Validation) {
    EXPECT_THROW(APClass(1, 0), undefined_input_error);
    EXPECT_THROW(APClass(3, 3), undefined_input_error);
    EXPECT_THROW(APClass(3, -1), undefined_input_error);
    EXPECT_TRUE(APClass(4, 1).coprime());
    EXPECT_FALSE(APClass(6, 3).coprime());
}

TEST(Totient, AgainstNaive) {
    EXPECT_EQ(totient(10), 4);
    EXPECT_EQ(totient(1), 1);
    for (i64 n = 1; n <= 300; ++n) EXPECT_EQ(totient(n), oracle::totient_naive(n)) << n;
    for (i64 p : {2, 3, 97, 7919}) EXPECT_EQ(totient(p), p - 1);
    EXPECT_THROW(totient(0), undefined_input_error);
}

TEST(Density, ValuesAtOneMillion) {
    const PrimeTable t = sieve_upto(1'000'001);
    const double lx = std::log(1e6);
    EXPECT_NEAR(density_ratio(t, 1'000'000), 78498.0 / (1e6 / lx), 1e-12);
    EXPECT_NEAR(density_ratio(t, 1'000'000), 1.0845, 1e-4);
    EXPECT_NEAR(density_ratio(t, 1'000'000, APClass(3, 2)), 39266.0 / (1e6 / (2 * lx)), 1e-12);
    EXPECT_NEAR(density_ratio(t, 3), 2.0 / (3.0 / std::log(3.0)), 1e-12);
    for (i64 a : {3, 4, 5})
        for (i64 b = 1; b < a; ++b)
            if (std::gcd(a, b) == 1) {
                const double d = density_ratio(t, 1'000'000, APClass(a, b));
                EXPECT_GE(d, 0.9) << a << " " << b;
                EXPECT_LE(d, 1.2) << a << " " << b;
            }
}

TEST(Density, Errors) {
    const PrimeTable t = sieve_upto(100);
    EXPECT_THROW(density_ratio(t, 2), undefined_input_error);
    EXPECT_THROW(density_ratio(t, 100), out_of_range_error);
    EXPECT_THROW(density_ratio(t, 50, APClass(3, 0)), undefined_input_error);
}

TEST(IsPrime, SmallRange) {
    for (i64 n = -3; n < 2000; ++n) EXPECT_EQ(is_prime(n), oracle::is_prime(n)) << n;
    EXPECT_EQ(isqrt(0), 0);
    EXPECT_EQ(isqrt(99), 9);
    EXPECT_EQ(isqrt(100), 10);
    EXPECT_EQ(isqrt(1'000'000'000'000LL - 1), 999'999);
}
