#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "symdist/numtheory.hpp"
#include "symdist/rational.hpp"

using namespace symdist;

namespace {

// Trial-division oracles: valuations of n! and (2n-1)!! factor by factor,
// independent of the closed-form summations under test.
unsigned long oracle_factorial_val(unsigned long p, unsigned long n) {
    unsigned long total = 0;
    for (unsigned long k = 2; k <= n; ++k) {
        unsigned long v = k;
        while (v % p == 0) {
            v /= p;
            ++total;
        }
    }
    return total;
}

unsigned long oracle_odd_dfact_val(unsigned long p, unsigned long n) {
    unsigned long total = 0;
    for (unsigned long k = 1; k + 1 <= 2 * n; k += 2) {
        unsigned long v = k;
        while (v > 1 && v % p == 0) {
            v /= p;
            ++total;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("rational normalization and rendering") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational(10, 2).str() == "5");
    CHECK(Rational(10, 2).is_integer());
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
    CHECK(Rational(-7, 2).floor() == -4);
}

TEST_CASE("falling and rising powers") {
    CHECK(falling_power(Rational(5), 3) == Rational(60));
    CHECK(falling_power(Rational(17, 3), 0) == Rational(1));
    CHECK(falling_power(Rational(1, 2), 2) == Rational(-1, 4));
    CHECK(rising_power(Rational(3), 2) == Rational(12));
    CHECK(rising_power(Rational(-8, 5), 0) == Rational(1));
    CHECK(rising_power(Rational(3, 2), 1) == Rational(3, 2));
}

TEST_CASE("falling and rising powers are the same product") {
    for (long num = -9; num <= 9; ++num)
        for (unsigned long k = 0; k <= 6; ++k) {
            Rational x(num, 2);
            Rational fall = falling_power(x, k);
            Rational rise = rising_power(x - Rational(static_cast<long>(k) - 1), k);
            CHECK(fall == rise);
        }
}

TEST_CASE("double factorial") {
    CHECK(double_factorial(7) == 105);
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(8) == 384);
    CHECK_THROWS_AS(double_factorial(-2), std::invalid_argument);
}

TEST_CASE("half-integer binomials") {
    CHECK(binom_half(3, 2) == Rational(15, 8));
    CHECK(binom_half(9, 0) == Rational(1));
    CHECK(binom_half(1, 1) == Rational(1, 2));
    CHECK_THROWS_AS(binom_half(2, 3), std::invalid_argument);

    // Alternative product form (2n-2m+1)(2n-2m+3)...(2n-1) / (2m)!!
    for (unsigned long n = 0; n <= 60; ++n)
        for (unsigned long m = 0; m <= n; ++m) {
            Int num = 1;
            for (unsigned long f = 2 * (n - m) + 1; f + 1 <= 2 * n; f += 2) num *= f;
            Rational alt(num, double_factorial(static_cast<long>(2 * m)));
            CHECK(binom_half(n, m) == alt);
        }
}

TEST_CASE("p-adic valuation") {
    CHECK(padic_val(2, Rational(15, 8)) == -3);
    CHECK(padic_val(3, Rational(15, 8)) == 1);
    CHECK(padic_val(5, Rational(1)) == 0);
    CHECK_THROWS_AS(padic_val(2, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(padic_val(4, Rational(3)), std::invalid_argument);

    CHECK(prime_power(2, Rational(15, 8)) == PrimePower(2, -3));
    CHECK_THROWS_AS(PrimePower(6, 1), std::invalid_argument);
}

TEST_CASE("p-adic valuation is additive", "[property]") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> dist(-500, 500);
    const Int primes[] = {2, 3, 5, 7, 13};
    int trials = 0;
    while (trials < 1000) {
        long a = dist(rng), b = dist(rng), c = dist(rng), d = dist(rng);
        if (a == 0 || b == 0 || c == 0 || d == 0) continue;
        ++trials;
        Rational x(a, b), y(c, d);
        for (const Int& p : primes)
            CHECK(padic_val(p, x * y) == padic_val(p, x) + padic_val(p, y));
    }
}

TEST_CASE("factorial valuations match trial division") {
    CHECK(legendre_val(3, 10) == 4);
    CHECK(legendre_val(7, 0) == 0);
    CHECK(legendre_val(2, 4) == 3);
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul,
                            41ul, 43ul, 47ul})
        for (unsigned long n = 0; n <= 200; ++n)
            CHECK(legendre_val(Int(p), n) == oracle_factorial_val(p, n));
}

TEST_CASE("double-factorial valuations match trial division") {
    CHECK(dfact_val(3, 5) == 3);   // 9!! = 945 = 3^3 * 5 * 7
    CHECK(dfact_val(7, 4) == 1);   // 7!! = 105
    CHECK(dfact_val(3, 1) == 0);
    CHECK_THROWS_AS(dfact_val(2, 5), std::invalid_argument);
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul,
                            43ul, 47ul})
        for (unsigned long n = 0; n <= 200; ++n)
            CHECK(dfact_val(Int(p), n) == oracle_odd_dfact_val(p, n));
}

TEST_CASE("smoothness") {
    CHECK(is_smooth(Rational(15, 8), 5));
    CHECK_FALSE(is_smooth(Rational(7), 5));
    CHECK(is_smooth(Rational(1, 7), 5));
    CHECK(is_smooth(Rational(-30), 5));
    CHECK_FALSE(is_smooth(Rational(-31), 5));
    CHECK_THROWS_AS(is_smooth(Rational(0), 5), std::invalid_argument);
}

TEST_CASE("half-integer valuation bound") {
    CHECK(kummer_half_bound(2, 1, 1) == -1);
    CHECK(kummer_half_bound(3, 5, 2) == 2);
    CHECK(kummer_half_bound(5, 1, 0) == 0);
    CHECK_THROWS_AS(kummer_half_bound(3, 2, 3), std::invalid_argument);
    CHECK(padic_val(2, binom_half(1, 1)) == kummer_half_bound(2, 1, 1));
}

TEST_CASE("half-integer valuation bound holds on a grid", "[property]") {
    auto primes = detail::small_primes_upto(101);
    for (unsigned long n = 1; n <= 80; ++n)
        for (unsigned long m = 0; m <= n; ++m) {
            Rational b = binom_half(n, m);
            for (unsigned long p : primes)
                CHECK(padic_val(Int(p), b) <= kummer_half_bound(Int(p), n, m));
        }
}

TEST_CASE("integer logarithm is exact at boundaries") {
    CHECK(ilog(2, 1) == 0);
    CHECK(ilog(2, 2) == 1);
    CHECK(ilog(3, 8) == 1);
    CHECK(ilog(3, 9) == 2);
    CHECK(ilog(3, 10) == 2);
    CHECK(ilog(10, Int("1000000000000000000000")) == 21);
}
