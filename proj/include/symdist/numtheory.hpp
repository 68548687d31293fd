#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "symdist/rational.hpp"

namespace symdist {

/// Falling power x(x-1)...(x-k+1); empty product for k = 0.
inline Rational falling_power(const Rational& x, unsigned long k) {
    Rational out = 1;
    Rational factor = x;
    for (unsigned long j = 0; j < k; ++j) {
        out *= factor;
        factor -= 1;
    }
    return out;
}

/// Rising power x(x+1)...(x+k-1); empty product for k = 0.
inline Rational rising_power(const Rational& x, unsigned long k) {
    Rational out = 1;
    Rational factor = x;
    for (unsigned long j = 0; j < k; ++j) {
        out *= factor;
        factor += 1;
    }
    return out;
}

/// k!! = k(k-2)(k-4)...; by convention (-1)!! = 0!! = 1.
inline Int double_factorial(long k) {
    if (k < -1) throw std::invalid_argument("double_factorial: k must be >= -1");
    Int out = 1;
    for (long f = k; f > 1; f -= 2) out *= f;
    return out;
}

/// Binomial coefficient with half-integer top, C(n - 1/2, m), computed as
/// (2n-1)!! / ((2(n-m)-1)!! 2^m m!).
inline Rational binom_half(unsigned long n, unsigned long m) {
    if (n < m) throw std::invalid_argument("binom_half: requires n >= m");
    // Partial double-factorial quotient (2n-1)!!/(2(n-m)-1)!! without the
    // full products.
    Int num = 1;
    for (unsigned long j = 0; j < m; ++j) num *= Int(2 * (n - j) - 1);
    Int den = pow2(m) * factorial(m);
    return Rational(num, den);
}

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    return mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

/// One (p, e) valuation pair; the exponent may be negative for rationals.
struct PrimePower {
    Int p;
    long e;

    PrimePower(Int prime, long exponent) : p(std::move(prime)), e(exponent) {
        if (!is_prime(p)) throw std::invalid_argument("PrimePower: p must be prime");
    }
    friend bool operator==(const PrimePower& a, const PrimePower& b) {
        return a.p == b.p && a.e == b.e;
    }
};

namespace detail {

/// Number of factors p in nonzero x, by repeated exact division.
inline long remove_factor_count(const Int& x, const Int& p) {
    Int reduced;
    return static_cast<long>(
        mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

inline std::vector<unsigned long> small_primes_upto(unsigned long b) {
    std::vector<unsigned long> out;
    if (b < 2) return out;
    std::vector<bool> composite(b + 1, false);
    for (unsigned long i = 2; i <= b; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= b; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace detail

/// p-adic valuation of a nonzero rational.
inline long padic_val(const Int& p, const Rational& x) {
    if (x.is_zero()) throw std::invalid_argument("padic_val: valuation of 0 is infinite");
    if (!is_prime(p)) throw std::invalid_argument("padic_val: p must be prime");
    return detail::remove_factor_count(x.numerator(), p) -
           detail::remove_factor_count(x.denominator(), p);
}

/// The valuation as a (p, val_p(x)) pair.
inline PrimePower prime_power(const Int& p, const Rational& x) {
    return PrimePower(p, padic_val(p, x));
}

/// val_p(n!) = sum_i floor(n / p^i).
inline unsigned long legendre_val(const Int& p, unsigned long n) {
    if (!is_prime(p)) throw std::invalid_argument("legendre_val: p must be prime");
    Int total = 0;
    Int q = n;
    while (q > 0) {
        q /= p;
        total += q;
    }
    return total.get_ui();
}

/// val_p((2n-1)!!) = sum_i ceil(floor((2n-1)/p^i) / 2), for odd primes.
inline unsigned long dfact_val(const Int& p, unsigned long n) {
    if (p == 2) throw std::invalid_argument("dfact_val: odd double factorials have no factor 2");
    if (!is_prime(p)) throw std::invalid_argument("dfact_val: p must be prime");
    if (n == 0) return 0;
    Int m = Int(2) * Int(n) - 1;
    Int total = 0;
    Int pk = p;
    while (pk <= m) {
        Int t = m / pk;
        total += (t + 1) / 2;
        pk *= p;
    }
    return total.get_ui();
}

/// True iff val_p(x) <= 0 for every prime p > b, i.e. the numerator of x in
/// lowest terms has no prime factor above b.
inline bool is_smooth(const Rational& x, unsigned long b) {
    if (x.is_zero()) throw std::invalid_argument("is_smooth: undefined for 0");
    Int num = ::abs(x.numerator());
    for (unsigned long p : detail::small_primes_upto(b)) {
        Int reduced;
        mpz_remove(reduced.get_mpz_t(), num.get_mpz_t(), Int(p).get_mpz_t());
        num = reduced;
        if (num == 1) return true;
    }
    return num == 1;
}

/// floor(log_base(x)) for x >= 1, decided by exact integer multiplication.
inline unsigned long ilog(const Int& base, const Int& x) {
    if (base < 2) throw std::invalid_argument("ilog: base must be >= 2");
    if (x < 1) throw std::invalid_argument("ilog: x must be >= 1");
    unsigned long e = 0;
    Int power = base;
    while (power <= x) {
        power *= base;
        ++e;
    }
    return e;
}

/// Upper bound on val_p(binom_half(n, m)): floor(log_p(2n-1)) for odd p,
/// -2m + floor(log_2(m+1)) for p = 2.
inline long kummer_half_bound(const Int& p, unsigned long n, unsigned long m) {
    if (n < m) throw std::invalid_argument("kummer_half_bound: requires n >= m");
    if (!is_prime(p)) throw std::invalid_argument("kummer_half_bound: p must be prime");
    if (p == 2) return -2 * static_cast<long>(m) + static_cast<long>(ilog(2, Int(m) + 1));
    Int top = n == 0 ? Int(1) : Int(2) * Int(n) - 1;
    return static_cast<long>(ilog(p, top));
}

}  // namespace symdist
