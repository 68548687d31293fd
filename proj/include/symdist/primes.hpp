#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symdist/errors.hpp"
#include "symdist/interval_log.hpp"
#include "symdist/rational.hpp"

namespace symdist {

/// Hard ceiling for any single sieve-backed scan; callers must pass an
/// explicit limit at or below it.
inline constexpr std::uint64_t kSieveCeiling = 1'000'000'000;

/// Ceiling for materializing a full prime list in memory.
inline constexpr std::uint64_t kPrimeListCeiling = 100'000'000;

/// Plain Eratosthenes bit sieve over [0, limit].
class Sieve {
  public:
    explicit Sieve(std::uint64_t limit) : limit_(limit) {
        if (limit > kSieveCeiling)
            throw resource_error("Sieve: limit exceeds ceiling " + std::to_string(kSieveCeiling));
        bits_.assign(limit / 64 + 1, ~std::uint64_t{0});
        clear(0);
        if (limit >= 1) clear(1);
        for (std::uint64_t p = 2; p * p <= limit; ++p)
            if (test(p))
                for (std::uint64_t q = p * p; q <= limit; q += p) clear(q);
    }

    std::uint64_t limit() const { return limit_; }

    bool is_prime(std::uint64_t k) const {
        if (k > limit_) throw resource_error("Sieve: query beyond sieve limit");
        return test(k);
    }

  private:
    bool test(std::uint64_t k) const { return (bits_[k / 64] >> (k % 64)) & 1; }
    void clear(std::uint64_t k) { bits_[k / 64] &= ~(std::uint64_t{1} << (k % 64)); }

    std::uint64_t limit_;
    std::vector<std::uint64_t> bits_;
};

/// Segment size for streamed prime scans; bounds the working memory.
inline constexpr std::uint64_t kDefaultSegmentSize = 1 << 20;

namespace detail {

/// Streams primes <= limit in ascending order into `emit`; segmented, so the
/// memory footprint stays at the segment size. `emit` returns false to stop
/// the scan early.
template <typename Emit>
void for_each_prime(std::uint64_t limit, Emit&& emit,
                    std::uint64_t segment_size = kDefaultSegmentSize) {
    if (limit > kSieveCeiling)
        throw resource_error("prime scan: limit exceeds ceiling " + std::to_string(kSieveCeiling));
    if (segment_size < 16) throw std::invalid_argument("prime scan: segment size too small");
    if (limit < 2) return;
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;
    Sieve base(root);
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t p = 2; p <= root; ++p)
        if (base.is_prime(p)) base_primes.push_back(p);

    std::vector<char> seg;
    for (std::uint64_t lo = 2; lo <= limit; lo += segment_size) {
        std::uint64_t hi = std::min(limit, lo + segment_size - 1);
        seg.assign(hi - lo + 1, 1);
        for (std::uint64_t p : base_primes) {
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
            for (std::uint64_t q = start; q <= hi; q += p) seg[q - lo] = 0;
        }
        for (std::uint64_t k = lo; k <= hi; ++k)
            if (seg[k - lo] && !emit(k)) return;
    }
}

}  // namespace detail

/// All primes <= limit, ascending.
inline std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
    if (limit > kPrimeListCeiling)
        throw resource_error("primes_upto: limit exceeds materialization ceiling " +
                             std::to_string(kPrimeListCeiling));
    std::vector<std::uint64_t> out;
    detail::for_each_prime(limit, [&](std::uint64_t p) {
        out.push_back(p);
        return true;
    });
    return out;
}

/// Exact prime count pi(x).
inline std::uint64_t prime_pi(std::uint64_t x) {
    std::uint64_t count = 0;
    detail::for_each_prime(x, [&](std::uint64_t) {
        ++count;
        return true;
    });
    return count;
}

struct RhoResult {
    std::optional<std::uint64_t> value;
    std::uint64_t ceiling;

    bool found() const { return value.has_value(); }
};

/// Smallest n >= 1 such that (n, n+s-1] contains no primes. Any such window
/// can be slid left onto the preceding prime, so the minimum is 1 (for s = 1)
/// or the smallest prime followed by a gap of at least s. The scan walks
/// consecutive primes segment by segment up to `ceiling` and reports
/// not-found if no sufficient gap has closed below it.
inline RhoResult rho(std::uint64_t s, std::uint64_t ceiling,
                     std::uint64_t segment_size = kDefaultSegmentSize) {
    if (s < 1) throw std::invalid_argument("rho: s must be >= 1");
    if (s == 1) return {1, ceiling};  // empty interval
    std::optional<std::uint64_t> found;
    std::uint64_t prev = 0;
    detail::for_each_prime(
        ceiling,
        [&](std::uint64_t p) {
            if (prev != 0 && p - prev >= s) {
                found = prev;
                return false;
            }
            prev = p;
            return true;
        },
        segment_size);
    return {found, ceiling};
}

struct GrowthBound {
    RationalInterval interval;
    Int floor_value;
};

/// Certified evaluation of the prime-gap lower bound 5000 s (14.6 + ln s)^2
/// on rho_s, valid for s >= 288; checks that it exceeds 2,000,000 s.
inline GrowthBound rho_lower_bound(std::uint64_t s) {
    if (s < 288) throw std::invalid_argument("rho_lower_bound: stated only for s >= 288");
    Rational coeff = Rational(5000) * Rational(s);
    Rational offset(73, 5);
    Int floor_value = floor_log_quadratic(coeff, offset, Int(s));
    // Narrow an interval to publish alongside the floor.
    RationalInterval l = ln_interval(Int(s), 32);
    Rational lo = coeff * (offset + l.lo) * (offset + l.lo);
    Rational hi = coeff * (offset + l.hi) * (offset + l.hi);
    if (!(lo > Rational(2'000'000ul) * Rational(s)))
        throw std::logic_error("rho_lower_bound: bound fails to dominate 2,000,000 s");
    return {{lo, hi}, floor_value};
}

}  // namespace symdist
