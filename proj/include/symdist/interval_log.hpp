#pragma once

#include <stdexcept>

#include "symdist/numtheory.hpp"
#include "symdist/rational.hpp"

namespace symdist {

/// Closed rational interval [lo, hi] enclosing an exact real value.
struct RationalInterval {
    Rational lo;
    Rational hi;
};

namespace detail {

// 2 * atanh(y) = 2 * sum_{j>=0} y^(2j+1)/(2j+1) for rational y in [0, 1).
// After summing j < N the remainder is sum_{j>=N} y^(2j+1)/(2j+1), bounded
// above by y^(2N+1) / ((2N+1)(1-y^2)).
inline RationalInterval two_atanh_interval(const Rational& y, unsigned terms) {
    Rational y2 = y * y;
    Rational sum = 0;
    Rational power = y;  // y^(2j+1)
    for (unsigned j = 0; j < terms; ++j) {
        sum += power / Rational(2 * j + 1);
        power *= y2;
    }
    // power == y^(2*terms+1)
    Rational tail = power / (Rational(2 * terms + 1) * (Rational(1) - y2));
    Rational lo = sum + sum;
    return {lo, lo + tail + tail};
}

}  // namespace detail

/// Rational enclosure of ln(x) for an integer x >= 1, tightening as `terms`
/// grows. Uses the reduction x = 2^k * m, m in [1, 2), so the atanh series
/// argument stays below 1/3.
inline RationalInterval ln_interval(const Int& x, unsigned terms) {
    if (x < 1) throw std::invalid_argument("ln_interval: x must be >= 1");
    if (x == 1) return {Rational(0), Rational(0)};
    unsigned long k = ilog(2, x);
    Int p2k = pow2(k);
    Rational m(x, p2k);  // in [1, 2)
    RationalInterval ln_m = detail::two_atanh_interval((m - 1) / (m + 1), terms);
    RationalInterval ln_2 = detail::two_atanh_interval(Rational(1, 3), terms);
    Rational kk(static_cast<unsigned long>(k));
    return {kk * ln_2.lo + ln_m.lo, kk * ln_2.hi + ln_m.hi};
}

/// Decides q < coeff * (offset + ln x)^2 exactly, escalating the series
/// precision until the comparison is strict. Requires offset + ln x > 0.
inline bool less_than_log_quadratic(const Rational& q, const Rational& coeff,
                                    const Rational& offset, const Int& x) {
    for (unsigned terms = 8;; terms *= 2) {
        RationalInterval l = ln_interval(x, terms);
        Rational blo = offset + l.lo;
        Rational bhi = offset + l.hi;
        if (blo <= 0) throw std::domain_error("less_than_log_quadratic: offset + ln x must be positive");
        if (q < coeff * blo * blo) return true;
        if (q >= coeff * bhi * bhi) return false;
        if (terms > (1u << 20))
            throw std::runtime_error("less_than_log_quadratic: failed to separate (exact tie?)");
    }
}

/// Exact floor(coeff * (offset + ln x)^2), by interval narrowing. The value
/// is transcendental for integer x >= 2, so the floor is always decidable.
inline Int floor_log_quadratic(const Rational& coeff, const Rational& offset, const Int& x) {
    for (unsigned terms = 8;; terms *= 2) {
        RationalInterval l = ln_interval(x, terms);
        Rational blo = offset + l.lo;
        Rational bhi = offset + l.hi;
        if (blo <= 0) throw std::domain_error("floor_log_quadratic: offset + ln x must be positive");
        Int flo = (coeff * blo * blo).floor();
        Int fhi = (coeff * bhi * bhi).floor();
        if (flo == fhi) return flo;
        if (terms > (1u << 20))
            throw std::runtime_error("floor_log_quadratic: failed to separate (exact tie?)");
    }
}

}  // namespace symdist
