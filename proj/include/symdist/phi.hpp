#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "symdist/interval_log.hpp"
#include "symdist/numtheory.hpp"
#include "symdist/poly.hpp"
#include "symdist/rational.hpp"

namespace symdist {

/// Parameters of the degree-s certificate polynomial; the scheme parameter
/// splits as n = r + s.
struct PhiParams {
    unsigned long r;
    unsigned long s;

    PhiParams(unsigned long r_, unsigned long s_) : r(r_), s(s_) {
        if (r == 0 || s == 0) throw std::invalid_argument("PhiParams: r and s must be positive");
    }
    unsigned long n() const { return r + s; }
};

namespace detail {

// Certificate coefficients as an exact integer fraction:
//   num = C(s,i) * (r+i-1)^(falling h) * (r+1)^(rising i)
//   den = 2^(i-h) * (2r+1)(2r+3)...(2r+2h-1),  h = floor(i/2)
// after pulling the half-integer rising factorial apart into an odd product
// and a power of two.
struct PhiCoeffParts {
    Int num;
    Int den;
};

inline PhiCoeffParts phi_coeff_parts(const PhiParams& p, unsigned long i) {
    unsigned long h = i / 2;
    Int num = binomial(p.s, static_cast<long>(i));
    for (unsigned long j = 0; j < h; ++j) num *= Int(p.r + i - 1 - j);
    for (unsigned long j = 1; j <= i; ++j) num *= Int(p.r + j);
    Int den = pow2(i - h);
    for (unsigned long j = 0; j < h; ++j) den *= Int(2 * p.r + 1 + 2 * j);
    return {num, den};
}

}  // namespace detail

/// Exact value of the i-th certificate coefficient p_{s,i}.
inline Rational phi_coefficient(const PhiParams& p, unsigned long i) {
    if (i > p.s) throw std::invalid_argument("phi_coefficient: requires i <= s");
    auto parts = detail::phi_coeff_parts(p, i);
    return Rational(parts.num, parts.den);
}

/// The certificate polynomial
///   Phi_s(z) = sum_{i=0..s} (-1)^(s-i) z^(falling s-i) p_{s,i},
/// of degree s with leading coefficient (-1)^s. Assembled over a cleared
/// common denominator so the accumulation stays in integers.
inline Poly build_phi(const PhiParams& p) {
    unsigned long s = p.s;
    // Common denominator: the i = s fraction parts contain every smaller one.
    Int common_den = detail::phi_coeff_parts(p, s).den;

    std::vector<Int> acc(s + 1, Int(0));
    std::vector<Int> fp{Int(1)};  // falling-power basis poly z^(falling k)
    for (unsigned long k = 0; k <= s; ++k) {
        if (k > 0) {
            // fp *= (z - (k-1))
            fp.push_back(Int(0));
            for (std::size_t j = fp.size() - 1; j-- > 0;) {
                Int shifted = j > 0 ? fp[j - 1] : Int(0);
                fp[j] = shifted - fp[j] * Int(k - 1);
            }
            // highest coefficient stays 1
            fp[fp.size() - 1] = 1;
        }
        auto parts = detail::phi_coeff_parts(p, s - k);
        Int scale = parts.num * (common_den / parts.den);
        if (k % 2 == 1) scale = -scale;
        for (std::size_t j = 0; j < fp.size(); ++j) acc[j] += scale * fp[j];
    }

    std::vector<Rational> coeffs;
    coeffs.reserve(s + 1);
    for (auto& a : acc) coeffs.emplace_back(a, common_den);
    Poly phi(std::move(coeffs));
    if (phi.degree() != static_cast<int>(s))
        throw std::logic_error("build_phi: degree mismatch");
    return phi;
}

/// Result of scanning a polynomial for integer zeros over a window.
struct ZeroReport {
    std::vector<std::pair<Int, unsigned>> zeros;  // (root, multiplicity), ascending
    bool all_integral = false;  // every zero found, i.e. nothing left undeflated
    bool distinct = false;      // no multiple roots among the found zeros
    bool in_range = false;      // every found zero lies inside the scanned window
    unsigned residual_degree = 0;

    unsigned zeros_with_multiplicity() const {
        unsigned total = 0;
        for (const auto& z : zeros) total += z.second;
        return total;
    }
};

/// Evaluates phi at every integer in [lo, hi], deflating each root found (with
/// multiplicity) by exact division. Integer roots outside the window are not
/// searched for; they surface as a nonzero residual degree.
inline ZeroReport integer_zero_report(const Poly& phi, const Int& lo, const Int& hi) {
    if (phi.is_zero()) throw std::invalid_argument("integer_zero_report: zero polynomial");
    if (lo > hi) throw std::invalid_argument("integer_zero_report: lo > hi");

    // Clear denominators once; deflation by an integer root keeps the
    // coefficients integral.
    Int den_lcm = 1;
    for (const auto& c : phi.coefficients())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
    std::vector<Int> a;
    a.reserve(phi.coefficients().size());
    for (const auto& c : phi.coefficients()) a.push_back(c.numerator() * (den_lcm / c.denominator()));

    auto eval = [&a](const Int& z) {
        Int acc = 0;
        for (std::size_t i = a.size(); i-- > 0;) acc = acc * z + a[i];
        return acc;
    };
    auto deflate = [&a](const Int& z) {
        std::vector<Int> q(a.size() - 1);
        Int carry = a.back();
        for (std::size_t i = a.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = a[i] + z * carry;
        }
        a = std::move(q);
    };

    ZeroReport report;
    for (Int z = lo; z <= hi && a.size() > 1; ++z) {
        unsigned mult = 0;
        while (a.size() > 1 && eval(z) == 0) {
            deflate(z);
            ++mult;
        }
        if (mult > 0) report.zeros.emplace_back(z, mult);
    }
    report.residual_degree = static_cast<unsigned>(a.size() - 1);
    report.all_integral = report.residual_degree == 0;
    report.distinct = true;
    for (const auto& z : report.zeros)
        if (z.second > 1) report.distinct = false;
    report.in_range = true;  // only the window was scanned
    return report;
}

/// True iff s < 5000 r (14.5 + ln r)^2, decided with certified rounding.
inline bool below_growth_threshold(unsigned long s, unsigned long r) {
    return less_than_log_quadratic(Rational(s), Rational(5000) * Rational(r), Rational(29, 2),
                                   Int(r));
}

enum class Verdict {
    possible,
    excluded_zero_test,     // certificate zeros fail integrality/distinctness/range
    excluded_growth_bound,  // (r, s) falls below the proven growth threshold
    known_tight_family,     // matches the Hadamard (s = 1) or anchor-family (s = n-1) case
};

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::possible: return "possible";
        case Verdict::excluded_zero_test: return "excluded_zero_test";
        case Verdict::excluded_growth_bound: return "excluded_growth_bound";
        case Verdict::known_tight_family: return "known_tight_family";
    }
    return "?";
}

struct Certificate {
    unsigned long n;
    unsigned long s;
    Verdict verdict;
    Poly phi;
    ZeroReport zero_report;
};

/// Necessary-condition pipeline for a tight symmetric-distance code of degree
/// s in J(2n, n): the certificate polynomial must have s distinct integral
/// zeros inside [1, n-1], and (r, s) must clear the growth threshold unless
/// s = 1 or r = 1.
inline Certificate certify(unsigned long n, unsigned long s) {
    if (s < 1 || s + 1 > n)
        throw std::invalid_argument("certify: requires 1 <= s <= n-1");
    unsigned long r = n - s;
    PhiParams params(r, s);
    Poly phi = build_phi(params);
    ZeroReport report = integer_zero_report(phi, 1, Int(n) - 1);

    Verdict verdict;
    if (!(report.all_integral && report.distinct && report.in_range)) {
        verdict = Verdict::excluded_zero_test;
    } else if (s != 1 && r != 1 && below_growth_threshold(s, r)) {
        verdict = Verdict::excluded_growth_bound;
    } else if ((s == 1 && n % 2 == 0) || s == n - 1) {
        verdict = Verdict::known_tight_family;
    } else {
        verdict = Verdict::possible;
    }
    return Certificate{n, s, verdict, std::move(phi), std::move(report)};
}

/// Reflection symmetry Phi_s(n - z) = (-1)^s Phi_s(z), as exact polynomials.
inline bool phi_reflection_check(const PhiParams& p) {
    Poly phi = build_phi(p);
    Poly reflected = phi.compose_affine(Rational(p.n()), Rational(-1));
    Poly expected = p.s % 2 == 0 ? phi : phi * Rational(-1);
    return reflected == expected;
}

}  // namespace symdist
