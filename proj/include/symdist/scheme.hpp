#pragma once

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "symdist/numtheory.hpp"
#include "symdist/phi.hpp"
#include "symdist/poly.hpp"
#include "symdist/rational.hpp"

namespace symdist {

enum class Family { johnson, hamming };

/// Scheme selector: {johnson, n} is the Johnson scheme J(2n, n) and
/// {hamming, n} is the binary Hamming scheme H(n, 2); both have n classes
/// and are Q-bipartite Q-polynomial.
struct SchemeParams {
    Family family;
    unsigned long n;

    friend bool operator==(const SchemeParams& a, const SchemeParams& b) {
        return a.family == b.family && a.n == b.n;
    }
    std::string str() const {
        if (family == Family::johnson)
            return "J(" + std::to_string(2 * n) + "," + std::to_string(n) + ")";
        return "H(" + std::to_string(n) + ",2)";
    }
};

inline SchemeParams johnson_scheme(unsigned long n) { return {Family::johnson, n}; }
inline SchemeParams hamming_scheme(unsigned long n) { return {Family::hamming, n}; }

/// Dual orthogonal polynomials, dual eigenvalues and multiplicities of one
/// scheme instance. Dual polynomials are memoized; the cache is guarded so
/// instances can be shared across threads.
class Scheme {
  public:
    explicit Scheme(SchemeParams params) : p_(params) {
        if (p_.n < 1) throw std::invalid_argument("Scheme: n must be >= 1");
    }

    const SchemeParams& params() const { return p_; }
    unsigned long classes() const { return p_.n; }

    /// v*_i, the degree-i dual polynomial (v*_0 = 1, v*_1 = x), from the
    /// three-term recursion x v*_i = c*_{i+1} v*_{i+1} + b*_{i-1} v*_{i-1}.
    Poly dual_poly(unsigned long i) const {
        if (i > p_.n) throw std::invalid_argument("dual_poly: requires 0 <= i <= n");
        std::lock_guard<std::mutex> lock(mu_);
        extend_cache(i);
        return cache_[i];
    }

    /// Dual eigenvalue theta*_j; satisfies theta*_{n-j} = -theta*_j.
    Rational dual_eigenvalue(unsigned long j) const {
        if (j > p_.n) throw std::invalid_argument("dual_eigenvalue: requires 0 <= j <= n");
        unsigned long n = p_.n;
        if (p_.family == Family::johnson)
            return Rational(Int(2 * n - 1) * (Int(n) - Int(2) * Int(j)), Int(n));
        return Rational(Int(n) - Int(2) * Int(j));
    }

    /// Multiplicity of the i-th primitive idempotent.
    Int multiplicity(unsigned long i) const {
        if (i > p_.n) throw std::invalid_argument("multiplicity: requires 0 <= i <= n");
        if (p_.family == Family::johnson)
            return binomial(2 * p_.n, static_cast<long>(i)) -
                   binomial(2 * p_.n, static_cast<long>(i) - 1);
        return binomial(p_.n, static_cast<long>(i));
    }

    /// Psi*_s = sum of v*_i over 0 <= i <= s with i = s (mod 2).
    Poly psi_star(unsigned long s) const {
        if (s < 1 || s + 1 > p_.n)
            throw std::invalid_argument("psi_star: requires 1 <= s <= n-1");
        Poly sum;
        for (unsigned long i = s % 2; i <= s; i += 2) sum += dual_poly(i);
        return sum;
    }

    /// Annihilator polynomial of a hypothetical code with the given size and
    /// degree set S: F(z) = |C| prod_{i in S} (z - theta*_i)/(theta*_0 - theta*_i),
    /// so F(theta*_i) = 0 on S and F(theta*_0) = |C|.
    Poly annihilator(const Int& code_size, const std::set<unsigned long>& degree_set) const {
        if (degree_set.empty()) throw std::invalid_argument("annihilator: empty degree set");
        if (code_size < 1) throw std::invalid_argument("annihilator: code size must be >= 1");
        Poly f{Rational(code_size)};
        Rational theta0 = dual_eigenvalue(0);
        for (unsigned long i : degree_set) {
            if (i < 1 || i + 1 > p_.n)
                throw std::invalid_argument("annihilator: degree set must lie in {1,...,n-1}");
            Rational ti = dual_eigenvalue(i);
            f = f * Poly::linear(-ti, 1);
            f *= Rational(1) / (theta0 - ti);
        }
        return f;
    }

    /// Unique expansion F = sum_i g_i v*_i, by descending-degree elimination;
    /// only nonzero coefficients are reported.
    std::map<unsigned long, Rational> expand_in_dual_basis(const Poly& f) const {
        if (f.degree() > static_cast<int>(p_.n))
            throw std::invalid_argument("expand_in_dual_basis: degree exceeds class count");
        std::map<unsigned long, Rational> coeffs;
        Poly rest = f;
        while (!rest.is_zero()) {
            auto d = static_cast<unsigned long>(rest.degree());
            Poly vd = dual_poly(d);
            Rational g = rest.leading() / vd.leading();
            coeffs[d] = g;
            rest -= vd * g;
            if (!rest.is_zero() && rest.degree() >= static_cast<int>(d))
                throw std::logic_error("expand_in_dual_basis: elimination failed to reduce degree");
        }
        return coeffs;
    }

  private:
    // Recursion coefficients, as in x v*_i = A_i v*_{i+1} + B_i v*_{i-1}.
    Rational coeff_up(unsigned long i) const {
        unsigned long n = p_.n;
        if (p_.family == Family::johnson)
            return Rational(Int(2 * n - 1) * Int(i + 1) * Int(n - i),
                            Int(n) * Int(2 * n - 2 * i - 1));
        return Rational(static_cast<unsigned long>(i + 1));
    }
    Rational coeff_down(unsigned long i) const {
        unsigned long n = p_.n;
        if (p_.family == Family::johnson)
            return Rational(Int(2 * n - 1) * Int(n - i + 1) * Int(2 * n - i + 2),
                            Int(n) * Int(2 * n - 2 * i + 3));
        return Rational(static_cast<unsigned long>(n - i + 1));
    }

    void extend_cache(unsigned long upto) const {
        if (cache_.empty()) cache_.push_back(Poly(1));
        while (cache_.size() <= upto) {
            auto i = static_cast<unsigned long>(cache_.size() - 1);  // have v*_0..v*_i
            Poly xv = Poly::x() * cache_[i];
            if (i >= 1) xv -= cache_[i - 1] * coeff_down(i);
            cache_.push_back(xv * (Rational(1) / coeff_up(i)));
        }
    }

    SchemeParams p_;
    mutable std::vector<Poly> cache_;
    mutable std::mutex mu_;
};

/// Scalar relating the parity sum of dual polynomials to the certificate
/// polynomial under the substitution theta_z = (2n-1)(1 - 2z/n):
///   Psi*_s(theta_z) = (2^{2s}/s!) ((n-1/2)^(falling s) / n^(falling s)) Phi_s(z).
/// Verifies the identity by exact polynomial subtraction.
inline bool verify_psi_phi(unsigned long n, unsigned long s) {
    if (s < 1 || s + 1 > n) throw std::invalid_argument("verify_psi_phi: requires 1 <= s <= n-1");
    Scheme scheme(johnson_scheme(n));
    Poly psi = scheme.psi_star(s);
    // theta_z as an affine map of z
    Rational a(Int(2 * n - 1));
    Rational b(-(Int(2) * Int(2 * n - 1)), Int(n));
    Poly lhs = psi.compose_affine(a, b);

    Rational scalar = Rational(pow2(2 * s)) / Rational(factorial(s)) *
                      falling_power(Rational(Int(2 * n - 1), Int(2)), s) /
                      falling_power(Rational(static_cast<unsigned long>(n)), s);
    Poly rhs = build_phi(PhiParams(n - s, s)) * scalar;
    return lhs == rhs;
}

}  // namespace symdist
