#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symdist/rational.hpp"

namespace symdist {

/// Dense univariate polynomial over Rational. Coefficient i is the
/// coefficient of x^i; the highest-index coefficient is nonzero unless the
/// polynomial is zero (empty coefficient vector, degree -1).
class Poly {
  public:
    Poly() = default;
    Poly(const Rational& constant) { if (!constant.is_zero()) c_.push_back(constant); }
    Poly(int constant) : Poly(Rational(constant)) {}
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    /// a + b*x
    static Poly linear(const Rational& a, const Rational& b) { return Poly({a, b}); }
    static Poly x() { return linear(0, 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const Rational& operator[](std::size_t i) const {
        static const Rational zero = 0;
        return i < c_.size() ? c_[i] : zero;
    }

    const Rational& leading() const {
        if (c_.empty()) throw std::domain_error("Poly: zero polynomial has no leading coefficient");
        return c_.back();
    }

    const std::vector<Rational>& coefficients() const { return c_; }

    Rational operator()(const Rational& z) const {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Rational& s) {
        if (s.is_zero()) { c_.clear(); return *this; }
        for (auto& c : c_) c *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Rational& s) { Poly t = a; return t *= s; }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(out));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// P(a + b*x), by Horner on the substituted argument.
    Poly compose_affine(const Rational& a, const Rational& b) const {
        Poly arg = linear(a, b);
        Poly acc;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * arg + Poly(c_[i]);
        return acc;
    }

    /// Synthetic division by (x - root); returns {quotient, remainder}.
    std::pair<Poly, Rational> divide_linear(const Rational& root) const {
        if (is_zero()) return {Poly(), Rational(0)};
        std::vector<Rational> q(c_.size() - 1, Rational(0));
        Rational carry = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            if (i < q.size()) q[i] = carry;
            carry = c_[i] + root * carry;
        }
        return {Poly(std::move(q)), carry};
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += c_[i].is_negative() ? " - " : " + ";
            else if (c_[i].is_negative()) out += "-";
            Rational a = abs(c_[i]);
            bool unit = (a == Rational(1));
            if (i == 0 || !unit) out += a.str();
            if (i > 0) {
                if (!unit) out += "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

  private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace symdist
