#include <catch2/catch_amalgamated.hpp>

#include "symdist/phi.hpp"

using namespace symdist;

TEST_CASE("certificate coefficients") {
    CHECK(phi_coefficient(PhiParams(1, 2), 2) == Rational(2));
    CHECK(phi_coefficient(PhiParams(7, 5), 0) == Rational(1));
    CHECK(phi_coefficient(PhiParams(2, 1), 1) == Rational(3, 2));
    // p_{s,1} = s (r+1) / 2
    for (unsigned long r = 1; r <= 10; ++r)
        for (unsigned long s = 1; s <= 10; ++s)
            CHECK(phi_coefficient(PhiParams(r, s), 1) ==
                  Rational(Int(s) * Int(r + 1), Int(2)));
    CHECK_THROWS_AS(phi_coefficient(PhiParams(1, 2), 3), std::invalid_argument);
    CHECK_THROWS_AS(PhiParams(0, 2), std::invalid_argument);
}

TEST_CASE("certificate polynomial") {
    CHECK(build_phi(PhiParams(1, 2)) == Poly({Rational(2), Rational(-3), Rational(1)}));
    CHECK(build_phi(PhiParams(2, 1)) == Poly({Rational(3, 2), Rational(-1)}));
    CHECK(build_phi(PhiParams(1, 1)) == Poly({Rational(1), Rational(-1)}));
}

TEST_CASE("certificate polynomial has unit leading coefficient", "[property]") {
    for (unsigned long r = 1; r <= 100; ++r)
        for (unsigned long s = 1; s <= 100; ++s) {
            Poly phi = build_phi(PhiParams(r, s));
            CHECK(phi.degree() == static_cast<int>(s));
            CHECK(phi.leading() == (s % 2 == 0 ? Rational(1) : Rational(-1)));
        }
}

TEST_CASE("reflection symmetry", "[property]") {
    CHECK(phi_reflection_check(PhiParams(1, 2)));
    CHECK(phi_reflection_check(PhiParams(2, 1)));
    CHECK(phi_reflection_check(PhiParams(3, 4)));
    for (unsigned long r = 1; r <= 60; ++r)
        for (unsigned long s = 1; s <= 60; ++s) CHECK(phi_reflection_check(PhiParams(r, s)));
}

TEST_CASE("anchored family certificates vanish on 1..s", "[property]") {
    for (unsigned long s = 1; s <= 50; ++s) {
        Poly phi = build_phi(PhiParams(1, s));
        for (unsigned long k = 1; k <= s; ++k) CHECK(phi(Rational(k)) == Rational(0));
        ZeroReport report = integer_zero_report(phi, 1, s);
        CHECK(report.all_integral);
        CHECK(report.distinct);
        CHECK(report.zeros.size() == s);
    }
}

TEST_CASE("degree-one certificates have the midpoint zero", "[property]") {
    for (unsigned long r = 1; r <= 60; ++r) {
        Poly phi = build_phi(PhiParams(r, 1));
        CHECK(phi(Rational(r + 1, 2)) == Rational(0));
        ZeroReport report = integer_zero_report(phi, 1, r);
        CHECK(report.all_integral == (r % 2 == 1));
    }
}

TEST_CASE("quadratic coefficient expansion", "[property]") {
    for (unsigned long r = 1; r <= 60; ++r)
        for (unsigned long s = 2; s <= 60; ++s) {
            Rational lhs = Rational(16) * phi_coefficient(PhiParams(r, s), 2);
            Rational rr(r);
            Rational rhs = Rational(binomial(s, 2)) *
                           (Rational(4) * rr * rr + Rational(14) * rr + Rational(13) +
                            Rational(3) / Rational(2 * r + 1));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("integer zero report") {
    Poly quad({Rational(2), Rational(-3), Rational(1)});
    ZeroReport r1 = integer_zero_report(quad, 1, 2);
    CHECK(r1.all_integral);
    CHECK(r1.distinct);
    CHECK(r1.in_range);
    CHECK(r1.residual_degree == 0);
    REQUIRE(r1.zeros.size() == 2);
    CHECK(r1.zeros[0] == std::pair<Int, unsigned>(1, 1));
    CHECK(r1.zeros[1] == std::pair<Int, unsigned>(2, 1));

    Poly half({Rational(3, 2), Rational(-1)});
    ZeroReport r2 = integer_zero_report(half, 1, 2);
    CHECK(r2.zeros.empty());
    CHECK(r2.residual_degree == 1);
    CHECK_FALSE(r2.all_integral);

    Poly dbl({Rational(1), Rational(-2), Rational(1)});  // (z-1)^2
    ZeroReport r3 = integer_zero_report(dbl, 1, 1);
    REQUIRE(r3.zeros.size() == 1);
    CHECK(r3.zeros[0] == std::pair<Int, unsigned>(1, 2));
    CHECK(r3.all_integral);
    CHECK_FALSE(r3.distinct);

    // A zero outside the window shows up as residual degree.
    ZeroReport r4 = integer_zero_report(quad, 1, 1);
    CHECK(r4.zeros.size() == 1);
    CHECK(r4.residual_degree == 1);
    CHECK_FALSE(r4.all_integral);

    CHECK_THROWS_AS(integer_zero_report(Poly(), 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(integer_zero_report(quad, 2, 1), std::invalid_argument);
}

TEST_CASE("growth threshold comparison is certified") {
    // 5000 * 2 * (14.5 + ln 2)^2 = 2308317.21..., so the integers on either
    // side must separate cleanly.
    CHECK(below_growth_threshold(200, 2));
    CHECK(below_growth_threshold(2'308'317, 2));
    CHECK_FALSE(below_growth_threshold(2'308'318, 2));
    CHECK_FALSE(below_growth_threshold(100'000'000, 2));
}

TEST_CASE("certificates") {
    Certificate a = certify(3, 2);
    CHECK(a.verdict == Verdict::known_tight_family);
    REQUIRE(a.zero_report.zeros.size() == 2);
    CHECK(a.zero_report.zeros[0].first == 1);
    CHECK(a.zero_report.zeros[1].first == 2);

    Certificate b = certify(3, 1);
    CHECK(b.verdict == Verdict::excluded_zero_test);
    CHECK(b.zero_report.zeros.empty());

    Certificate c = certify(2, 1);
    CHECK(c.verdict == Verdict::known_tight_family);

    Certificate d = certify(10, 5);
    CHECK(d.verdict != Verdict::possible);

    CHECK_THROWS_AS(certify(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(certify(5, 5), std::invalid_argument);
}

TEST_CASE("small grid is fully excluded", "[property]") {
    for (unsigned long n = 4; n <= 60; ++n)
        for (unsigned long s = 2; s + 2 <= n; ++s) {
            Certificate cert = certify(n, s);
            bool excluded = cert.verdict == Verdict::excluded_zero_test ||
                            cert.verdict == Verdict::excluded_growth_bound;
            CHECK(excluded);
        }
}
