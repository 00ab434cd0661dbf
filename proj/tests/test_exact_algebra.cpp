#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace hbp;
using hbp::test::Q;

TEST_CASE("rationals are canonical", "[rational]")
{
    CHECK(make_rational(6, -4) == Q("-3/2"));
    CHECK(make_rational(6, -4).get_num() == -3);
    CHECK(make_rational(6, -4).get_den() == 2);
    CHECK(to_string(make_rational(0, 5)) == "0");
    CHECK(to_string(make_rational(10, 5)) == "2");
    CHECK(to_string(make_rational(-2, 6)) == "-1/3");
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("rational parsing", "[rational]")
{
    CHECK(parse_rational("22/7") == make_rational(22, 7));
    CHECK(parse_rational("-3/7") == make_rational(-3, 7));
    CHECK(parse_rational("+4") == Rational(4));
    CHECK(parse_rational("4/6") == make_rational(2, 3));
    CHECK(to_string(parse_rational("123456789012345678901234567890/3")) == "41152263004115226300411522630");
    for (const char *bad : {"", "1/", "/2", "1/0", "a", "1.5", "1//2", "--1", "1/-2"}) {
        CAPTURE(bad);
        CHECK_THROWS(parse_rational(bad));
    }
}

TEST_CASE("binomial", "[combinatorics]")
{
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, -1) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(3, 4) == 0);
    CHECK(binomial(-2, 1) == 0);
    CHECK(binomial(60, 30) == Rational("118264581564861424"));
}

TEST_CASE("multinomial", "[combinatorics]")
{
    CHECK(multinomial(4, {1, 1}) == 12);
    CHECK(multinomial(3, {2, 2}) == 0);
    CHECK(multinomial(6, {2, 1, 1}) == 180);
    CHECK(multinomial(5, {}) == 1);
    CHECK(multinomial(5, {-1, 2}) == 0);
    CHECK(multinomial(-1, {0}) == 0);
    for (long n = 0; n <= 12; ++n) {
        for (long k = -2; k <= n + 2; ++k) {
            CHECK(multinomial(n, {k}) == binomial(n, k));
        }
    }
}

TEST_CASE("falling and rising factorials", "[combinatorics]")
{
    CHECK(falling_factorial(5, 3) == 60);
    CHECK(rising_factorial(3, 2) == 12);
    CHECK(falling_factorial(7, 0) == 1);
    CHECK(rising_factorial(-4, 0) == 1);
    CHECK(rising_factorial(-2, 3) == 0);
    CHECK(falling_factorial(-2, 2) == 6);
    CHECK_THROWS(falling_factorial(3, -1));
}

TEST_CASE("polynomial basics", "[polynomial]")
{
    const Polynomial x = Polynomial::identity();
    CHECK(poly_mul(x, x) == Polynomial::monomial(Rational(1), 2));
    CHECK(poly_negate_argument(Polynomial{1, 1, Q("1/2")}) == Polynomial{1, -1, Q("1/2")});
    const Polynomial p{3, 0, -2};
    CHECK(poly_add(p, Polynomial()) == p);
    CHECK(Polynomial().degree() == -1);
    CHECK(Polynomial{1, 2, 0, 0}.degree() == 1);
    CHECK((p - p).is_zero());
    CHECK(poly_scale(p, Rational(0)).is_zero());
}

TEST_CASE("polynomial evaluation", "[polynomial]")
{
    CHECK(poly_eval(Polynomial{Q("-1/2"), 1}, Rational(0)) == Q("-1/2"));
    CHECK(poly_eval(Polynomial(), Rational(7)) == 0);
    CHECK(poly_eval(Polynomial{Q("1/6"), -1, 1}, Rational(1)) == Q("1/6"));
}

TEST_CASE("polynomial derivative", "[polynomial]")
{
    CHECK(poly_derivative(Polynomial{Q("1/6"), -1, 1}) == Polynomial{-1, 2});
    CHECK(poly_derivative(Polynomial{5}).is_zero());
    CHECK(poly_derivative(Polynomial::monomial(Rational(1), 3)) == Polynomial::monomial(Rational(3), 2));
}

TEST_CASE("weighted integral over [0,1]", "[polynomial]")
{
    CHECK(poly_integrate01_weighted(Polynomial{1}, 1) == 1);
    CHECK(poly_integrate01_weighted(Polynomial{1}, 3) == Q("1/3"));
    CHECK(poly_integrate01_weighted(Polynomial{Q("-1/3"), 1}, 2) == 0);
    CHECK(poly_integrate01_weighted(Polynomial(), 4) == 0);
    CHECK_THROWS(poly_integrate01_weighted(Polynomial{1}, 0));
}

TEST_CASE("polynomial shift composes", "[polynomial]")
{
    const Polynomial p{1, -2, 0, 3};
    for (const char *s : {"0", "1", "-3/7", "22/7"}) {
        const Rational h = Q(s);
        const Polynomial q = poly_shift(p, h);
        for (const char *xs : {"0", "2", "-1/2"}) {
            CHECK(q(Q(xs)) == p(Q(xs) + h));
        }
    }
}

TEST_CASE("series arithmetic", "[series]")
{
    const RationalSeries a(2, {1, 1, 0});
    const RationalSeries b(2, {1, -1, 0});
    CHECK(a * b == RationalSeries(2, {1, 0, -1}));
    CHECK(a + RationalSeries(2) == a);
    CHECK(series_derivative(exp_series(Rational(1), 3)) == exp_series(Rational(1), 2));
    CHECK_THROWS_AS(a * RationalSeries(3), SeriesOrderMismatch);
    CHECK_THROWS(series_derivative(RationalSeries(0)));
    CHECK(series_shift_up(a, 1) == RationalSeries(2, {0, 1, 1}));
    CHECK(series_negate_argument(a) == b);
}

TEST_CASE("series reciprocal", "[series]")
{
    CHECK(series_reciprocal(RationalSeries(3, {1, -1, 0, 0})) == RationalSeries(3, {1, 1, 1, 1}));
    CHECK(series_reciprocal(RationalSeries::one(4)) == RationalSeries::one(4));
    // 1 + t/3 + t^2/12 + t^3/60 = 2! sum_j t^j/(j+2)!; coefficients n! r_n are B_{2,n}
    const RationalSeries r = series_reciprocal(RationalSeries(3, {1, Q("1/3"), Q("1/12"), Q("1/60")}));
    CHECK(r == RationalSeries(3, {1, Q("-1/3"), Q("1/36"), Q("1/540")}));
    for (long n = 0; n <= 3; ++n) {
        CHECK(r[static_cast<std::size_t>(n)] * Rational(factorial(n)) == hb_number(2, n));
    }
    CHECK_THROWS_AS(series_reciprocal(RationalSeries(3, {0, 1, 0, 0})), NonInvertibleSeries);
}

TEST_CASE("exp series", "[series]")
{
    CHECK(exp_series(Rational(0), 5) == RationalSeries::one(5));
    CHECK(exp_series(Rational(1), 2) == RationalSeries(2, {1, 1, Q("1/2")}));
    CHECK(exp_series(Q("1/2"), 2) == RationalSeries(2, {1, Q("1/2"), Q("1/8")}));
    CHECK(exp_series(Q("2/3"), 8) * exp_series(Q("-2/3"), 8) == RationalSeries::one(8));
}

TEST_CASE("series over polynomials", "[series]")
{
    const PolySeries e = exp_series<Polynomial>(Polynomial::identity(), 4);
    CHECK(e[3] == Polynomial::monomial(Q("1/6"), 3));
    const PolySeries r = series_reciprocal(PolySeries::one(4) - series_shift_up(PolySeries::one(4), 1));
    CHECK(r[4] == Polynomial{1});
    CHECK_THROWS_AS(series_reciprocal(PolySeries::from_polynomial(Polynomial{0, 1}, 2)), NonInvertibleSeries);
}

// ---------------------------------------------------------------- properties

TEST_CASE("ring axioms on random operands", "[property]")
{
    std::mt19937 rng(20261015);
    using hbp::test::random_polynomial;
    using hbp::test::random_rational;
    using hbp::test::random_series;
    for (int trial = 0; trial < 200; ++trial) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);

        const Polynomial p = random_polynomial(rng), q = random_polynomial(rng), r = random_polynomial(rng);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * q == q * p);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p + q) + r == p + (q + r));

        const RationalSeries s = random_series(rng, 6), u = random_series(rng, 6), v = random_series(rng, 6);
        CHECK((s * u) * v == s * (u * v));
        CHECK(s * u == u * s);
        CHECK(s * (u + v) == s * u + s * v);
    }
}

TEST_CASE("reciprocal round trip", "[property]")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        RationalSeries s = hbp::test::random_series(rng, 10);
        if (s[0] == 0) {
            s[0] = 1;
        }
        CHECK(s * series_reciprocal(s) == RationalSeries::one(10));
    }
}

TEST_CASE("derivative then integral recovers p(1) - p(0)", "[property]")
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Polynomial p = hbp::test::random_polynomial(rng, 8);
        CHECK(poly_integrate01_weighted(poly_derivative(p), 1) == p(Rational(1)) - p(Rational(0)));
    }
}

TEST_CASE("negative multinomial parts vanish", "[property]")
{
    for (long n = 0; n <= 8; ++n) {
        for (long a = -3; a <= n; ++a) {
            for (long b = -3; b < 0; ++b) {
                CHECK(multinomial(n, {a, b}) == 0);
                CHECK(multinomial(n, {b, a}) == 0);
            }
        }
    }
}
