#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <thread>

using namespace hbp;
using hbp::test::Q;

namespace {

// Frozen from an independent computer-algebra expansion of
// (t^N/N!)/(e^t - T_{N-1}(t)), scaled by n!.
const std::vector<std::vector<const char *>> frozen_numbers = {
    {"1", "-1/2", "1/6", "0", "-1/30", "0", "1/42", "0", "-1/30", "0", "5/66"},
    {"1", "-1/3", "1/18", "1/90", "-1/270", "-5/1134", "-1/5670", "7/2430", "13/7290", "-307/133650", "-479/112266"},
    {"1", "-1/4", "1/40", "1/160", "1/5600", "-1/896", "-13/19200", "7/76800", "7453/14784000", "6669/19712000",
     "-114753/512512000"},
    {"1", "-1/5", "1/75", "3/875", "13/26250", "-19/78750", "-239/918750", "-289/3093750", "5689/108281250",
     "573621/5474218750", "2962237/49267968750"},
};

} // namespace

TEST_CASE("numbers match frozen oracle values", "[hb_number]")
{
    HBTable table;
    for (long N = 1; N <= 4; ++N) {
        for (long n = 0; n <= 10; ++n) {
            CAPTURE(N, n);
            CHECK(table.number(N, n) == Q(frozen_numbers[static_cast<std::size_t>(N - 1)][static_cast<std::size_t>(n)]));
        }
    }
    CHECK(table.number(1, 40) == Q("-261082718496449122051/13530"));
    CHECK(table.number(2, 20) == Q("-1556262845/572893398"));
}

TEST_CASE("number edge cases", "[hb_number]")
{
    CHECK(hb_number(7, 0) == 1);
    CHECK(hb_number(1, 1) == Q("-1/2"));
    CHECK(hb_number(1, 3) == 0);
    CHECK(hb_number(3, -1) == 0);
    CHECK(hb_number(3, -5) == 0);
    CHECK_THROWS_AS(hb_number(0, 2), std::domain_error);
    HBTable small(10);
    CHECK(small.number(2, 10) == Q("-479/112266"));
    CHECK_THROWS_AS(small.number(2, 11), std::out_of_range);
}

TEST_CASE("generating series", "[hb_series]")
{
    CHECK(hb_series(1, Rational(0), 2) == RationalSeries(2, {1, Q("-1/2"), Q("1/12")}));
    CHECK(hb_series(2, Rational(0), 1) == RationalSeries(1, {1, Q("-1/3")}));
    for (long N = 1; N <= 4; ++N) {
        for (const char *x : {"0", "1", "-3/7"}) {
            CHECK(hb_series(N, Q(x), 5)[0] == 1);
        }
    }
}

TEST_CASE("series coefficients are B_{N,n}(x)/n!", "[hb_series]")
{
    HBTable table;
    for (long N = 1; N <= 3; ++N) {
        for (const char *xs : {"0", "1/2", "22/7"}) {
            const Rational x = Q(xs);
            const RationalSeries s = hb_series(N, x, 12);
            for (long n = 0; n <= 12; ++n) {
                CHECK(s[static_cast<std::size_t>(n)] * Rational(factorial(n)) == table.value(N, n, x));
            }
        }
    }
    // symbolic x agrees with the table polynomials
    const PolySeries sym = hb_series_symbolic(3, 8);
    for (long n = 0; n <= 8; ++n) {
        CHECK(sym[static_cast<std::size_t>(n)] * Rational(factorial(n)) == table.polynomial_ref(3, n));
    }
}

TEST_CASE("polynomials", "[hb_polynomial]")
{
    CHECK(hb_polynomial(1, 1).poly == Polynomial{Q("-1/2"), 1});
    CHECK(hb_polynomial(2, 2).poly == Polynomial{Q("1/18"), Q("-2/3"), 1});
    CHECK(hb_polynomial(3, 0).poly == Polynomial{1});
    // frozen from the series oracle
    CHECK(hb_polynomial(3, 3).poly == Polynomial{Q("1/160"), Q("3/40"), Q("-3/4"), 1});
    CHECK(hb_polynomial(3, 4).poly == Polynomial{Q("1/5600"), Q("1/40"), Q("3/20"), -1, 1});
    const HBPolynomialHandle h = hb_polynomial(4, 6);
    CHECK(h.N == 4);
    CHECK(h.n == 6);
    CHECK(h.poly.degree() == 6);
    CHECK(h.poly.leading() == 1);
}

TEST_CASE("taylor polynomials", "[taylor]")
{
    CHECK(taylor_poly(0) == Polynomial{1});
    CHECK(taylor_poly(2) == Polynomial{1, 1, Q("1/2")});
    CHECK(taylor_poly(1)(Rational(1)) == 2);
    CHECK(taylor_poly(-1).is_zero());
}

TEST_CASE("a_m coefficients", "[am]")
{
    CHECK(am_coefficients(1, 1).empty());
    CHECK(am_coefficients(1, 2) == std::vector<Rational>{-1});
    CHECK(am_coefficients(2, 2) == std::vector<Rational>{0, 1});
    CHECK(am_coefficients(3, 4).size() == 5);
    CHECK_THROWS(am_coefficients(0, 2));
}

TEST_CASE("Appell axioms", "[axioms]")
{
    HBTable table;
    CHECK(verify_appell_axioms(table, 1, 20));
    CHECK(verify_appell_axioms(table, 4, 20));
    CHECK(poly_integrate01_weighted(table.polynomial_ref(2, 0), 2) == Q("1/2"));
}

TEST_CASE("fault injection is detected by the axioms", "[axioms]")
{
    HBTable table;
    table.inject_fault(2, 3, Q("1/91"));
    CHECK(table.number(2, 3) == Q("1/91"));
    CHECK_FALSE(verify_appell_axioms(table, 2, 6));
    CHECK(verify_appell_axioms(table, 3, 6));
}

TEST_CASE("concurrent readers see the same values", "[table]")
{
    HBTable shared;
    HBTable reference;
    std::vector<std::thread> workers;
    std::vector<std::vector<Rational>> seen(4);
    for (int w = 0; w < 4; ++w) {
        workers.emplace_back([&, w] {
            for (long n = 0; n <= 40; ++n) {
                seen[static_cast<std::size_t>(w)].push_back(shared.polynomial_ref(1 + w % 2, n)(Rational(1, 3)));
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    for (int w = 0; w < 4; ++w) {
        for (long n = 0; n <= 40; ++n) {
            CHECK(seen[static_cast<std::size_t>(w)][static_cast<std::size_t>(n)] ==
                  reference.value(1 + w % 2, n, make_rational(1, 3)));
        }
    }
}

// ---------------------------------------------------------------- properties

TEST_CASE("recurrence agrees with series division", "[property]")
{
    HBTable table;
    for (long N = 1; N <= 5; ++N) {
        const RationalSeries s = hb_number_series(N, 40);
        for (long n = 0; n <= 40; ++n) {
            CHECK(table.number(N, n) == s[static_cast<std::size_t>(n)] * Rational(factorial(n)));
        }
    }
}

TEST_CASE("classical Bernoulli facts", "[property]")
{
    HBTable table;
    for (long k = 1; k <= 25; ++k) {
        CHECK(table.number(1, 2 * k + 1) == 0);
    }
    for (long n = 1; n <= 40; ++n) {
        CHECK(table.value(1, n, Rational(1)) == Rational(sign_pow(n)) * table.number(1, n));
    }
    for (long N = 1; N <= 5; ++N) {
        for (long n = 0; n <= 30; ++n) {
            CHECK(table.polynomial_ref(N, n)(Rational(0)) == table.number(N, n));
        }
    }
}
