#pragma once

// Hypergeometric Bernoulli numbers B_{N,n} and polynomials B_{N,n}(x),
// generated by  F_N(x,t) = (t^N/N!) e^{xt} / (e^t - T_{N-1}(t)).
//
// The table computes numbers by the linear recurrence obtained from
// F_N(0,t) (e^t - T_{N-1}(t)) / (t^N/N!) = 1:
//
//   B_{N,0} = 1,
//   B_{N,n} = -n! N! sum_{k=0}^{n-1} B_{N,k} / (k! (N+n-k)!)      (n >= 1).
//
// hb_series() builds the same generating function by series division and
// is kept as an independent cross-check; it never reads the table.

#include <hbp/polynomial.hpp>
#include <hbp/rational.hpp>
#include <hbp/truncated_series.hpp>

#include <cstdlib>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbp {

inline constexpr long default_max_n = 200;

/// HBP_MAX_N from the environment if set and valid, else default_max_n.
inline long max_n_from_env()
{
    if (const char *env = std::getenv("HBP_MAX_N")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0) {
            return v;
        }
    }
    return default_max_n;
}

struct HBPolynomialHandle {
    long N;
    long n;
    Polynomial poly;
};

/// Memoized B_{N,n}, dense per N. Readers share a lock; extensions are
/// serialized. References returned by number()/polynomial_ref() stay valid
/// for the lifetime of the table (deque growth does not move elements).
class HBTable
{
public:
    explicit HBTable(long max_n = default_max_n) : max_n_(max_n) {}

    HBTable(const HBTable &) = delete;
    HBTable &operator=(const HBTable &) = delete;

    long max_n() const
    {
        return max_n_;
    }

    void set_max_n(long max_n)
    {
        std::unique_lock lock(mutex_);
        max_n_ = max_n;
    }

    /// B_{N,n}; zero for n < 0.
    const Rational &number(long N, long n)
    {
        static const Rational zero(0);
        if (n < 0) {
            return zero;
        }
        require_args(N, n);
        {
            std::shared_lock lock(mutex_);
            auto it = rows_.find(N);
            if (it != rows_.end() && n < static_cast<long>(it->second.numbers.size())) {
                return it->second.numbers[static_cast<std::size_t>(n)];
            }
        }
        std::unique_lock lock(mutex_);
        Row &row = rows_[N];
        extend_numbers(N, row, n);
        return row.numbers[static_cast<std::size_t>(n)];
    }

    /// B_{N,n}(x) = sum_{k=0}^{n} C(n,k) B_{N,k} x^{n-k}; the zero
    /// polynomial for n < 0.
    const Polynomial &polynomial_ref(long N, long n)
    {
        static const Polynomial zero;
        if (n < 0) {
            return zero;
        }
        require_args(N, n);
        {
            std::shared_lock lock(mutex_);
            auto it = rows_.find(N);
            if (it != rows_.end() && n < static_cast<long>(it->second.polys.size())) {
                return it->second.polys[static_cast<std::size_t>(n)];
            }
        }
        std::unique_lock lock(mutex_);
        Row &row = rows_[N];
        extend_numbers(N, row, n);
        for (long m = static_cast<long>(row.polys.size()); m <= n; ++m) {
            std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
            for (long k = 0; k <= m; ++k) {
                c[static_cast<std::size_t>(m - k)] = binomial(m, k) * row.numbers[static_cast<std::size_t>(k)];
            }
            row.polys.emplace_back(std::move(c));
        }
        return row.polys[static_cast<std::size_t>(n)];
    }

    HBPolynomialHandle polynomial(long N, long n)
    {
        return {N, n, polynomial_ref(N, n)};
    }

    /// B_{N,n}(x); zero for n < 0.
    Rational value(long N, long n, const Rational &x)
    {
        return n < 0 ? Rational(0) : polynomial_ref(N, n)(x);
    }

    /// [B_{N,0}(x), ..., B_{N,n_max}(x)].
    std::vector<Rational> values_at(long N, const Rational &x, long n_max)
    {
        std::vector<Rational> out;
        out.reserve(static_cast<std::size_t>(n_max < 0 ? 0 : n_max + 1));
        for (long n = 0; n <= n_max; ++n) {
            out.push_back(polynomial_ref(N, n)(x));
        }
        return out;
    }

    /// Test hook: overwrite B_{N,n}. Later entries of the same order are
    /// computed from the corrupted value; cached polynomials are dropped.
    void inject_fault(long N, long n, const Rational &value)
    {
        require_args(N, n);
        std::unique_lock lock(mutex_);
        Row &row = rows_[N];
        extend_numbers(N, row, n);
        row.numbers.resize(static_cast<std::size_t>(n) + 1);
        row.numbers[static_cast<std::size_t>(n)] = value;
        row.polys.clear();
    }

private:
    struct Row {
        std::deque<Rational> numbers;
        std::deque<Polynomial> polys;
    };

    void require_args(long N, long n) const
    {
        if (N < 1) {
            throw std::domain_error("hypergeometric Bernoulli order N must be >= 1, got " + std::to_string(N));
        }
        if (n > max_n_) {
            throw std::out_of_range("index n = " + std::to_string(n) + " exceeds the soft cap " +
                                    std::to_string(max_n_) + " (raise it with HBP_MAX_N)");
        }
    }

    // Caller holds the unique lock.
    static void extend_numbers(long N, Row &row, long n)
    {
        if (row.numbers.empty()) {
            row.numbers.emplace_back(1);
        }
        const Integer fact_N = factorial(N);
        for (long m = static_cast<long>(row.numbers.size()); m <= n; ++m) {
            Rational acc(0);
            for (long k = 0; k < m; ++k) {
                const Rational &b = row.numbers[static_cast<std::size_t>(k)];
                if (b == 0) {
                    continue;
                }
                acc += b / Rational(factorial(k) * factorial(N + m - k));
            }
            acc *= Rational(factorial(m) * fact_N);
            row.numbers.push_back(-acc);
        }
    }

    long max_n_;
    std::map<long, Row> rows_;
    mutable std::shared_mutex mutex_;
};

/// Process-wide table honouring HBP_MAX_N.
inline HBTable &default_table()
{
    static HBTable table(max_n_from_env());
    return table;
}

inline Rational hb_number(long N, long n)
{
    return default_table().number(N, n);
}

inline HBPolynomialHandle hb_polynomial(long N, long n)
{
    return default_table().polynomial(N, n);
}

/// T_N(t) = sum_{k=0}^{N} t^k / k!.
inline Polynomial taylor_poly(long N)
{
    if (N < 0) {
        return {};
    }
    std::vector<Rational> c;
    c.reserve(static_cast<std::size_t>(N) + 1);
    for (long k = 0; k <= N; ++k) {
        c.emplace_back(make_rational(Integer(1), factorial(k)));
    }
    return Polynomial(std::move(c));
}

/// The series  f_N(t) = F_N(0,t) = (1/N!) / g(t),  g(t) = sum_j t^j/(N+j)!.
inline RationalSeries hb_number_series(long N, std::size_t order)
{
    if (N < 1) {
        throw std::domain_error("hb_series needs N >= 1");
    }
    std::vector<Rational> g(order + 1);
    for (std::size_t j = 0; j <= order; ++j) {
        g[j] = make_rational(Integer(1), factorial(N + static_cast<long>(j)));
    }
    RationalSeries r = series_reciprocal(RationalSeries(order, std::move(g)));
    r *= make_rational(Integer(1), factorial(N));
    return r;
}

/// Truncated F_N(x,t); coefficient n is B_{N,n}(x)/n!.
inline RationalSeries hb_series(long N, const Rational &x, std::size_t order)
{
    return hb_number_series(N, order) * exp_series(x, order);
}

/// F_N(x,t) with x left symbolic: coefficient n is the polynomial B_{N,n}(x)/n!.
inline PolySeries hb_series_symbolic(long N, std::size_t order)
{
    const RationalSeries f = hb_number_series(N, order);
    std::vector<Polynomial> c;
    c.reserve(order + 1);
    for (const auto &v : f.coefficients()) {
        c.emplace_back(v);
    }
    return PolySeries(order, std::move(c)) * exp_series<Polynomial>(Polynomial::identity(), order);
}

/// a_1..a_{M+N-2} with  1 - T_{N-1}(t) T_{M-1}(-t) = sum_{m=1}^{M+N-2} a_m t^m.
inline std::vector<Rational> am_coefficients(long M, long N)
{
    if (M < 1 || N < 1) {
        throw std::domain_error("am_coefficients needs M, N >= 1");
    }
    const Polynomial p = Polynomial(Rational(1)) - taylor_poly(N - 1) * poly_negate_argument(taylor_poly(M - 1));
    if (p.coeff(0) != 0) {
        throw std::logic_error("1 - T_{N-1}(t) T_{M-1}(-t) has a nonzero constant term");
    }
    std::vector<Rational> a;
    for (long m = 1; m <= M + N - 2; ++m) {
        a.push_back(p.coeff(static_cast<std::size_t>(m)));
    }
    return a;
}

/// Checks  B_{N,0}(x) = 1,  B'_{N,n} = n B_{N,n-1},
/// int_0^1 (1-x)^{N-1} B_{N,n}(x) dx = delta_n / N  for 0 <= n <= n_max.
inline bool verify_appell_axioms(HBTable &table, long N, long n_max)
{
    if (table.polynomial_ref(N, 0) != Polynomial(Rational(1))) {
        return false;
    }
    const Rational inv_N = make_rational(1, N);
    for (long n = 0; n <= n_max; ++n) {
        const Polynomial &p = table.polynomial_ref(N, n);
        if (p.degree() != n || p.leading() != 1 || p.coeff(0) != table.number(N, n)) {
            return false;
        }
        if (n >= 1 && poly_derivative(p) != table.polynomial_ref(N, n - 1) * Rational(n)) {
            return false;
        }
        if (poly_integrate01_weighted(p, N) != inv_N * kronecker_delta(n)) {
            return false;
        }
    }
    return true;
}

inline bool verify_appell_axioms(long N, long n_max)
{
    return verify_appell_axioms(default_table(), N, n_max);
}

} // namespace hbp
