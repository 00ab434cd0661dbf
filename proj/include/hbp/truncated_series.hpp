#pragma once

// Truncated formal power series  sum_{k=0}^{O} c_k t^k + O(t^{O+1})
// over Rational or Polynomial coefficients.

#include <hbp/polynomial.hpp>
#include <hbp/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hbp {

struct NonInvertibleSeries : std::domain_error {
    using std::domain_error::domain_error;
};

struct SeriesOrderMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

inline bool ring_is_zero(const Rational &r)
{
    return r == 0;
}

inline bool ring_is_zero(const Polynomial &p)
{
    return p.is_zero();
}

inline Rational ring_inverse(const Rational &r)
{
    if (r == 0) {
        throw NonInvertibleSeries("series has zero constant term");
    }
    return 1 / r;
}

// Units of Q[x] are the nonzero constants.
inline Polynomial ring_inverse(const Polynomial &p)
{
    if (p.degree() != 0) {
        throw NonInvertibleSeries("series constant term is not a unit of Q[x]");
    }
    return Polynomial(1 / p.coeff(0));
}

template <typename Ring>
Ring ring_from_rational(const Rational &r)
{
    return Ring(r);
}

template <typename Ring>
void ring_add_product(Ring &acc, const Ring &a, const Ring &b)
{
    acc += a * b;
}

inline void ring_add_product(Rational &acc, const Rational &a, const Rational &b)
{
    if (a == 0 || b == 0) {
        return;
    }
    acc += a * b;
}

} // namespace detail

template <typename Ring>
class TruncatedSeries
{
public:
    using ring_type = Ring;

    explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, detail::ring_from_rational<Ring>(Rational(0)))
    {
    }

    /// Pads with zeros or truncates to exactly order + 1 coefficients.
    TruncatedSeries(std::size_t order, std::vector<Ring> coeffs) : coeffs_(std::move(coeffs))
    {
        coeffs_.resize(order + 1, detail::ring_from_rational<Ring>(Rational(0)));
    }

    static TruncatedSeries one(std::size_t order)
    {
        TruncatedSeries s(order);
        s.coeffs_[0] = detail::ring_from_rational<Ring>(Rational(1));
        return s;
    }

    /// Series of a polynomial in t, truncated at order.
    static TruncatedSeries from_polynomial(const Polynomial &p, std::size_t order)
    {
        TruncatedSeries s(order);
        for (std::size_t i = 0; i <= order && i < p.coefficients().size(); ++i) {
            s.coeffs_[i] = detail::ring_from_rational<Ring>(p.coefficients()[i]);
        }
        return s;
    }

    std::size_t order() const
    {
        return coeffs_.size() - 1;
    }

    const std::vector<Ring> &coefficients() const
    {
        return coeffs_;
    }

    const Ring &operator[](std::size_t k) const
    {
        return coeffs_.at(k);
    }

    Ring &operator[](std::size_t k)
    {
        return coeffs_.at(k);
    }

    TruncatedSeries &operator+=(const TruncatedSeries &o)
    {
        require_same_order(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] += o.coeffs_[k];
        }
        return *this;
    }

    TruncatedSeries &operator-=(const TruncatedSeries &o)
    {
        require_same_order(o);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            coeffs_[k] -= o.coeffs_[k];
        }
        return *this;
    }

    TruncatedSeries &operator*=(const Rational &c)
    {
        for (auto &a : coeffs_) {
            a *= c;
        }
        return *this;
    }

    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries &b)
    {
        a += b;
        return a;
    }

    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries &b)
    {
        a -= b;
        return a;
    }

    // Cauchy product truncated at the common order.
    friend TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        a.require_same_order(b);
        TruncatedSeries out(a.order());
        const std::size_t n = a.coeffs_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (detail::ring_is_zero(a.coeffs_[i])) {
                continue;
            }
            for (std::size_t j = 0; i + j < n; ++j) {
                detail::ring_add_product(out.coeffs_[i + j], a.coeffs_[i], b.coeffs_[j]);
            }
        }
        return out;
    }

    friend TruncatedSeries operator*(TruncatedSeries a, const Rational &c)
    {
        a *= c;
        return a;
    }

    friend TruncatedSeries operator*(const Rational &c, TruncatedSeries a)
    {
        a *= c;
        return a;
    }

    friend bool operator==(const TruncatedSeries &, const TruncatedSeries &) = default;

private:
    void require_same_order(const TruncatedSeries &o) const
    {
        if (o.coeffs_.size() != coeffs_.size()) {
            throw SeriesOrderMismatch("series order mismatch: " + std::to_string(order()) + " vs " +
                                      std::to_string(o.order()));
        }
    }

    std::vector<Ring> coeffs_;
};

using RationalSeries = TruncatedSeries<Rational>;
using PolySeries = TruncatedSeries<Polynomial>;

template <typename Ring>
TruncatedSeries<Ring> series_add(const TruncatedSeries<Ring> &a, const TruncatedSeries<Ring> &b)
{
    return a + b;
}

template <typename Ring>
TruncatedSeries<Ring> series_mul(const TruncatedSeries<Ring> &a, const TruncatedSeries<Ring> &b)
{
    return a * b;
}

template <typename Ring>
TruncatedSeries<Ring> series_scale(const TruncatedSeries<Ring> &s, const Rational &c)
{
    return s * c;
}

/// d/dt. The result has order (input order - 1): build the operand one
/// order higher than the derivative you need. Requires order >= 1.
template <typename Ring>
TruncatedSeries<Ring> series_derivative(const TruncatedSeries<Ring> &s)
{
    if (s.order() == 0) {
        throw SeriesOrderMismatch("derivative of an order-0 series has no coefficients");
    }
    TruncatedSeries<Ring> d(s.order() - 1);
    for (std::size_t k = 1; k <= s.order(); ++k) {
        d[k - 1] = s[k];
        d[k - 1] *= Rational(static_cast<long>(k));
    }
    return d;
}

/// Multiplication by t^shift (coefficients pushed up, top ones dropped).
template <typename Ring>
TruncatedSeries<Ring> series_shift_up(const TruncatedSeries<Ring> &s, std::size_t shift)
{
    TruncatedSeries<Ring> out(s.order());
    for (std::size_t k = 0; k + shift <= s.order(); ++k) {
        out[k + shift] = s[k];
    }
    return out;
}

/// s(-t).
template <typename Ring>
TruncatedSeries<Ring> series_negate_argument(TruncatedSeries<Ring> s)
{
    for (std::size_t k = 1; k <= s.order(); k += 2) {
        s[k] *= Rational(-1);
    }
    return s;
}

/// r with s * r = 1 + O(t^{O+1}):
///   r_0 = 1/c_0,  r_n = -(1/c_0) sum_{k=1}^{n} c_k r_{n-k}.
template <typename Ring>
TruncatedSeries<Ring> series_reciprocal(const TruncatedSeries<Ring> &s)
{
    const Ring inv0 = detail::ring_inverse(s[0]);
    TruncatedSeries<Ring> r(s.order());
    r[0] = inv0;
    for (std::size_t n = 1; n <= s.order(); ++n) {
        Ring acc = detail::ring_from_rational<Ring>(Rational(0));
        for (std::size_t k = 1; k <= n; ++k) {
            detail::ring_add_product(acc, s[k], r[n - k]);
        }
        r[n] = -(inv0 * acc);
    }
    return r;
}

/// sum_{k=0}^{order} a^k t^k / k!
template <typename Ring>
TruncatedSeries<Ring> exp_series(const Ring &a, std::size_t order)
{
    TruncatedSeries<Ring> s(order);
    Ring term = detail::ring_from_rational<Ring>(Rational(1));
    s[0] = term;
    for (std::size_t k = 1; k <= order; ++k) {
        term = term * a;
        term *= Rational(1, static_cast<unsigned long>(k));
        s[k] = term;
    }
    return s;
}

inline RationalSeries exp_series(const Rational &a, std::size_t order)
{
    return exp_series<Rational>(a, order);
}

} // namespace hbp
