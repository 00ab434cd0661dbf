#pragma once

// Dense univariate polynomials over Rational, ascending degree.

#include <hbp/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

namespace hbp {

class Polynomial
{
public:
    Polynomial() = default;

    // Constant polynomial.
    explicit Polynomial(const Rational &c) : coeffs_{c}
    {
        trim();
    }

    explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
    {
        trim();
    }

    Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs)
    {
        trim();
    }

    static Polynomial monomial(const Rational &c, std::size_t degree)
    {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return Polynomial(std::move(v));
    }

    static Polynomial identity()
    {
        return Polynomial{Rational(0), Rational(1)};
    }

    bool is_zero() const
    {
        return coeffs_.empty();
    }

    /// -1 for the zero polynomial.
    long degree() const
    {
        return static_cast<long>(coeffs_.size()) - 1;
    }

    const std::vector<Rational> &coefficients() const
    {
        return coeffs_;
    }

    /// Coefficient of x^i; zero beyond the degree.
    Rational coeff(std::size_t i) const
    {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }

    const Rational &leading() const
    {
        static const Rational zero(0);
        return coeffs_.empty() ? zero : coeffs_.back();
    }

    Rational operator()(const Rational &x) const
    {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }

    Polynomial &operator-=(const Polynomial &o)
    {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        trim();
        return *this;
    }

    Polynomial &operator*=(const Rational &c)
    {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto &a : coeffs_) {
            a *= c;
        }
        return *this;
    }

    Polynomial &operator*=(const Polynomial &o)
    {
        *this = *this * o;
        return *this;
    }

    /// this += c * o, without a temporary.
    void add_scaled(const Polynomial &o, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size());
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += c * o.coeffs_[i];
        }
        trim();
    }

    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        a += b;
        return a;
    }

    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        a -= b;
        return a;
    }

    friend Polynomial operator-(Polynomial a)
    {
        for (auto &c : a.coeffs_) {
            c = -c;
        }
        return a;
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(std::move(out));
    }

    friend Polynomial operator*(Polynomial a, const Rational &c)
    {
        a *= c;
        return a;
    }

    friend Polynomial operator*(const Rational &c, Polynomial a)
    {
        a *= c;
        return a;
    }

    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    friend std::ostream &operator<<(std::ostream &os, const Polynomial &p)
    {
        if (p.is_zero()) {
            return os << "0";
        }
        bool first = true;
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
            if (p.coeffs_[i] == 0) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            os << "(" << to_string(p.coeffs_[i]) << ")";
            if (i > 0) {
                os << "*x^" << i;
            }
        }
        return os;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<Rational> coeffs_;
};

inline Polynomial poly_add(const Polynomial &a, const Polynomial &b)
{
    return a + b;
}

inline Polynomial poly_mul(const Polynomial &a, const Polynomial &b)
{
    return a * b;
}

inline Polynomial poly_scale(const Polynomial &p, const Rational &c)
{
    return p * c;
}

/// p(-x): flips the sign of odd-degree coefficients.
inline Polynomial poly_negate_argument(const Polynomial &p)
{
    std::vector<Rational> c = p.coefficients();
    for (std::size_t i = 1; i < c.size(); i += 2) {
        c[i] = -c[i];
    }
    return Polynomial(std::move(c));
}

inline Rational poly_eval(const Polynomial &p, const Rational &x)
{
    return p(x);
}

inline Polynomial poly_derivative(const Polynomial &p)
{
    const auto &c = p.coefficients();
    if (c.size() <= 1) {
        return {};
    }
    std::vector<Rational> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) {
        d[i - 1] = c[i] * static_cast<long>(i);
    }
    return Polynomial(std::move(d));
}

/// p(x + shift), by Taylor expansion around shift.
inline Polynomial poly_shift(const Polynomial &p, const Rational &shift)
{
    // Horner in the polynomial ring: ((c_d)(x+s) + c_{d-1})(x+s) + ...
    const Polynomial lin{shift, Rational(1)};
    Polynomial acc;
    const auto &c = p.coefficients();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * lin;
        acc += Polynomial(*it);
    }
    return acc;
}

/// Exact value of  int_0^1 (1 - x)^(N-1) p(x) dx,  N >= 1.
///
/// Expanding (1-x)^(N-1) = sum_j C(N-1, j) (-1)^j x^j, each monomial x^m
/// integrates to 1/(m+1).
inline Rational poly_integrate01_weighted(const Polynomial &p, long N)
{
    if (N < 1) {
        throw std::domain_error("weighted integral needs N >= 1");
    }
    const auto &c = p.coefficients();
    Rational total(0);
    for (long j = 0; j <= N - 1; ++j) {
        Rational w = binomial(N - 1, j) * sign_pow(j);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) {
                continue;
            }
            total += w * c[i] / Rational(static_cast<long>(i) + j + 1);
        }
    }
    return total;
}

} // namespace hbp
