#pragma once

// Exact rational scalars and the integer combinatorics used throughout.
//
// Rational is GMP's mpq_class. Every arithmetic result of mpq_class is in
// canonical form (positive denominator, lowest terms); the constructors
// below canonicalize explicitly so that equality is structural.

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hbp {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1)
{
    return make_rational(Integer(num), Integer(den));
}

/// "p/q" in lowest terms, "p" when q = 1, sign on the numerator only.
inline std::string to_string(const Rational &r)
{
    return r.get_str(10);
}

/// Accepts "p", "p/q", "-p/q" (and a leading '+'); the result is canonical.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s.front() == '+') {
        s.erase(0, 1);
    }
    auto slash = s.find('/');
    auto valid_int = [](std::string_view part, bool allow_sign) {
        if (part.empty()) {
            return false;
        }
        std::size_t i = 0;
        if (allow_sign && part[0] == '-') {
            i = 1;
        }
        if (i == part.size()) {
            return false;
        }
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                return false;
            }
        }
        return true;
    };
    std::string_view sv(s);
    std::string_view num = sv.substr(0, slash);
    std::string_view den = slash == std::string::npos ? std::string_view("1") : sv.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    return make_rational(Integer(std::string(num)), Integer(std::string(den)));
}

/// (-1)^e for any integer e.
inline int sign_pow(long e)
{
    return (e % 2 == 0) ? 1 : -1;
}

inline Rational kronecker_delta(long n)
{
    return n == 0 ? Rational(1) : Rational(0);
}

inline Integer factorial(long n)
{
    if (n < 0) {
        throw std::domain_error("factorial of a negative integer");
    }
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// C(n, k); zero outside 0 <= k <= n.
inline Rational binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n) {
        return Rational(0);
    }
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

/// n! / (k_1! ... k_r! (n - sum k_i)!); zero when any part is negative,
/// the parts overshoot n, or n < 0.
inline Rational multinomial(long n, std::span<const long> parts)
{
    if (n < 0) {
        return Rational(0);
    }
    long used = 0;
    for (long k : parts) {
        if (k < 0) {
            return Rational(0);
        }
        used += k;
    }
    if (used > n) {
        return Rational(0);
    }
    Integer r = factorial(n);
    for (long k : parts) {
        r /= factorial(k);
    }
    r /= factorial(n - used);
    return Rational(r);
}

inline Rational multinomial(long n, std::initializer_list<long> parts)
{
    return multinomial(n, std::span<const long>(parts.begin(), parts.size()));
}

/// n (n-1) ... (n-k+1); empty product for k = 0.
inline Rational falling_factorial(long n, long k)
{
    if (k < 0) {
        throw std::domain_error("falling factorial with negative length");
    }
    Integer r = 1;
    for (long i = 0; i < k; ++i) {
        r *= n - i;
    }
    return Rational(r);
}

/// n (n+1) ... (n+k-1); empty product for k = 0.
inline Rational rising_factorial(long n, long k)
{
    if (k < 0) {
        throw std::domain_error("rising factorial with negative length");
    }
    Integer r = 1;
    for (long i = 0; i < k; ++i) {
        r *= n + i;
    }
    return Rational(r);
}

} // namespace hbp
