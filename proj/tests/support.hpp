#pragma once

#include <hbp/hbp.hpp>

#include <random>
#include <string>
#include <vector>

namespace hbp::test {

inline Rational Q(const char *s)
{
    return parse_rational(s);
}

// Small random rationals: numerator in [-9, 9], denominator in [1, 6].
inline Rational random_rational(std::mt19937 &rng)
{
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 6);
    return make_rational(num(rng), den(rng));
}

inline Polynomial random_polynomial(std::mt19937 &rng, int max_degree = 5)
{
    std::uniform_int_distribution<int> deg(-1, max_degree);
    std::vector<Rational> c;
    for (int i = 0, d = deg(rng); i <= d; ++i) {
        c.push_back(random_rational(rng));
    }
    return Polynomial(std::move(c));
}

inline RationalSeries random_series(std::mt19937 &rng, std::size_t order)
{
    RationalSeries s(order);
    for (std::size_t k = 0; k <= order; ++k) {
        s[k] = random_rational(rng);
    }
    return s;
}

} // namespace hbp::test
