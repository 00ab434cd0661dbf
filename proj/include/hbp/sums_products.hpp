#pragma once

// Sums of products
//
//   S^{(p)}_{N,n}(x_1..x_p) = sum_{i_1+...+i_p = n} n!/(i_1!...i_p!) prod_j B_{N,i_j}(x_j)
//
// computed three ways: direct enumeration of weak compositions, the
// recurrence in p, and the subset/rank closed form. The last two see the
// points only through z = x_1 + ... + x_p.

#include <hbp/hb_table.hpp>
#include <hbp/rational.hpp>

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hbp {

inline constexpr long default_max_p = 20;

class PointVector
{
public:
    explicit PointVector(std::vector<Rational> points) : points_(std::move(points))
    {
        if (points_.empty()) {
            throw std::invalid_argument("PointVector needs at least one point");
        }
    }

    PointVector(std::initializer_list<Rational> points) : PointVector(std::vector<Rational>(points)) {}

    std::size_t size() const
    {
        return points_.size();
    }

    const std::vector<Rational> &points() const
    {
        return points_;
    }

    Rational z() const
    {
        return std::accumulate(points_.begin(), points_.end(), Rational(0));
    }

private:
    std::vector<Rational> points_;
};

/// A subset sigma of A = {1, ..., size} with its complement, both sorted.
class SubsetContext
{
public:
    SubsetContext(long size, std::vector<long> sigma) : size_(size), sigma_(std::move(sigma))
    {
        std::vector<bool> in(static_cast<std::size_t>(size_) + 1, false);
        long prev = 0;
        for (long i : sigma_) {
            if (i <= prev || i > size_) {
                throw std::invalid_argument("subset must be strictly increasing within 1.." + std::to_string(size_));
            }
            in[static_cast<std::size_t>(i)] = true;
            prev = i;
        }
        for (long j = 1; j <= size_; ++j) {
            if (!in[static_cast<std::size_t>(j)]) {
                complement_.push_back(j);
            }
        }
    }

    /// Bit b of mask selects element b + 1.
    static SubsetContext from_mask(long size, std::uint64_t mask)
    {
        std::vector<long> sigma;
        for (long b = 0; b < size; ++b) {
            if ((mask >> b) & 1U) {
                sigma.push_back(b + 1);
            }
        }
        return SubsetContext(size, std::move(sigma));
    }

    long size() const
    {
        return size_;
    }

    const std::vector<long> &sigma() const
    {
        return sigma_;
    }

    const std::vector<long> &complement() const
    {
        return complement_;
    }

private:
    long size_;
    std::vector<long> sigma_;
    std::vector<long> complement_;
};

/// R_sigma(j): number of elements of sigma strictly greater than j.
inline long rank(const SubsetContext &ctx, long j)
{
    long r = 0;
    for (long i : ctx.sigma()) {
        r += i > j ? 1 : 0;
    }
    return r;
}

using LevelCoefficient = std::function<Rational(long level, long index)>;

/// prod_{j in complement} a(j, n - R(j)) * prod_{i in sigma} b(i, n - R(i)).
inline Rational pi_product(const SubsetContext &ctx, long n, const LevelCoefficient &coeff_a,
                           const LevelCoefficient &coeff_b)
{
    Rational prod(1);
    for (long j : ctx.complement()) {
        prod *= coeff_a(j, n - rank(ctx, j));
        if (prod == 0) {
            return prod;
        }
    }
    for (long i : ctx.sigma()) {
        prod *= coeff_b(i, n - rank(ctx, i));
        if (prod == 0) {
            return prod;
        }
    }
    return prod;
}

/// Calls visit(parts) for every weak composition of n into p parts, in
/// lexicographic order, reusing one buffer.
template <typename Visit>
void for_each_weak_composition(long n, long p, Visit &&visit)
{
    if (n < 0 || p < 1) {
        return;
    }
    std::vector<long> parts(static_cast<std::size_t>(p), 0);
    parts.back() = n;
    const std::size_t last = parts.size() - 1;
    while (true) {
        visit(static_cast<const std::vector<long> &>(parts));
        if (last == 0) {
            return;
        }
        // parts[last] holds the remainder n - sum of the others.
        if (parts[last] > 0) {
            ++parts[last - 1];
            --parts[last];
            continue;
        }
        std::size_t i = last - 1;
        while (i > 0 && parts[i] == 0) {
            --i;
        }
        if (i == 0) {
            return;
        }
        const long moved = parts[i];
        parts[i] = 0;
        ++parts[i - 1];
        parts[last] = moved - 1;
    }
}

inline void require_sop_args(long N, long p)
{
    if (N < 1) {
        throw std::domain_error("sums of products need N >= 1");
    }
    if (p < 1) {
        throw std::domain_error("sums of products need p >= 1");
    }
    if (p > default_max_p) {
        throw std::out_of_range("p = " + std::to_string(p) + " exceeds the cap " + std::to_string(default_max_p));
    }
}

/// Direct multinomial sum over weak compositions, using each x_i.
inline Rational sop_bruteforce(HBTable &table, long N, long n, const PointVector &xs)
{
    require_sop_args(N, static_cast<long>(xs.size()));
    if (n < 0) {
        return Rational(0);
    }
    const long p = static_cast<long>(xs.size());
    // values[j][i] = B_{N,i}(x_j) / i!
    std::vector<std::vector<Rational>> values;
    values.reserve(xs.size());
    for (const auto &x : xs.points()) {
        std::vector<Rational> v = table.values_at(N, x, n);
        for (long i = 0; i <= n; ++i) {
            v[static_cast<std::size_t>(i)] /= Rational(factorial(i));
        }
        values.push_back(std::move(v));
    }
    Rational sum(0);
    Rational term;
    for_each_weak_composition(n, p, [&](const std::vector<long> &parts) {
        term = 1;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            term *= values[j][static_cast<std::size_t>(parts[j])];
            if (term == 0) {
                return;
            }
        }
        sum += term;
    });
    return sum * Rational(factorial(n));
}

/// [S^{(p)}_{N,0}(z), ..., S^{(p)}_{N,n}(z)] by
///   S^{(q+1)}_m = ((qN - m) S^{(q)}_m + m (z - q) S^{(q)}_{m-1}) / (qN),
/// starting from S^{(1)}_m = B_{N,m}(z).
inline std::vector<Rational> sop_recurrence_row(HBTable &table, long N, long n, long p, const Rational &z)
{
    require_sop_args(N, p);
    if (n < 0) {
        return {};
    }
    std::vector<Rational> cur = table.values_at(N, z, n);
    std::vector<Rational> next(cur.size());
    for (long q = 1; q < p; ++q) {
        const Rational inv_qN = make_rational(1, q * N);
        const Rational shift = z - q;
        for (long m = 0; m <= n; ++m) {
            Rational v = cur[static_cast<std::size_t>(m)] * (q * N - m);
            if (m >= 1) {
                v += shift * cur[static_cast<std::size_t>(m - 1)] * m;
            }
            next[static_cast<std::size_t>(m)] = v * inv_qN;
        }
        std::swap(cur, next);
    }
    return cur;
}

inline Rational sop_recurrence(HBTable &table, long N, long n, long p, const Rational &z)
{
    if (n < 0) {
        require_sop_args(N, p);
        return Rational(0);
    }
    return sop_recurrence_row(table, N, n, p, z).back();
}

inline Rational sop_recurrence(HBTable &table, long N, long n, const PointVector &xs)
{
    return sop_recurrence(table, N, n, static_cast<long>(xs.size()), xs.z());
}

/// sum_{k=0}^{p-1} ( sum_{sigma in A_{p-1}(k)} pi_{a,b}(sigma; n) ) B_{N,n-k}(z)
/// with a(q,m) = 1 - m/(qN), b(q,m) = (m/N)(z/q - 1).
inline Rational sop_closed_form(HBTable &table, long N, long n, long p, const Rational &z)
{
    require_sop_args(N, p);
    if (n < 0) {
        return Rational(0);
    }
    const LevelCoefficient a = [N](long q, long m) -> Rational { return Rational(1) - make_rational(m, q * N); };
    const LevelCoefficient b = [N, &z](long q, long m) -> Rational { return make_rational(m, N) * (z / q - 1); };
    const long levels = p - 1;
    std::vector<Rational> weight(static_cast<std::size_t>(p), Rational(0));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << levels); ++mask) {
        const SubsetContext ctx = SubsetContext::from_mask(levels, mask);
        weight[ctx.sigma().size()] += pi_product(ctx, n, a, b);
    }
    Rational sum(0);
    for (long k = 0; k < p; ++k) {
        const Rational &w = weight[static_cast<std::size_t>(k)];
        if (w != 0) {
            sum += w * table.value(N, n - k, z);
        }
    }
    return sum;
}

inline Rational sop_closed_form(HBTable &table, long N, long n, const PointVector &xs)
{
    return sop_closed_form(table, N, n, static_cast<long>(xs.size()), xs.z());
}

using IndexSequence = std::function<Rational(long index)>;

/// x(n,k) for  x(n,k) = a(n,k) x(n-1,k) + b(n,k) x(n-1,k-1),  x(0,k) = f(k),
/// by the subset formula  sum_m ( sum_{sigma in A_n(m)} pi_{a,b}(sigma; k) ) f(k-m).
inline Rational general_triangular_solve(const LevelCoefficient &a, const LevelCoefficient &b, const IndexSequence &f,
                                         long n, long k)
{
    if (n < 0) {
        throw std::domain_error("triangular recurrence level must be >= 0");
    }
    if (n > 62) {
        throw std::out_of_range("subset enumeration limited to n <= 62");
    }
    std::vector<Rational> weight(static_cast<std::size_t>(n) + 1, Rational(0));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const SubsetContext ctx = SubsetContext::from_mask(n, mask);
        weight[ctx.sigma().size()] += pi_product(ctx, k, a, b);
    }
    Rational sum(0);
    for (long m = 0; m <= n; ++m) {
        const Rational &w = weight[static_cast<std::size_t>(m)];
        if (w != 0) {
            sum += w * f(k - m);
        }
    }
    return sum;
}

/// Same quantity by running the recurrence level by level over the
/// window of k-values it touches.
inline Rational triangular_iterate(const LevelCoefficient &a, const LevelCoefficient &b, const IndexSequence &f, long n,
                                   long k)
{
    if (n < 0) {
        throw std::domain_error("triangular recurrence level must be >= 0");
    }
    // row[i] = x(level, k - n + i), i = 0..n
    std::vector<Rational> row;
    row.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        row.push_back(f(k - n + i));
    }
    for (long level = 1; level <= n; ++level) {
        // entries with i < level depend on values below the window; they are
        // never read again, so they are left stale.
        for (long i = n; i >= level; --i) {
            const long kk = k - n + i;
            row[static_cast<std::size_t>(i)] =
                a(level, kk) * row[static_cast<std::size_t>(i)] + b(level, kk) * row[static_cast<std::size_t>(i - 1)];
        }
    }
    return row.back();
}

} // namespace hbp
