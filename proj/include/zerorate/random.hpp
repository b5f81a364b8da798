// random.hpp -- seeded, platform-stable sampling of rational points and small codes

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/distributions.hpp"
#include "zerorate/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace zerorate {

/// mt19937_64 with its own bounded-integer reduction, so a seed yields the same stream
/// on every standard library.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    long uniform_int(long lo, long hi)
    {
        if (hi < lo)
            throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// k distinct integers from [lo, hi], sorted.
inline std::vector<long> sample_distinct(Rng& rng, long lo, long hi, std::size_t k)
{
    if (hi - lo + 1 < static_cast<long>(k))
        throw std::invalid_argument("sample_distinct: range too small");
    std::set<long> picked;
    while (picked.size() < k)
        picked.insert(rng.uniform_int(lo, hi));
    return {picked.begin(), picked.end()};
}

/// A random exact point of Delta([k]) with common denominator at most max_den.
/// The denominator D is drawn first, then a uniform composition of D into k parts
/// (positive parts when full_support is set).
inline SimplexPoint random_rational_simplex(Rng& rng, int k, int max_den, bool full_support)
{
    if (k < 1)
        throw std::invalid_argument("random_rational_simplex needs k >= 1");
    const int min_den = full_support ? k : 1;
    if (max_den < min_den)
        throw std::invalid_argument("random_rational_simplex: denominator bound too small");
    const long D = rng.uniform_int(min_den, max_den);
    std::vector<long> parts;
    if (full_support) {
        auto cuts = sample_distinct(rng, 1, D - 1, static_cast<std::size_t>(k - 1));
        long prev = 0;
        for (long c : cuts) {
            parts.push_back(c - prev);
            prev = c;
        }
        parts.push_back(D - prev);
    } else {
        auto cuts = sample_distinct(rng, 1, D + k - 1, static_cast<std::size_t>(k - 1));
        long prev = 0;
        for (long c : cuts) {
            parts.push_back(c - prev - 1);
            prev = c;
        }
        parts.push_back(D + k - 1 - prev);
    }
    std::vector<Rational> e;
    for (long a : parts)
        e.push_back(make_rational(a, D));
    return SimplexPoint(std::move(e));
}

/// Random omega != U_L (rejection sampling).
inline SimplexPoint random_nonuniform_weighting(Rng& rng, int L, int max_den)
{
    const SimplexPoint u = uniform(L);
    for (;;) {
        SimplexPoint w = random_rational_simplex(rng, L, max_den, false);
        if (!(w == u))
            return w;
    }
}

inline Codeword random_word(Rng& rng, int q, int n)
{
    Codeword w(static_cast<std::size_t>(n));
    for (auto& x : w)
        x = static_cast<Symbol>(rng.uniform_int(1, q));
    return w;
}

/// M random codewords of length n; pairwise distinct when `distinct` is set (needs q^n >= M).
inline Codebook random_codebook(Rng& rng, int q, int n, int M, bool distinct)
{
    std::vector<Codeword> rows;
    std::set<Codeword> seen;
    while (static_cast<int>(rows.size()) < M) {
        Codeword w = random_word(rng, q, n);
        if (distinct && !seen.insert(w).second)
            continue;
        rows.push_back(std::move(w));
    }
    return Codebook(q, n, std::move(rows));
}

/// Every rational a/b with b <= max_den in [lo, hi], ascending.
inline std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi, int max_den)
{
    std::set<Rational> pts;
    for (int b = 1; b <= max_den; ++b) {
        Integer a_lo = (lo.get_num() * b + lo.get_den() - 1) / lo.get_den();
        if (sgn(lo) < 0)
            a_lo = lo.get_num() * b / lo.get_den();
        for (Integer a = a_lo;; ++a) {
            Rational r = make_rational(a, Integer(b));
            if (r > hi)
                break;
            if (r >= lo)
                pts.insert(r);
        }
    }
    return {pts.begin(), pts.end()};
}

} // namespace zerorate
