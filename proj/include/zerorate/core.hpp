// core.hpp -- alphabets, codebooks, list-recovery sets and exact combinatorics

#pragma once

#include "zerorate/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zerorate {

/// An alphabet element. Symbols are 1-based: the alphabet of size q is {1, ..., q}.
using Symbol = int;

/// A string over [q].
using Codeword = std::vector<Symbol>;

/// Largest alphabet supported by the bitmask representation of symbol subsets.
inline constexpr int kMaxAlphabet = 31;

/// A subset of [q] as a bitmask: bit (x-1) is set iff symbol x is a member.
using SubsetMask = std::uint32_t;

inline SubsetMask symbol_bit(Symbol x) { return SubsetMask{1} << (x - 1); }

inline bool subset_contains(SubsetMask s, Symbol x) { return (s & symbol_bit(x)) != 0; }

inline std::vector<Symbol> subset_elements(SubsetMask s)
{
    std::vector<Symbol> out;
    for (Symbol x = 1; s != 0; ++x, s >>= 1)
        if (s & 1u)
            out.push_back(x);
    return out;
}

inline std::string subset_to_string(SubsetMask s)
{
    std::string out = "{";
    bool first = true;
    for (Symbol x : subset_elements(s)) {
        if (!first)
            out += ",";
        out += std::to_string(x);
        first = false;
    }
    return out + "}";
}

/// All ell-subsets of [q] in colexicographic order, which is increasing bitmask order.
/// For q = 3, ell = 2 this is {1,2}, {1,3}, {2,3}.
inline std::vector<SubsetMask> ell_subsets(int q, int ell)
{
    if (q < 1 || q > kMaxAlphabet)
        throw std::invalid_argument("alphabet size out of range");
    if (ell < 1 || ell > q)
        throw std::invalid_argument("subset size must satisfy 1 <= ell <= q");
    std::vector<SubsetMask> out;
    // Gosper's hack walks same-popcount masks in increasing order.
    SubsetMask s = (SubsetMask{1} << ell) - 1;
    const SubsetMask limit = SubsetMask{1} << q;
    while (s < limit) {
        out.push_back(s);
        SubsetMask c = s & (~s + 1);
        SubsetMask r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    return out;
}

/// Index of a subset within ell_subsets(q, ell).
inline std::size_t subset_index(int q, int ell, SubsetMask s)
{
    auto subsets = ell_subsets(q, ell);
    auto it = std::lower_bound(subsets.begin(), subsets.end(), s);
    if (it == subsets.end() || *it != s)
        throw std::invalid_argument("mask is not an ell-subset of [q]");
    return static_cast<std::size_t>(it - subsets.begin());
}

/// An M x n array of symbols over [q]. Immutable once built.
class Codebook
{
public:
    Codebook(int q, int n, std::vector<Codeword> rows = {})
      : q_(q), n_(n), rows_(std::move(rows))
    {
        if (q < 2 || q > kMaxAlphabet)
            throw std::invalid_argument("alphabet size q must be in [2, " + std::to_string(kMaxAlphabet) + "]");
        if (n < 1)
            throw std::invalid_argument("blocklength n must be at least 1");
        for (const auto& row : rows_) {
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("codeword length differs from blocklength");
            for (Symbol x : row)
                if (x < 1 || x > q)
                    throw std::invalid_argument("symbol " + std::to_string(x) + " outside [1.." + std::to_string(q) + "]");
        }
    }

    int q() const noexcept { return q_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    std::span<const Symbol> row(std::size_t i) const { return rows_.at(i); }
    const std::vector<Codeword>& rows() const noexcept { return rows_; }
    Symbol at(std::size_t i, int j) const { return rows_[i][static_cast<std::size_t>(j)]; }

    /// The list formed by the given rows, in the given order.
    Codebook subset(std::span<const std::size_t> indices) const
    {
        std::vector<Codeword> picked;
        picked.reserve(indices.size());
        for (std::size_t i : indices)
            picked.push_back(rows_.at(i));
        return Codebook(q_, n_, std::move(picked));
    }

    /// Restriction of every codeword to the given coordinates (0-based).
    Codebook project(std::span<const int> coords) const
    {
        if (coords.empty())
            throw std::invalid_argument("projection onto an empty coordinate set");
        std::vector<Codeword> out;
        out.reserve(rows_.size());
        for (const auto& row : rows_) {
            Codeword c;
            c.reserve(coords.size());
            for (int j : coords) {
                if (j < 0 || j >= n_)
                    throw std::invalid_argument("projection coordinate out of range");
                c.push_back(row[static_cast<std::size_t>(j)]);
            }
            out.push_back(std::move(c));
        }
        return Codebook(q_, static_cast<int>(coords.size()), std::move(out));
    }

    /// Symbols of column j, top to bottom.
    std::vector<Symbol> column(int j) const
    {
        std::vector<Symbol> col;
        col.reserve(rows_.size());
        for (const auto& row : rows_)
            col.push_back(row[static_cast<std::size_t>(j)]);
        return col;
    }

    friend bool operator==(const Codebook&, const Codebook&) = default;

private:
    int q_;
    int n_;
    std::vector<Codeword> rows_;
};

/// A tuple Y = (Y_1, ..., Y_n) of ell-subsets of [q]: the center of a list-recovery ball.
/// With ell = 1 it is an ordinary Hamming-ball center.
class ListSet
{
public:
    ListSet(int q, int ell, std::vector<SubsetMask> sets)
      : q_(q), ell_(ell), sets_(std::move(sets))
    {
        if (q < 2 || q > kMaxAlphabet)
            throw std::invalid_argument("alphabet size out of range");
        if (ell < 1 || ell > q - 1)
            throw std::invalid_argument("list size must satisfy 1 <= ell <= q-1");
        const SubsetMask full = (SubsetMask{1} << q) - 1;
        for (SubsetMask s : sets_)
            if ((s & ~full) != 0 || std::popcount(s) != ell)
                throw std::invalid_argument("each set must hold exactly ell symbols of [q]");
    }

    /// Singleton sets around a word (the ell = 1 embedding of a Hamming center).
    static ListSet singletons(int q, std::span<const Symbol> word)
    {
        std::vector<SubsetMask> sets;
        sets.reserve(word.size());
        for (Symbol x : word) {
            if (x < 1 || x > q)
                throw std::invalid_argument("symbol outside the alphabet");
            sets.push_back(symbol_bit(x));
        }
        return ListSet(q, 1, std::move(sets));
    }

    int q() const noexcept { return q_; }
    int ell() const noexcept { return ell_; }
    int n() const noexcept { return static_cast<int>(sets_.size()); }
    SubsetMask set(int j) const { return sets_.at(static_cast<std::size_t>(j)); }
    const std::vector<SubsetMask>& sets() const noexcept { return sets_; }
    bool contains(int j, Symbol x) const { return subset_contains(set(j), x); }

    /// For ell = 1, the center word itself.
    Codeword as_word() const
    {
        if (ell_ != 1)
            throw std::logic_error("as_word needs singleton sets");
        Codeword w;
        for (SubsetMask s : sets_)
            w.push_back(std::countr_zero(s) + 1);
        return w;
    }

    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t j = 0; j < sets_.size(); ++j) {
            if (j)
                out += ",";
            out += ell_ == 1 ? std::to_string(std::countr_zero(sets_[j]) + 1) : subset_to_string(sets_[j]);
        }
        return out + ")";
    }

    friend bool operator==(const ListSet&, const ListSet&) = default;

private:
    int q_;
    int ell_;
    std::vector<SubsetMask> sets_;
};

/// Number of coordinates on which u and v differ.
inline int hamming_distance(std::span<const Symbol> u, std::span<const Symbol> v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("hamming_distance: length mismatch");
    int d = 0;
    for (std::size_t j = 0; j < u.size(); ++j)
        d += u[j] != v[j];
    return d;
}

/// Number of coordinates j with u(j) outside Y_j.
inline int lr_distance(std::span<const Symbol> u, const ListSet& y)
{
    if (static_cast<int>(u.size()) != y.n())
        throw std::invalid_argument("lr_distance: length mismatch");
    int d = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] < 1 || u[j] > y.q())
            throw std::invalid_argument("lr_distance: symbol outside the alphabet of the center");
        d += !subset_contains(y.set(static_cast<int>(j)), u[j]);
    }
    return d;
}

/// Top-ell plurality: how many entries the ell most frequent symbols cover.
inline int plurality(std::span<const Symbol> xs, int ell)
{
    if (xs.empty())
        throw std::invalid_argument("plurality of an empty list");
    if (ell < 1)
        throw std::invalid_argument("plurality needs ell >= 1");
    std::vector<int> counts;
    for (Symbol x : xs) {
        if (x < 1)
            throw std::invalid_argument("plurality: symbols are 1-based");
        if (static_cast<std::size_t>(x) > counts.size())
            counts.resize(static_cast<std::size_t>(x), 0);
        ++counts[static_cast<std::size_t>(x - 1)];
    }
    std::sort(counts.begin(), counts.end(), std::greater<>());
    const auto take = std::min<std::size_t>(counts.size(), static_cast<std::size_t>(ell));
    return std::accumulate(counts.begin(), counts.begin() + static_cast<std::ptrdiff_t>(take), 0);
}

/// (a_1, ..., a_q) with nonnegative parts: a_x counts how many of L draws equal x.
struct Composition
{
    std::vector<int> parts;

    int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
    friend bool operator==(const Composition&, const Composition&) = default;
};

/// Every composition of L into q nonnegative parts, once each, in lexicographic order.
/// There are C(L+q-1, q-1) of them.
inline std::vector<Composition> compositions(int q, int L)
{
    if (q < 1 || L < 0)
        throw std::invalid_argument("compositions need q >= 1 and L >= 0");
    std::vector<Composition> out;
    std::vector<int> parts(static_cast<std::size_t>(q), 0);
    // Recursive fill: position i takes 0..remaining, the last position takes the rest.
    auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == parts.size()) {
            parts[i] = remaining;
            out.push_back(Composition{parts});
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            parts[i] = v;
            self(self, i + 1, remaining - v);
        }
    };
    rec(rec, 0, L);
    return out;
}

/// L! / (a_1! ... a_q!) exactly.
inline Integer multinomial_integer(std::span<const int> parts)
{
    long total = 0;
    for (int a : parts) {
        if (a < 0)
            return 0;
        total += a;
    }
    Integer r = factorial(static_cast<unsigned>(total));
    for (int a : parts)
        r /= factorial(static_cast<unsigned>(a));
    return r;
}

inline Rational multinomial(const Composition& a) { return Rational(multinomial_integer(a.parts)); }

/// Sum of the ell largest parts of a.
inline int maxl(const Composition& a, int ell)
{
    if (ell < 1 || ell > static_cast<int>(a.parts.size()))
        throw std::invalid_argument("maxl needs 1 <= ell <= q");
    std::vector<int> p = a.parts;
    std::partial_sort(p.begin(), p.begin() + ell, p.end(), std::greater<>());
    return std::accumulate(p.begin(), p.begin() + ell, 0);
}

} // namespace zerorate
