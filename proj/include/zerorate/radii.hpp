// radii.hpp -- Chebyshev, average and weighted-average radii of a list of codewords

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/distributions.hpp"
#include "zerorate/errors.hpp"
#include "zerorate/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace zerorate {

/// Limits for exhaustive searches.
struct SearchOptions
{
    /// Maximum number of candidate centers (or tuples) an exhaustive search may visit.
    std::uint64_t budget = 10'000'000;
    /// Worker threads for partitioned searches. Results do not depend on this.
    unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// Types of tuples
// ---------------------------------------------------------------------------

/// Empirical distribution of the columns of an L x n matrix of symbols.
class TupleType
{
public:
    using Pattern = std::vector<Symbol>;

    TupleType(int q, int L, int n, std::map<Pattern, long> counts)
      : q_(q), L_(L), n_(n), counts_(std::move(counts))
    {
    }

    int q() const noexcept { return q_; }
    int L() const noexcept { return L_; }
    int n() const noexcept { return n_; }

    /// Column counts of the patterns that occur, in lexicographic pattern order.
    const std::map<Pattern, long>& counts() const noexcept { return counts_; }

    /// Fraction of columns equal to u (zero for absent patterns).
    Rational weight(const Pattern& u) const
    {
        auto it = counts_.find(u);
        return it == counts_.end() ? Rational(0) : make_rational(it->second, n_);
    }

    /// max over all u in [q]^L of |typ_u - q^{-L}|.
    Rational max_deviation_from_uniform() const
    {
        Integer qL = 1;
        for (int i = 0; i < L_; ++i)
            qL *= q_;
        Rational target(Integer(1), qL);
        target.canonicalize();
        Rational worst = 0;
        for (const auto& [u, c] : counts_) {
            Rational d = make_rational(c, n_) - target;
            if (abs(d) > worst)
                worst = abs(d);
        }
        if (Integer(static_cast<long>(counts_.size())) < qL && target > worst)
            worst = target;
        return worst;
    }

    friend bool operator==(const TupleType&, const TupleType&) = default;

private:
    int q_;
    int L_;
    int n_;
    std::map<Pattern, long> counts_;
};

/// Type of the list, read as an L x n matrix.
inline TupleType tuple_type(const Codebook& list)
{
    if (list.empty())
        throw std::invalid_argument("tuple_type of an empty list");
    std::map<TupleType::Pattern, long> counts;
    for (int j = 0; j < list.n(); ++j)
        ++counts[list.column(j)];
    return TupleType(list.q(), static_cast<int>(list.size()), list.n(), std::move(counts));
}

// ---------------------------------------------------------------------------
// Exact Chebyshev (ell-)radius
// ---------------------------------------------------------------------------

struct ChebyshevResult
{
    /// Relative radius: max distance of the optimal center divided by n.
    Rational radius;
    /// Smallest achievable maximum lr-distance.
    int max_distance = 0;
    /// Lexicographically first optimal center (coordinates in increasing colex subset order).
    ListSet center;
};

namespace detail {

struct BranchResult
{
    int best = std::numeric_limits<int>::max();
    std::vector<SubsetMask> center;
};

// Depth-first branch and bound over X^n. A branch is pruned once its partial maximum
// reaches the incumbent, so only strict improvements replace the incumbent and the
// first optimum in enumeration order wins.
inline void chebyshev_dfs(const Codebook& list, const std::vector<SubsetMask>& subsets, int j,
                          std::vector<int>& dist, int cur_max, std::vector<SubsetMask>& cur, BranchResult& out)
{
    const int n = list.n();
    if (cur_max >= out.best)
        return;
    if (j == n) {
        out.best = cur_max;
        out.center = cur;
        return;
    }
    const std::size_t M = list.size();
    for (SubsetMask s : subsets) {
        int new_max = cur_max;
        for (std::size_t i = 0; i < M; ++i) {
            if (!subset_contains(s, list.at(i, j))) {
                ++dist[i];
                new_max = std::max(new_max, dist[i]);
            }
        }
        cur[static_cast<std::size_t>(j)] = s;
        chebyshev_dfs(list, subsets, j + 1, dist, new_max, cur, out);
        for (std::size_t i = 0; i < M; ++i)
            if (!subset_contains(s, list.at(i, j)))
                --dist[i];
    }
}

} // namespace detail

/// Exact rad_ell of a list (or of a whole code): (1/n) min over Y in X^n of max_i lr_distance(c_i, Y).
/// Throws BudgetExceeded when C(q,ell)^n exceeds options.budget.
inline ChebyshevResult chebyshev_radius_exact(const Codebook& list, int ell, const SearchOptions& options = {})
{
    const int q = list.q(), n = list.n();
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("chebyshev_radius_exact needs 1 <= ell <= q-1");
    const auto subsets = ell_subsets(q, ell);
    const std::uint64_t space = saturating_pow(subsets.size(), static_cast<std::uint64_t>(n));
    if (space > options.budget)
        throw BudgetExceeded("exact Chebyshev radius over C(q,ell)^n centers", space, options.budget);

    const SubsetMask first = subsets.front();
    if (list.empty())
        return {Rational(0), 0, ListSet(q, ell, std::vector<SubsetMask>(static_cast<std::size_t>(n), first))};

    // One branch per choice of Y_1; branches are independent so workers can split them.
    const std::size_t K = subsets.size();
    std::vector<detail::BranchResult> branches(K);
    auto run_branch = [&](std::size_t b, int incumbent) {
        std::vector<int> dist(list.size(), 0);
        std::vector<SubsetMask> cur(static_cast<std::size_t>(n), first);
        int cur_max = 0;
        for (std::size_t i = 0; i < list.size(); ++i)
            if (!subset_contains(subsets[b], list.at(i, 0)))
                cur_max = std::max(cur_max, ++dist[i]);
        cur[0] = subsets[b];
        branches[b].best = incumbent;
        detail::chebyshev_dfs(list, subsets, 1, dist, cur_max, cur, branches[b]);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(K)));
    if (workers == 1) {
        int incumbent = n + 1;
        for (std::size_t b = 0; b < K; ++b) {
            run_branch(b, incumbent);
            if (!branches[b].center.empty())
                incumbent = branches[b].best;
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < K; b += workers)
                    run_branch(b, n + 1);
            });
        for (auto& t : pool)
            t.join();
    }

    // Lowest branch holding the minimum: the lexicographically first optimum.
    const detail::BranchResult* best = nullptr;
    for (const auto& br : branches)
        if (!br.center.empty() && (best == nullptr || br.best < best->best))
            best = &br;
    return {make_rational(best->best, n), best->best, ListSet(q, ell, best->center)};
}

// ---------------------------------------------------------------------------
// Average and weighted-average radii (closed forms)
// ---------------------------------------------------------------------------

/// (1/n) sum_j (1 - plur_ell(column j) / L).
inline Rational average_radius(const Codebook& list, int ell)
{
    if (list.empty())
        throw std::invalid_argument("average_radius of an empty list");
    if (ell < 1 || ell > list.q() - 1)
        throw std::invalid_argument("average_radius needs 1 <= ell <= q-1");
    const long L = static_cast<long>(list.size());
    long covered = 0;
    for (int j = 0; j < list.n(); ++j)
        covered += plurality(list.column(j), ell);
    return 1 - make_rational(covered, L * list.n());
}

namespace detail {

// max over ell-sets A of the omega-mass of the positions whose symbol lies in A,
// i.e. the sum of the ell heaviest per-symbol masses.
inline Rational top_ell_mass(int q, std::span<const Symbol> column, const std::vector<Rational>& omega, int ell)
{
    std::vector<Rational> mass(static_cast<std::size_t>(q), Rational(0));
    for (std::size_t i = 0; i < column.size(); ++i)
        mass[static_cast<std::size_t>(column[i] - 1)] += omega[i];
    std::partial_sort(mass.begin(), mass.begin() + ell, mass.end(),
                      [](const Rational& a, const Rational& b) { return a > b; });
    Rational s = 0;
    for (int k = 0; k < ell; ++k)
        s += mass[static_cast<std::size_t>(k)];
    return s;
}

} // namespace detail

/// 1 - (1/n) sum_j max_{A in X} sum_{i : c_i(j) in A} omega(i). Needs an exact omega.
inline Rational weighted_average_radius(const Codebook& list, const SimplexPoint& omega, int ell)
{
    if (omega.size() != list.size())
        throw std::invalid_argument("weighted_average_radius: omega length differs from the list size");
    if (ell < 1 || ell > list.q() - 1)
        throw std::invalid_argument("weighted_average_radius needs 1 <= ell <= q-1");
    const auto& w = omega.exact();
    Rational total = 0;
    for (int j = 0; j < list.n(); ++j)
        total += detail::top_ell_mass(list.q(), list.column(j), w, ell);
    return 1 - total / list.n();
}

/// Same value computed from the tuple type alone.
inline Rational weighted_average_radius(const TupleType& type, const SimplexPoint& omega, int ell)
{
    if (static_cast<int>(omega.size()) != type.L())
        throw std::invalid_argument("weighted_average_radius: omega length differs from L");
    const auto& w = omega.exact();
    Rational total = 0;
    for (const auto& [u, c] : type.counts())
        total += detail::top_ell_mass(type.q(), u, w, ell) * c;
    return 1 - total / type.n();
}

// ---------------------------------------------------------------------------
// Simplex embedding
// ---------------------------------------------------------------------------

/// 0/1 indicator over X (colex order) of the ell-sets containing x. For ell = 1, the one-hot e_x.
inline std::vector<int> embed(Symbol x, int q, int ell)
{
    if (x < 1 || x > q)
        throw std::invalid_argument("embed: symbol outside the alphabet");
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("embed needs 1 <= ell <= q-1");
    std::vector<int> v;
    for (SubsetMask s : ell_subsets(q, ell))
        v.push_back(subset_contains(s, x) ? 1 : 0);
    return v;
}

/// d(phi_ell(x), eta) = (||phi_ell(x) - eta||_1 - C(q-1,ell-1) + 1) / 2, exact.
/// On a vertex eta = e_A this is 1 if x is outside A and 0 otherwise.
inline Rational embedded_distance_exact(Symbol x, const SimplexPoint& eta, int q, int ell)
{
    const auto chi = embed(x, q, ell);
    const auto& e = eta.exact();
    if (e.size() != chi.size())
        throw std::invalid_argument("embedded_distance: eta must live on C(q,ell) coordinates");
    Rational l1 = 0;
    for (std::size_t a = 0; a < chi.size(); ++a)
        l1 += abs(Rational(chi[a]) - e[a]);
    return (l1 - Rational(binomial(q - 1, ell - 1)) + 1) / 2;
}

/// Floating-point variant of embedded_distance_exact.
inline double embedded_distance(Symbol x, const SimplexPoint& eta, int q, int ell)
{
    if (eta.is_exact())
        return embedded_distance_exact(x, eta, q, ell).get_d();
    const auto chi = embed(x, q, ell);
    const auto& e = eta.floating();
    if (e.size() != chi.size())
        throw std::invalid_argument("embedded_distance: eta must live on C(q,ell) coordinates");
    double l1 = 0;
    for (std::size_t a = 0; a < chi.size(); ++a)
        l1 += std::abs(chi[a] - e[a]);
    return (l1 - binomial(q - 1, ell - 1).get_d() + 1.0) / 2.0;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// A fractional center: one probability vector over X per coordinate.
struct FractionalCenter
{
    int q = 0;
    int ell = 1;
    /// blocks[j][a] is the mass the center at coordinate j puts on the a-th ell-set (colex order).
    std::vector<std::vector<double>> blocks;

    int n() const { return static_cast<int>(blocks.size()); }

    /// Index of the ell-set carrying the whole block, or nullopt for a fractional block.
    std::optional<std::size_t> vertex(int j, double tol = 1e-9) const
    {
        const auto& b = blocks.at(static_cast<std::size_t>(j));
        std::optional<std::size_t> hit;
        for (std::size_t a = 0; a < b.size(); ++a) {
            if (b[a] > tol) {
                if (hit)
                    return std::nullopt;
                hit = a;
            }
        }
        if (hit && std::abs(b[*hit] - 1.0) > 1e-7)
            return std::nullopt;
        return hit;
    }

    int vertex_blocks(double tol = 1e-9) const
    {
        int c = 0;
        for (int j = 0; j < n(); ++j)
            c += vertex(j, tol).has_value();
        return c;
    }
};

/// All radius notions for one list.
struct RadiusReport
{
    int q = 0;
    int ell = 1;
    int n = 0;
    int L = 0;
    Rational average;
    /// Weighted-average radius per named omega (always includes "uniform").
    std::map<std::string, Rational> weighted;
    std::optional<Rational> chebyshev;
    std::optional<ListSet> chebyshev_center;
    std::optional<double> relaxed;
    std::optional<FractionalCenter> relaxed_center;

    /// average <= relaxed <= chebyshev <= relaxed + L/n, over whichever fields are present.
    bool consistent(double tol = 1e-7) const
    {
        const double avg = average.get_d();
        if (relaxed && avg > *relaxed + tol)
            return false;
        if (chebyshev && sgn(*chebyshev - average) < 0)
            return false;
        if (relaxed && chebyshev) {
            const double cheb = chebyshev->get_d();
            if (*relaxed > cheb + tol)
                return false;
            if (cheb > *relaxed + static_cast<double>(L) / n + tol)
                return false;
        }
        return true;
    }
};

} // namespace zerorate
