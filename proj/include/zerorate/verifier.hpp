// verifier.hpp -- exhaustive list-recoverability checks and tuple-type statistics

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/errors.hpp"
#include "zerorate/radii.hpp"
#include "zerorate/random.hpp"
#include "zerorate/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace zerorate {

/// Outcome of a list-recoverability check. On FAIL the witness is a center together with
/// at least L rows (0-based) lying within distance p n of it.
struct Verdict
{
    bool pass = true;
    Rational p;
    int ell = 1;
    int L = 2;
    std::optional<ListSet> witness_center;
    std::vector<std::size_t> captured_rows;
    /// Smallest L-subset radius, when the radius route computed it.
    std::optional<Rational> min_radius;
};

namespace detail {

// Largest integer distance admitted by a ball of relative radius p.
inline long admitted_distance(const Rational& p, int n)
{
    if (sgn(p) < 0)
        return -1;
    Rational pn = p * n;
    Integer f = pn.get_num() / pn.get_den();
    return f.get_si();
}

struct BallSearch
{
    const Codebook& code;
    const std::vector<SubsetMask>& subsets;
    long limit;
    std::size_t L;
    std::vector<int> dist;
    std::vector<SubsetMask> cur;
    std::optional<std::vector<SubsetMask>> found;

    bool dfs(int j)
    {
        std::size_t alive = 0;
        for (int d : dist)
            alive += d <= limit;
        if (alive < L)
            return false;
        if (j == code.n()) {
            found = cur;
            return true;
        }
        for (SubsetMask s : subsets) {
            for (std::size_t i = 0; i < code.size(); ++i)
                dist[i] += !subset_contains(s, code.at(i, j));
            cur[static_cast<std::size_t>(j)] = s;
            const bool hit = dfs(j + 1);
            for (std::size_t i = 0; i < code.size(); ++i)
                dist[i] -= !subset_contains(s, code.at(i, j));
            if (hit)
                return true;
        }
        return false;
    }
};

} // namespace detail

/// Searches every center Y in X^n for one whose ball of radius p n holds at least L rows.
/// PASS iff none exists. The witness is the first such center in enumeration order.
/// Throws BudgetExceeded when C(q,ell)^n exceeds the budget; use
/// is_list_recoverable_via_radius for those instances.
inline Verdict is_list_recoverable(const Codebook& code, const Rational& p, int ell, int L,
                                   const SearchOptions& options = {})
{
    const int q = code.q(), n = code.n();
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("list recovery needs 1 <= ell <= q-1");
    if (L < 1)
        throw std::invalid_argument("list recovery needs L >= 1");
    Verdict v;
    v.p = p;
    v.ell = ell;
    v.L = L;
    const long limit = detail::admitted_distance(p, n);
    if (code.size() < static_cast<std::size_t>(L) || limit < 0)
        return v;

    const auto subsets = ell_subsets(q, ell);
    const std::uint64_t space = saturating_pow(subsets.size(), static_cast<std::uint64_t>(n));
    if (space > options.budget)
        throw BudgetExceeded("ball search over C(q,ell)^n centers (try the tuple-radius check)", space,
                             options.budget);

    const std::size_t K = subsets.size();
    std::vector<std::optional<std::vector<SubsetMask>>> hits(K);
    auto run_branch = [&](std::size_t b) {
        detail::BallSearch s{code, subsets, limit, static_cast<std::size_t>(L),
                             std::vector<int>(code.size(), 0),
                             std::vector<SubsetMask>(static_cast<std::size_t>(n), subsets.front()), std::nullopt};
        for (std::size_t i = 0; i < code.size(); ++i)
            s.dist[i] += !subset_contains(subsets[b], code.at(i, 0));
        s.cur[0] = subsets[b];
        s.dfs(1);
        hits[b] = std::move(s.found);
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(K)));
    if (workers == 1) {
        for (std::size_t b = 0; b < K; ++b) {
            run_branch(b);
            if (hits[b])
                break;
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t b = w; b < K; b += workers)
                    run_branch(b);
            });
        for (auto& t : pool)
            t.join();
    }
    for (std::size_t b = 0; b < K; ++b) {
        if (!hits[b])
            continue;
        ListSet center(q, ell, *hits[b]);
        v.pass = false;
        for (std::size_t i = 0; i < code.size(); ++i)
            if (lr_distance(code.row(i), center) <= limit)
                v.captured_rows.push_back(i);
        v.witness_center = std::move(center);
        break;
    }
    return v;
}

/// Visits every L-subset of {0..M-1} in lexicographic order; stops early if visit returns false.
template <class Visit>
void for_each_subset(std::size_t M, std::size_t L, Visit&& visit)
{
    if (L > M)
        return;
    std::vector<std::size_t> idx(L);
    for (std::size_t i = 0; i < L; ++i)
        idx[i] = i;
    for (;;) {
        if (!visit(std::as_const(idx)))
            return;
        std::size_t k = L;
        while (k > 0 && idx[k - 1] == M - L + k - 1)
            --k;
        if (k == 0)
            return;
        ++idx[k - 1];
        for (std::size_t i = k; i < L; ++i)
            idx[i] = idx[i - 1] + 1;
    }
}

/// PASS iff every L-subset of rows has exact ell-radius greater than p. Agrees with
/// is_list_recoverable wherever both run. The budget bounds the number of subsets;
/// each subset's radius search has its own budget.
inline Verdict is_list_recoverable_via_radius(const Codebook& code, const Rational& p, int ell, int L,
                                              const SearchOptions& options = {})
{
    if (ell < 1 || ell > code.q() - 1)
        throw std::invalid_argument("list recovery needs 1 <= ell <= q-1");
    if (L < 1)
        throw std::invalid_argument("list recovery needs L >= 1");
    Verdict v;
    v.p = p;
    v.ell = ell;
    v.L = L;
    const std::size_t M = code.size();
    if (M < static_cast<std::size_t>(L))
        return v;
    const Integer subsets = binomial(static_cast<long>(M), L);
    if (!subsets.fits_ulong_p() || subsets.get_ui() > options.budget)
        throw BudgetExceeded("enumeration of C(M,L) sublists", subsets.fits_ulong_p() ? subsets.get_ui() : UINT64_MAX,
                             options.budget);
    std::optional<ChebyshevResult> best;
    std::vector<std::size_t> best_rows;
    SearchOptions inner = options;
    inner.threads = 1;
    for_each_subset(M, static_cast<std::size_t>(L), [&](const std::vector<std::size_t>& idx) {
        ChebyshevResult r = chebyshev_radius_exact(code.subset(idx), ell, inner);
        if (!best || r.radius < best->radius) {
            best = std::move(r);
            best_rows = idx;
        }
        return true;
    });
    v.min_radius = best->radius;
    if (best->radius <= p) {
        v.pass = false;
        v.witness_center = best->center;
        v.captured_rows = best_rows;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Abundance of random-like tuples
// ---------------------------------------------------------------------------

struct AbundanceReport
{
    /// Ordered tuples of distinct rows examined.
    std::uint64_t tuples = 0;
    /// Tuples whose type is within epsilon of q^{-L} at every pattern.
    std::uint64_t close = 0;
    bool sampled = false;
    /// Exact fraction for exhaustive runs; for sampled runs the point estimate.
    double fraction = 0;
    /// 95% Wilson interval (equal to the fraction when exhaustive).
    double ci_low = 0;
    double ci_high = 0;
    Rational epsilon;
    /// Deviation max_u |typ_u - q^{-L}| -> number of tuples.
    std::map<Rational, std::uint64_t> histogram;
    /// rad_ell of the whole code, when the exact search fits the budget.
    std::optional<Rational> radius;
    /// 1 - ell/q - delta.
    Rational biased_threshold;

    bool biased() const { return radius && *radius <= biased_threshold; }
};

/// Type statistics of ordered L-tuples of distinct rows. Exhaustive when M!/(M-L)! fits the
/// budget, otherwise `samples` seeded uniform draws.
inline AbundanceReport abundance_statistics(const Codebook& code, int ell, int L, const Rational& epsilon,
                                            const Rational& delta, const SearchOptions& options = {},
                                            std::uint64_t seed = 1, std::uint64_t samples = 100'000)
{
    const std::size_t M = code.size();
    if (L < 1 || static_cast<std::size_t>(L) > M)
        throw std::invalid_argument("abundance statistics need 1 <= L <= M");
    if (ell < 1 || ell > code.q() - 1)
        throw std::invalid_argument("abundance statistics need 1 <= ell <= q-1");
    AbundanceReport rep;
    rep.epsilon = epsilon;
    rep.biased_threshold = 1 - make_rational(ell, code.q()) - delta;

    std::uint64_t ordered = 1;
    for (int i = 0; i < L; ++i) {
        const std::uint64_t f = M - static_cast<std::size_t>(i);
        ordered = ordered > UINT64_MAX / f ? UINT64_MAX : ordered * f;
    }

    auto record = [&](const std::vector<std::size_t>& idx) {
        Rational dev = tuple_type(code.subset(idx)).max_deviation_from_uniform();
        ++rep.tuples;
        rep.close += dev <= epsilon;
        ++rep.histogram[dev];
    };

    if (ordered <= options.budget) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(L));
        std::vector<bool> used(M, false);
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == idx.size()) {
                record(idx);
                return;
            }
            for (std::size_t i = 0; i < M; ++i) {
                if (used[i])
                    continue;
                used[i] = true;
                idx[pos] = i;
                self(self, pos + 1);
                used[i] = false;
            }
        };
        rec(rec, 0);
        rep.fraction = static_cast<double>(rep.close) / static_cast<double>(rep.tuples);
        rep.ci_low = rep.ci_high = rep.fraction;
    } else {
        rep.sampled = true;
        Rng rng(seed);
        for (std::uint64_t s = 0; s < samples; ++s) {
            std::vector<std::size_t> idx;
            while (idx.size() < static_cast<std::size_t>(L)) {
                auto i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(M) - 1));
                if (std::find(idx.begin(), idx.end(), i) == idx.end())
                    idx.push_back(i);
            }
            record(idx);
        }
        const double nn = static_cast<double>(rep.tuples);
        const double ph = static_cast<double>(rep.close) / nn;
        const double z = 1.959963984540054;
        const double denom = 1 + z * z / nn;
        const double centre = (ph + z * z / (2 * nn)) / denom;
        const double half = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn)) / denom;
        rep.fraction = ph;
        rep.ci_low = std::max(0.0, centre - half);
        rep.ci_high = std::min(1.0, centre + half);
    }

    try {
        SearchOptions radius_opts = options;
        rep.radius = chebyshev_radius_exact(code, ell, radius_opts).radius;
    } catch (const BudgetExceeded&) {
        rep.radius.reset();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Projection subcodes
// ---------------------------------------------------------------------------

struct ProjectionSubcode
{
    /// rad_ell of the code projected onto the chosen coordinates.
    Rational projected_radius;
    bool hypothesis_holds = false;
    /// Rows (0-based) of the largest class sharing one top-ell symbol set off the projection.
    std::vector<std::size_t> rows;
    /// Center built from the projected center and the shared top-ell set.
    std::optional<ListSet> center;
    int max_distance = 0;
    Rational measured_radius;
    /// 1 - ell/q - (|A|/n) epsilon.
    Rational bound;

    bool certified() const { return hypothesis_holds && measured_radius <= bound; }
};

/// If the projection onto `coords` has ell-radius at most 1 - ell/q - epsilon, returns a subcode of
/// at least |code| / C(q,ell) rows with an explicit center of radius at most
/// 1 - ell/q - (|coords|/n) epsilon. Requires |code| >= C(q,ell) s.
inline ProjectionSubcode projection_subcode(const Codebook& code, const std::vector<int>& coords, int ell,
                                            const Rational& epsilon, std::size_t s,
                                            const SearchOptions& options = {})
{
    const int q = code.q(), n = code.n();
    const auto subsets = ell_subsets(q, ell);
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("projection_subcode needs 1 <= ell <= q-1");
    if (code.size() < subsets.size() * s)
        throw std::invalid_argument("projection_subcode needs |code| >= C(q,ell) s");
    if (code.empty())
        throw std::invalid_argument("projection_subcode of an empty code");
    if (coords.empty())
        throw std::invalid_argument("projection_subcode needs at least one coordinate");
    std::vector<bool> in_a(static_cast<std::size_t>(n), false);
    for (int j : coords) {
        if (j < 0 || j >= n || in_a[static_cast<std::size_t>(j)])
            throw std::invalid_argument("projection coordinates must be distinct and in range");
        in_a[static_cast<std::size_t>(j)] = true;
    }

    ProjectionSubcode out;
    const Rational base = 1 - make_rational(ell, q);
    out.bound = base - make_rational(static_cast<long>(coords.size()), n) * epsilon;
    const ChebyshevResult proj = chebyshev_radius_exact(code.project(coords), ell, options);
    out.projected_radius = proj.radius;
    out.hypothesis_holds = proj.radius <= base - epsilon;
    if (!out.hypothesis_holds)
        return out;

    // Top-ell symbol set of each codeword off the projection; ties go to smaller symbols.
    std::map<SubsetMask, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < code.size(); ++i) {
        std::vector<int> counts(static_cast<std::size_t>(q), 0);
        for (int j = 0; j < n; ++j)
            if (!in_a[static_cast<std::size_t>(j)])
                ++counts[static_cast<std::size_t>(code.at(i, j) - 1)];
        std::vector<Symbol> order(static_cast<std::size_t>(q));
        for (int x = 0; x < q; ++x)
            order[static_cast<std::size_t>(x)] = x + 1;
        std::stable_sort(order.begin(), order.end(), [&](Symbol a, Symbol b) {
            return counts[static_cast<std::size_t>(a - 1)] > counts[static_cast<std::size_t>(b - 1)];
        });
        SubsetMask t = 0;
        for (int k = 0; k < ell; ++k)
            t |= symbol_bit(order[static_cast<std::size_t>(k)]);
        classes[t].push_back(i);
    }
    SubsetMask shared = 0;
    for (const auto& [mask, rows] : classes)
        if (rows.size() > out.rows.size()) {
            out.rows = rows;
            shared = mask;
        }

    std::vector<SubsetMask> sets(static_cast<std::size_t>(n), shared);
    for (std::size_t k = 0; k < coords.size(); ++k)
        sets[static_cast<std::size_t>(coords[k])] = proj.center.set(static_cast<int>(k));
    ListSet z(q, ell, std::move(sets));
    for (std::size_t i : out.rows)
        out.max_distance = std::max(out.max_distance, lr_distance(code.row(i), z));
    out.measured_radius = make_rational(out.max_distance, n);
    out.center = std::move(z);
    return out;
}

} // namespace zerorate
