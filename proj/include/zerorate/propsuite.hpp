// propsuite.hpp -- seeded property checks over the radii, lp, thresholds and construction modules

#pragma once

#include "zerorate/construction.hpp"
#include "zerorate/lp.hpp"
#include "zerorate/radii.hpp"
#include "zerorate/random.hpp"
#include "zerorate/thresholds.hpp"
#include "zerorate/verifier.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

namespace zerorate {

struct PropertyResult
{
    std::string name;
    bool passed = true;
    /// Instances checked and, on failure, the first counterexample.
    std::string detail;
};

struct PropertySuiteOptions
{
    std::uint64_t seed = 1;
    /// Random instances per property.
    int trials = 50;
    SearchOptions search;
};

namespace detail {

struct PropertyContext
{
    Rng rng;
    int trials;
    SearchOptions search;
    int checked = 0;
    std::string failure;

    void fail(const std::string& what)
    {
        if (failure.empty())
            failure = what;
    }
};

inline Codebook random_small_list(PropertyContext& c, int q, int max_n, int max_L)
{
    const int n = static_cast<int>(c.rng.uniform_int(1, max_n));
    const int L = static_cast<int>(c.rng.uniform_int(1, max_L));
    return random_codebook(c.rng, q, n, L, false);
}

inline std::string describe(const Codebook& list, int ell)
{
    std::string s = "q=" + std::to_string(list.q()) + " ell=" + std::to_string(ell) + " rows=";
    for (std::size_t i = 0; i < list.size(); ++i) {
        s += i ? "|" : "";
        for (Symbol x : list.row(i))
            s += std::to_string(x);
    }
    return s;
}

// radii ---------------------------------------------------------------------

inline void prop_radius_sandwich(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(2, 3));
        const int ell = static_cast<int>(c.rng.uniform_int(1, q - 1));
        auto list = random_small_list(c, q, 6, 4);
        const int L = static_cast<int>(list.size()), n = list.n();
        const Rational avg = average_radius(list, ell);
        Rational weighted = avg;
        for (int k = 0; k < 50; ++k)
            weighted = std::max(weighted, weighted_average_radius(list, random_rational_simplex(c.rng, L, 24, false), ell));
        const double relaxed = relaxed_radius(list, ell).value;
        const double cheb = chebyshev_radius_exact(list, ell, c.search).radius.get_d();
        ++c.checked;
        if (!(weighted.get_d() <= relaxed + 1e-6 && relaxed <= cheb + 1e-6 && cheb <= relaxed + static_cast<double>(L) / n + 1e-6))
            c.fail(describe(list, ell));
    }
}

inline void prop_uniform_weighting_is_average(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(2, 4));
        const int ell = static_cast<int>(c.rng.uniform_int(1, q - 1));
        auto list = random_small_list(c, q, 6, 5);
        ++c.checked;
        if (weighted_average_radius(list, uniform(static_cast<int>(list.size())), ell) != average_radius(list, ell))
            c.fail(describe(list, ell));
    }
}

inline void prop_column_permutation_invariance(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(2, 4));
        const int ell = static_cast<int>(c.rng.uniform_int(1, q - 1));
        auto list = random_small_list(c, q, 6, 4);
        std::vector<int> perm(static_cast<std::size_t>(list.n()));
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[static_cast<std::size_t>(c.rng.uniform_int(0, static_cast<long>(i) - 1))]);
        auto w = random_rational_simplex(c.rng, static_cast<int>(list.size()), 24, false);
        ++c.checked;
        if (weighted_average_radius(list.project(perm), w, ell) != weighted_average_radius(list, w, ell))
            c.fail(describe(list, ell) + " omega=" + w.to_string());
    }
}

inline void prop_embedding_at_vertices(PropertyContext& c)
{
    for (int q = 2; q <= 5; ++q)
        for (int ell = 1; ell < q; ++ell) {
            const auto subsets = ell_subsets(q, ell);
            for (std::size_t a = 0; a < subsets.size(); ++a) {
                std::vector<Rational> e(subsets.size(), Rational(0));
                e[a] = 1;
                const SimplexPoint vertex(e);
                for (Symbol x = 1; x <= q; ++x) {
                    ++c.checked;
                    const int want = subset_contains(subsets[a], x) ? 0 : 1;
                    if (embedded_distance_exact(x, vertex, q, ell) != want)
                        c.fail("q=" + std::to_string(q) + " ell=" + std::to_string(ell) + " x=" + std::to_string(x)
                               + " A=" + subset_to_string(subsets[a]));
                }
            }
        }
}

// lp ------------------------------------------------------------------------

inline void prop_minimax_equality(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int ell = static_cast<int>(c.rng.uniform_int(1, 2));
        auto list = random_small_list(c, 3, 6, 4);
        const double primal = relaxed_radius(list, ell).value;
        const double dual = relaxed_radius_via_omega(tuple_type(list), ell).value;
        ++c.checked;
        if (std::abs(primal - dual) > 1e-6)
            c.fail(describe(list, ell));
    }
}

inline void prop_rounding(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int ell = static_cast<int>(c.rng.uniform_int(1, 2));
        auto list = random_small_list(c, 3, 6, 4);
        const int L = static_cast<int>(list.size()), n = list.n();
        auto rr = relaxed_radius(list, ell);
        auto rounded = round_center(rr.center, list, ell);
        ++c.checked;
        if (rr.center.vertex_blocks() < n - L || rounded.max_distance > n * rr.value + L + 1e-9)
            c.fail(describe(list, ell));
    }
}

inline void prop_solver_certificates(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int ell = static_cast<int>(c.rng.uniform_int(1, 2));
        auto list = random_small_list(c, 3, 6, 4);
        for (const LpProblem& p : {relaxed_radius_program(list, ell), omega_program(tuple_type(list), ell)}) {
            const LpSolution s = solve(p);
            ++c.checked;
            if (s.status != LpStatus::optimal || primal_residual(p, s) > 1e-8
                || complementary_slackness_residual(p, s) > 1e-7 || s.nonzero_count > p.num_rows())
                c.fail(describe(list, ell));
        }
    }
}

// thresholds ----------------------------------------------------------------

inline void prop_enumeration_matches_compositions(PropertyContext& c)
{
    for (int q = 2; q <= 4; ++q)
        for (int L = 1; L <= 5; ++L)
            for (int t = 0; t < std::max(1, c.trials / 10); ++t) {
                auto P = random_rational_simplex(c.rng, q, 64, false);
                for (int ell = 1; ell < q; ++ell) {
                    ++c.checked;
                    if (expected_weighted_radius(P, uniform(L), ell) != expected_uniform_radius(P, ell, L))
                        c.fail("P=" + P.to_string() + " ell=" + std::to_string(ell) + " L=" + std::to_string(L));
                }
            }
}

inline void prop_threshold_trend(PropertyContext& c)
{
    for (int q = 2; q <= 5; ++q) {
        Rational prev = 0;
        for (int L = 2; L <= 8; ++L) {
            const Rational p = zero_rate_threshold(q, 1, L);
            ++c.checked;
            if (p < prev || p >= 1 - make_rational(1, q))
                c.fail("q=" + std::to_string(q) + " L=" + std::to_string(L));
            prev = p;
        }
    }
}

inline void prop_monte_carlo(PropertyContext& c)
{
    for (int t = 0; t < 3; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(2, 4));
        const int L = static_cast<int>(c.rng.uniform_int(2, 4));
        const int ell = static_cast<int>(c.rng.uniform_int(1, q - 1));
        auto P = random_rational_simplex(c.rng, q, 64, false);
        auto w = random_rational_simplex(c.rng, L, 64, false);
        const double exact = expected_weighted_radius(P, w, ell).get_d();
        auto est = monte_carlo_weighted_radius(P, w, ell, 100000, c.rng);
        ++c.checked;
        if (std::abs(est.mean - exact) > 4 * est.standard_error + 1e-12)
            c.fail("P=" + P.to_string() + " omega=" + w.to_string());
    }
}

inline void prop_tuple_average_identity(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(2, 3));
        const int ell = static_cast<int>(c.rng.uniform_int(1, q - 1));
        auto code = random_codebook(c.rng, q, static_cast<int>(c.rng.uniform_int(1, 4)), static_cast<int>(c.rng.uniform_int(1, 5)), false);
        auto w = random_rational_simplex(c.rng, static_cast<int>(c.rng.uniform_int(1, 3)), 24, false);
        Rational columns = 0;
        for (int j = 0; j < code.n(); ++j)
            columns += expected_weighted_radius(column_distribution(code, j), w, ell);
        ++c.checked;
        if (tuple_average_weighted_radius(code, w, ell, c.search.budget) != columns / code.n())
            c.fail(describe(code, ell));
    }
}

inline void prop_increase_criterion(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(3, 4));
        const int L = static_cast<int>(c.rng.uniform_int(2, 4));
        const int ell = static_cast<int>(c.rng.uniform_int(1, 2));
        auto P = random_rational_simplex(c.rng, q, 64, false);
        auto w = random_nonuniform_weighting(c.rng, L, 64);
        auto rep = check_increase_criterion(P, w, ell, unequal_pair(w));
        ++c.checked;
        if (!rep.holds || !rep.implied_inequality())
            c.fail("P=" + P.to_string() + " omega=" + w.to_string());
    }
}

inline void prop_uniform_maximality(PropertyContext& c)
{
    for (int q = 3; q <= 4; ++q)
        for (int L = 2; L <= 4; ++L) {
            auto rep = check_uniform_maximality(uniform(q), 1, L, c.trials, c.rng);
            c.checked += rep.trials;
            if (!rep.all_strict())
                c.fail("P=U_" + std::to_string(q) + " L=" + std::to_string(L));
            auto P = random_rational_simplex(c.rng, q, 64, true);
            auto rep2 = check_uniform_maximality(P, 1, L, c.trials / 5 + 1, c.rng);
            c.checked += rep2.trials;
            if (!rep2.non_strict_holds())
                c.fail("P=" + P.to_string() + " L=" + std::to_string(L));
        }
}

inline void prop_schur_concavity(PropertyContext& c)
{
    for (int q = 3; q <= 4; ++q)
        for (int ell = 1; ell <= 2; ++ell)
            for (int L = 2; L <= 4; ++L) {
                auto rep = check_schur_concavity(q, ell, L, rational_grid(make_rational(ell, q), 1, 12), c.trials, c.rng);
                c.checked += static_cast<int>(rep.curve.size() + rep.pairs_checked) + rep.random_checked;
                if (!rep.ok())
                    c.fail("q=" + std::to_string(q) + " ell=" + std::to_string(ell) + " L=" + std::to_string(L));
            }
}

inline void prop_code_average_bound(PropertyContext& c)
{
    for (int t = 0; t < c.trials; ++t) {
        const int q = static_cast<int>(c.rng.uniform_int(2, 4));
        const int ell = static_cast<int>(c.rng.uniform_int(1, q - 1));
        auto code = random_codebook(c.rng, q, static_cast<int>(c.rng.uniform_int(1, 5)), static_cast<int>(c.rng.uniform_int(1, 6)), false);
        auto w = random_rational_simplex(c.rng, static_cast<int>(c.rng.uniform_int(1, 4)), 24, false);
        ++c.checked;
        if (!code_average_bound(code, w, ell, c.search).chain_holds())
            c.fail(describe(code, ell) + " omega=" + w.to_string());
    }
}

// construction --------------------------------------------------------------

inline void prop_common_type(PropertyContext& c)
{
    for (int m = 1; m <= 2; ++m)
        for (int L = 2; L <= 3; ++L) {
            SimplexCodeSpec spec{3, 1, L, m};
            auto code = generate(spec);
            std::optional<TupleType> first;
            for_each_subset(code.size(), static_cast<std::size_t>(L), [&](const std::vector<std::size_t>& idx) {
                std::vector<std::size_t> ordered = idx;
                do {
                    auto type = tuple_type(code.subset(ordered));
                    ++c.checked;
                    if (!first)
                        first = type;
                    if (!(type == *first))
                        c.fail("m=" + std::to_string(m) + " L=" + std::to_string(L));
                } while (std::next_permutation(ordered.begin(), ordered.end()));
                return true;
            });
            for (const auto& [u, k] : first->counts())
                if (first->weight(u) != hypergeometric_pattern_weight(spec, u))
                    c.fail("hypergeometric weight, m=" + std::to_string(m) + " L=" + std::to_string(L));
        }
}

inline void prop_distinct_list_radius(PropertyContext& c)
{
    for (int m = 1; m <= 2; ++m)
        for (int ell = 1; ell <= 2; ++ell)
            for (int L = 2; L <= 3; ++L) {
                SimplexCodeSpec spec{3, ell, L, m};
                auto code = generate(spec);
                const Rational want = construction_radius(spec);
                for_each_subset(code.size(), static_cast<std::size_t>(L), [&](const std::vector<std::size_t>& idx) {
                    ++c.checked;
                    if (average_radius(code.subset(idx), ell) != want)
                        c.fail("m=" + std::to_string(m) + " ell=" + std::to_string(ell) + " L=" + std::to_string(L));
                    return true;
                });
            }
}

inline void prop_c_positive(PropertyContext& c)
{
    for (int q = 3; q <= 5; ++q)
        for (int ell = 1; ell <= 2; ++ell)
            for (int L = ell + 1; L <= 6; ++L) {
                ++c.checked;
                if (c_coefficient(q, ell, L).value <= 0)
                    c.fail("q=" + std::to_string(q) + " ell=" + std::to_string(ell) + " L=" + std::to_string(L));
            }
}

inline void prop_residual_scaling(PropertyContext& c)
{
    using Params = std::tuple<int, int, int>;
    for (auto [q, ell, L] : std::vector<Params>{{3, 1, 2}, {3, 1, 3}, {3, 2, 3}, {4, 1, 4}, {4, 2, 3}}) {
        std::vector<int> ms(20);
        std::iota(ms.begin(), ms.end(), 1);
        auto table = tradeoff_table(q, ell, L, ms);
        ++c.checked;
        bool above = true;
        for (const auto& r : table.rows)
            above = above && r.p_exact > r.p_star;
        if (!table.scaled_residual_nonincreasing() || !above)
            c.fail("q=" + std::to_string(q) + " ell=" + std::to_string(ell) + " L=" + std::to_string(L));
    }
}

inline void prop_tight_at_threshold(PropertyContext& c)
{
    for (auto [ell, L] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}) {
        SimplexCodeSpec spec{3, ell, L, 1};
        auto code = generate(spec);
        ++c.checked;
        if (!is_list_recoverable(code, zero_rate_threshold(3, ell, L), ell, L, c.search).pass
            || is_list_recoverable(code, construction_radius(spec), ell, L, c.search).pass)
            c.fail("ell=" + std::to_string(ell) + " L=" + std::to_string(L));
    }
}

} // namespace detail

/// Runs every property with its own seeded generator (derived from the suite seed and the
/// property's position), so results are reproducible and independent of each other.
inline std::vector<PropertyResult> run_property_suite(const PropertySuiteOptions& options)
{
    using Check = void (*)(detail::PropertyContext&);
    const std::vector<std::pair<const char*, Check>> checks = {
        {"radii.sandwich", detail::prop_radius_sandwich},
        {"radii.uniform_weighting_is_average", detail::prop_uniform_weighting_is_average},
        {"radii.column_permutation_invariance", detail::prop_column_permutation_invariance},
        {"radii.embedding_at_vertices", detail::prop_embedding_at_vertices},
        {"lp.minimax_equality", detail::prop_minimax_equality},
        {"lp.rounding", detail::prop_rounding},
        {"lp.solver_certificates", detail::prop_solver_certificates},
        {"thresholds.enumeration_matches_compositions", detail::prop_enumeration_matches_compositions},
        {"thresholds.threshold_trend_in_L", detail::prop_threshold_trend},
        {"thresholds.monte_carlo", detail::prop_monte_carlo},
        {"thresholds.tuple_average_identity", detail::prop_tuple_average_identity},
        {"thresholds.increase_criterion", detail::prop_increase_criterion},
        {"thresholds.uniform_maximality", detail::prop_uniform_maximality},
        {"thresholds.schur_concavity", detail::prop_schur_concavity},
        {"thresholds.code_average_bound", detail::prop_code_average_bound},
        {"construction.common_type", detail::prop_common_type},
        {"construction.distinct_list_radius", detail::prop_distinct_list_radius},
        {"construction.c_positive", detail::prop_c_positive},
        {"construction.residual_scaling", detail::prop_residual_scaling},
        {"construction.tight_at_threshold", detail::prop_tight_at_threshold},
    };
    std::vector<PropertyResult> out;
    for (std::size_t k = 0; k < checks.size(); ++k) {
        detail::PropertyContext ctx{Rng(options.seed * 1000003ULL + k), options.trials, options.search, 0, {}};
        PropertyResult r;
        r.name = checks[k].first;
        try {
            checks[k].second(ctx);
            r.passed = ctx.failure.empty();
            r.detail = std::to_string(ctx.checked) + " checks";
            if (!r.passed)
                r.detail += "; first failure: " + ctx.failure;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace zerorate
