// thresholds.hpp -- expected weighted radius of i.i.d. symbols, zero-rate thresholds,
// and executable checks of its extremal properties

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/distributions.hpp"
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
#include <utility>
#include <vector>

namespace zerorate {

inline constexpr std::uint64_t kDefaultPatternBudget = 100'000'000;

/// max over ell-sets A of sum_{i : x_i in A} omega(i).
inline Rational weighted_plurality(std::span<const Symbol> xs, const std::vector<Rational>& omega, int q, int ell)
{
    if (xs.size() != omega.size())
        throw std::invalid_argument("weighted_plurality: length mismatch");
    return detail::top_ell_mass(q, xs, omega, ell);
}

namespace detail {

inline void check_f_args(const SimplexPoint& P, const SimplexPoint& omega, int ell)
{
    const int q = static_cast<int>(P.size());
    if (q < 2)
        throw std::invalid_argument("symbol distribution needs q >= 2");
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("need 1 <= ell <= q-1");
    if (omega.size() < 1)
        throw std::invalid_argument("weighting needs L >= 1");
    (void)P.exact();
    (void)omega.exact();
}

// Visits every x in [q]^L with P^L(x) > 0 in lexicographic order, passing the
// pattern and its probability.
template <class Visit>
void for_each_pattern(const std::vector<Rational>& P, int L, Visit&& visit)
{
    const int q = static_cast<int>(P.size());
    std::vector<Symbol> x(static_cast<std::size_t>(L), 1);
    std::vector<Rational> prefix(static_cast<std::size_t>(L) + 1, Rational(1));
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == L) {
            visit(std::as_const(x), std::as_const(prefix[static_cast<std::size_t>(L)]));
            return;
        }
        for (Symbol s = 1; s <= q; ++s) {
            const Rational& ps = P[static_cast<std::size_t>(s - 1)];
            if (sgn(ps) == 0)
                continue;
            x[static_cast<std::size_t>(pos)] = s;
            prefix[static_cast<std::size_t>(pos) + 1] = prefix[static_cast<std::size_t>(pos)] * ps;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
}

} // namespace detail

/// f_ell(P, omega) = 1 - sum_{x in [q]^L} P^L(x) max_{A in X} sum_{i : x_i in A} omega(i),
/// by full enumeration of [q]^L. This is the expected weighted-average radius of L i.i.d.
/// P-distributed symbols. Throws BudgetExceeded when q^L exceeds `budget`.
inline Rational expected_weighted_radius(const SimplexPoint& P, const SimplexPoint& omega, int ell,
                                         std::uint64_t budget = kDefaultPatternBudget)
{
    detail::check_f_args(P, omega, ell);
    const int q = static_cast<int>(P.size());
    const int L = static_cast<int>(omega.size());
    const std::uint64_t terms = saturating_pow(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(L));
    if (terms > budget)
        throw BudgetExceeded("pattern enumeration over [q]^L", terms, budget);
    const auto& w = omega.exact();
    Rational acc = 0;
    detail::for_each_pattern(P.exact(), L, [&](const std::vector<Symbol>& x, const Rational& prob) {
        acc += prob * detail::top_ell_mass(q, x, w, ell);
    });
    return 1 - acc;
}

/// E[plur_ell(X_1..X_L)] for X_i i.i.d. P, collapsed over compositions:
/// sum_a multinomial(a) prod_x P(x)^{a_x} maxl(a).
inline Rational expected_plurality(const SimplexPoint& P, int ell, int L)
{
    const auto& p = P.exact();
    const int q = static_cast<int>(p.size());
    if (ell < 1 || ell > q)
        throw std::invalid_argument("expected_plurality needs 1 <= ell <= q");
    if (L < 1)
        throw std::invalid_argument("expected_plurality needs L >= 1");
    Rational acc = 0;
    for (const auto& a : compositions(q, L)) {
        Rational prob(multinomial_integer(a.parts));
        for (int x = 0; x < q && sgn(prob) != 0; ++x) {
            Rational px = 1;
            for (int k = 0; k < a.parts[static_cast<std::size_t>(x)]; ++k)
                px *= p[static_cast<std::size_t>(x)];
            prob *= px;
        }
        acc += prob * maxl(a, ell);
    }
    return acc;
}

/// f_ell(P, U_L) through the composition sum; agrees with expected_weighted_radius(P, uniform(L), ell).
inline Rational expected_uniform_radius(const SimplexPoint& P, int ell, int L)
{
    if (ell < 1 || ell > static_cast<int>(P.size()) - 1)
        throw std::invalid_argument("need 1 <= ell <= q-1");
    return 1 - expected_plurality(P, ell, L) / L;
}

/// Zero-rate threshold p*(q, ell, L) = 1 - E[plur_ell]/L under uniform symbols, exact.
inline Rational zero_rate_threshold(int q, int ell, int L)
{
    if (q < 2)
        throw std::invalid_argument("zero_rate_threshold needs q >= 2");
    if (ell < 1 || ell >= q)
        throw std::invalid_argument("zero_rate_threshold needs 1 <= ell < q");
    if (L < 2)
        throw std::invalid_argument("zero_rate_threshold needs L >= 2");
    Integer num = 0;
    for (const auto& a : compositions(q, L))
        num += multinomial_integer(a.parts) * maxl(a, ell);
    Integer den = L;
    for (int i = 0; i < L; ++i)
        den *= q;
    return 1 - make_rational(num, den);
}

// ---------------------------------------------------------------------------
// Averaging-out criterion
// ---------------------------------------------------------------------------

struct IncreaseCriterionReport
{
    /// The two coordinates that were averaged (0-based).
    std::pair<std::size_t, std::size_t> pair;
    /// Pointwise inequality held for every pattern.
    bool holds = true;
    std::optional<std::vector<Symbol>> violation;
    /// Some pattern of positive probability makes the inequality strict.
    bool strict_instance = false;
    std::optional<std::vector<Symbol>> strict_witness;
    std::size_t patterns = 0;
    Rational f_omega;
    Rational f_averaged;

    /// f(P, averaged) >= f(P, omega), and strictly so when a strict instance exists.
    bool implied_inequality() const
    {
        return strict_instance ? f_averaged > f_omega : f_averaged >= f_omega;
    }
};

/// First pair i < j with omega(i) != omega(j), searching from the end so that the
/// last two coordinates are preferred. nullopt for omega = U_L.
inline std::optional<std::pair<std::size_t, std::size_t>> unequal_pair(const SimplexPoint& omega)
{
    const auto& w = omega.exact();
    for (std::size_t j = w.size(); j-- > 1;)
        for (std::size_t i = j; i-- > 0;)
            if (w[i] != w[j])
                return std::make_pair(i, j);
    return std::nullopt;
}

/// Checks, for every x in [q]^L, that averaging coordinates a and b of omega does not beat the
/// mean of the two swapped evaluations:
///   (max_w(.., x_a, .., x_b, ..) + max_w(.., x_b, .., x_a, ..)) / 2 >= max_avg(x),
/// records whether a positive-probability pattern makes it strict, and cross-checks
/// f(P, averaged) against f(P, omega). The default pair is the last two coordinates.
inline IncreaseCriterionReport check_increase_criterion(const SimplexPoint& P, const SimplexPoint& omega, int ell,
                                                        std::optional<std::pair<std::size_t, std::size_t>> pair = {},
                                                        std::uint64_t budget = kDefaultPatternBudget)
{
    detail::check_f_args(P, omega, ell);
    const int q = static_cast<int>(P.size());
    const int L = static_cast<int>(omega.size());
    if (L < 2)
        throw std::invalid_argument("averaging criterion needs L >= 2");
    const auto [a, b] = pair.value_or(std::make_pair(static_cast<std::size_t>(L - 2), static_cast<std::size_t>(L - 1)));
    if (a == b || a >= omega.size() || b >= omega.size())
        throw std::invalid_argument("averaging criterion needs two distinct coordinates");
    const auto& w = omega.exact();
    if (w[a] == w[b])
        throw std::invalid_argument("averaging criterion needs omega(a) != omega(b)");
    const std::uint64_t terms = saturating_pow(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(L));
    if (terms > budget)
        throw BudgetExceeded("pattern enumeration over [q]^L", terms, budget);

    const std::size_t idx[2] = {a, b};
    const SimplexPoint averaged = average_out(omega, idx);
    const auto& wbar = averaged.exact();
    const auto& p = P.exact();

    IncreaseCriterionReport rep;
    rep.pair = {a, b};
    std::vector<Symbol> x(static_cast<std::size_t>(L), 1);
    for (;;) {
        std::vector<Symbol> swapped = x;
        std::swap(swapped[a], swapped[b]);
        const Rational lhs = (detail::top_ell_mass(q, x, w, ell) + detail::top_ell_mass(q, swapped, w, ell)) / 2;
        const Rational rhs = detail::top_ell_mass(q, x, wbar, ell);
        ++rep.patterns;
        if (lhs < rhs) {
            if (rep.holds)
                rep.violation = x;
            rep.holds = false;
        } else if (lhs > rhs && !rep.strict_instance) {
            bool positive = true;
            for (Symbol s : x)
                positive = positive && sgn(p[static_cast<std::size_t>(s - 1)]) > 0;
            if (positive) {
                rep.strict_instance = true;
                rep.strict_witness = x;
            }
        }
        int pos = L - 1;
        while (pos >= 0 && x[static_cast<std::size_t>(pos)] == q)
            x[static_cast<std::size_t>(pos--)] = 1;
        if (pos < 0)
            break;
        ++x[static_cast<std::size_t>(pos)];
    }
    rep.f_omega = expected_weighted_radius(P, omega, ell, budget);
    rep.f_averaged = expected_weighted_radius(P, averaged, ell, budget);
    return rep;
}

// ---------------------------------------------------------------------------
// Maximality of the uniform weighting
// ---------------------------------------------------------------------------

struct UniformMaximalityReport
{
    int trials = 0;
    /// f(P, omega) < f(P, U_L).
    int strict = 0;
    /// f(P, omega) == f(P, U_L) for some omega != U_L.
    int ties = 0;
    /// f(P, omega) > f(P, U_L): contradicts maximality.
    int violations = 0;
    Rational f_uniform;
    std::optional<SimplexPoint> first_tie;
    std::optional<SimplexPoint> first_violation;

    bool all_strict() const { return strict == trials; }
    bool non_strict_holds() const { return violations == 0; }
};

/// Samples `trials` exact omega != U_L (denominators <= max_den) and compares f(P, omega) with f(P, U_L).
inline UniformMaximalityReport check_uniform_maximality(const SimplexPoint& P, int ell, int L, int trials, Rng& rng,
                                                        int max_den = 64)
{
    if (L < 2)
        throw std::invalid_argument("uniform maximality needs L >= 2");
    UniformMaximalityReport rep;
    rep.f_uniform = expected_weighted_radius(P, uniform(L), ell);
    for (int t = 0; t < trials; ++t) {
        SimplexPoint w = random_nonuniform_weighting(rng, L, max_den);
        Rational v = expected_weighted_radius(P, w, ell);
        ++rep.trials;
        if (v < rep.f_uniform) {
            ++rep.strict;
        } else if (v == rep.f_uniform) {
            ++rep.ties;
            if (!rep.first_tie)
                rep.first_tie = w;
        } else {
            ++rep.violations;
            if (!rep.first_violation)
                rep.first_violation = w;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Extremal symbol distributions
// ---------------------------------------------------------------------------

struct SchurConcavityReport
{
    /// (p, f(P_{q,ell,p}, U_L)) along the grid.
    std::vector<std::pair<Rational, Rational>> curve;
    int monotone_violations = 0;
    std::size_t pairs_checked = 0;
    int concavity_violations = 0;
    int random_checked = 0;
    int majorization_violations = 0;
    std::optional<SimplexPoint> first_majorization_violation;

    bool ok() const { return monotone_violations == 0 && concavity_violations == 0 && majorization_violations == 0; }
};

/// On a grid of p in [ell/q, 1]: p -> f(P_{q,ell,p}, U_L) is nonincreasing and midpoint-concave over
/// all grid pairs; and for `random_trials` random P, f(P, U_L) <= f(P_{q,ell,p}, U_L) with p the
/// heaviest ell-set mass of P. All comparisons exact.
inline SchurConcavityReport check_schur_concavity(int q, int ell, int L, const std::vector<Rational>& grid,
                                                  int random_trials, Rng& rng, int max_den = 64)
{
    if (ell < 1 || ell >= q)
        throw std::invalid_argument("need 1 <= ell < q");
    const Rational lo = make_rational(ell, q);
    std::map<Rational, Rational> cache;
    auto fp = [&](const Rational& p) -> const Rational& {
        auto it = cache.find(p);
        if (it == cache.end())
            it = cache.emplace(p, expected_uniform_radius(p_qlp(q, ell, p), ell, L)).first;
        return it->second;
    };

    SchurConcavityReport rep;
    std::vector<Rational> pts = grid;
    std::sort(pts.begin(), pts.end());
    for (const auto& p : pts) {
        if (p < lo || p > 1)
            throw std::invalid_argument("grid point " + to_fraction_string(p) + " outside [ell/q, 1]");
        rep.curve.emplace_back(p, fp(p));
    }
    for (std::size_t i = 1; i < rep.curve.size(); ++i)
        if (rep.curve[i].second > rep.curve[i - 1].second)
            ++rep.monotone_violations;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Rational mid = (pts[i] + pts[j]) / 2;
            ++rep.pairs_checked;
            if (2 * fp(mid) < fp(pts[i]) + fp(pts[j]))
                ++rep.concavity_violations;
        }
    }
    for (int t = 0; t < random_trials; ++t) {
        SimplexPoint P = random_rational_simplex(rng, q, max_den, false);
        const Rational p = P.top_mass(ell);
        ++rep.random_checked;
        if (expected_uniform_radius(P, ell, L) > fp(p)) {
            ++rep.majorization_violations;
            if (!rep.first_majorization_violation)
                rep.first_majorization_violation = P;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Code-averaged bound
// ---------------------------------------------------------------------------

/// Symbol distribution of column j over the rows of the code.
inline SimplexPoint column_distribution(const Codebook& code, int j)
{
    if (code.empty())
        throw std::invalid_argument("column distribution of an empty code");
    std::vector<long> counts(static_cast<std::size_t>(code.q()), 0);
    for (std::size_t i = 0; i < code.size(); ++i)
        ++counts[static_cast<std::size_t>(code.at(i, j) - 1)];
    std::vector<Rational> e;
    for (long c : counts)
        e.push_back(make_rational(c, static_cast<long>(code.size())));
    return SimplexPoint(std::move(e));
}

/// Mean of the weighted-average radius over all M^L ordered tuples (repetitions allowed),
/// by direct enumeration.
inline Rational tuple_average_weighted_radius(const Codebook& code, const SimplexPoint& omega, int ell,
                                              std::uint64_t budget = 10'000'000)
{
    const std::size_t M = code.size();
    const std::size_t L = omega.size();
    if (M == 0)
        throw std::invalid_argument("tuple average over an empty code");
    const std::uint64_t tuples = saturating_pow(M, L);
    if (tuples > budget)
        throw BudgetExceeded("enumeration of M^L tuples", tuples, budget);
    std::vector<std::size_t> idx(L, 0);
    Rational acc = 0;
    for (;;) {
        acc += weighted_average_radius(code.subset(idx), omega, ell);
        std::size_t pos = L;
        while (pos > 0 && idx[pos - 1] == M - 1)
            idx[--pos] = 0;
        if (pos == 0)
            break;
        ++idx[pos - 1];
    }
    return acc / Rational(Integer(static_cast<unsigned long>(tuples)));
}

struct CodeAverageReport
{
    /// rad_ell of the whole code.
    Rational radius;
    /// max(1 - radius, ell/q). Both terms are lower bounds on the mean of the p_j below.
    Rational agreement;
    /// E over tuples of the omega-weighted radius, = (1/n) sum_j f(P_j, omega).
    Rational expectation;
    /// (1/n) sum_j f(P_j, U_L).
    Rational uniform_weighting;
    /// (1/n) sum_j f(P_{q,ell,p_j}, U_L), p_j the heaviest ell-set mass of column j.
    Rational extremal_columns;
    /// f(P_{q,ell,p'}, U_L), p' the mean of the p_j.
    Rational extremal_mean;
    /// f(P_{q,ell,agreement}, U_L).
    Rational bound;

    /// expectation <= uniform_weighting <= extremal_columns <= extremal_mean <= bound.
    bool chain_holds() const
    {
        return expectation <= uniform_weighting && uniform_weighting <= extremal_columns
               && extremal_columns <= extremal_mean && extremal_mean <= bound;
    }
    bool holds() const { return expectation <= bound; }
};

/// Bounds the tuple-averaged weighted radius of a code by f(P_{q,ell,1-rad}, U_L), where rad is
/// the exact ell-radius of the whole code, and reports every intermediate step. When
/// 1 - rad < ell/q the bound is taken at ell/q, i.e. f(U_q, U_L).
inline CodeAverageReport code_average_bound(const Codebook& code, const SimplexPoint& omega, int ell,
                                            const SearchOptions& options = {})
{
    const int q = code.q(), n = code.n();
    const int L = static_cast<int>(omega.size());
    if (code.empty())
        throw std::invalid_argument("code_average_bound needs a nonempty code");
    CodeAverageReport rep;
    rep.radius = chebyshev_radius_exact(code, ell, options).radius;
    rep.agreement = std::max(Rational(1 - rep.radius), make_rational(ell, q));
    Rational sum_f = 0, sum_fu = 0, sum_fe = 0, sum_p = 0;
    for (int j = 0; j < n; ++j) {
        const SimplexPoint Pj = column_distribution(code, j);
        const Rational pj = Pj.top_mass(ell);
        sum_f += expected_weighted_radius(Pj, omega, ell);
        sum_fu += expected_uniform_radius(Pj, ell, L);
        sum_fe += expected_uniform_radius(p_qlp(q, ell, pj), ell, L);
        sum_p += pj;
    }
    rep.expectation = sum_f / n;
    rep.uniform_weighting = sum_fu / n;
    rep.extremal_columns = sum_fe / n;
    rep.extremal_mean = expected_uniform_radius(p_qlp(q, ell, sum_p / n), ell, L);
    rep.bound = expected_uniform_radius(p_qlp(q, ell, rep.agreement), ell, L);
    return rep;
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct MonteCarloEstimate
{
    double mean = 0;
    double standard_error = 0;
    long samples = 0;
};

/// Estimates f_ell(P, omega) from `samples` draws of L i.i.d. P-distributed symbols.
inline MonteCarloEstimate monte_carlo_weighted_radius(const SimplexPoint& P, const SimplexPoint& omega, int ell,
                                                      long samples, Rng& rng)
{
    detail::check_f_args(P, omega, ell);
    const int q = static_cast<int>(P.size());
    const int L = static_cast<int>(omega.size());
    std::vector<double> cdf;
    double acc = 0;
    for (std::size_t i = 0; i < P.size(); ++i)
        cdf.push_back(acc += P.value(i));
    std::vector<double> w;
    for (std::size_t i = 0; i < omega.size(); ++i)
        w.push_back(omega.value(i));

    double sum = 0, sum_sq = 0;
    std::vector<double> mass(static_cast<std::size_t>(q));
    for (long s = 0; s < samples; ++s) {
        std::fill(mass.begin(), mass.end(), 0.0);
        for (int i = 0; i < L; ++i) {
            const double u = rng.uniform01() * acc;
            std::size_t x = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            x = std::min(x, static_cast<std::size_t>(q - 1));
            mass[x] += w[static_cast<std::size_t>(i)];
        }
        std::partial_sort(mass.begin(), mass.begin() + ell, mass.end(), std::greater<>());
        double top = 0;
        for (int k = 0; k < ell; ++k)
            top += mass[static_cast<std::size_t>(k)];
        const double v = 1.0 - top;
        sum += v;
        sum_sq += v * v;
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.mean = sum / static_cast<double>(samples);
    const double var = std::max(0.0, sum_sq / static_cast<double>(samples) - est.mean * est.mean);
    est.standard_error = std::sqrt(var / static_cast<double>(samples));
    return est;
}

} // namespace zerorate
