// construction.hpp -- the balanced-column ("simplex-like") code and its radius trade-off

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/errors.hpp"
#include "zerorate/rational.hpp"
#include "zerorate/thresholds.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zerorate {

inline constexpr std::uint64_t kDefaultBlocklengthBudget = 1'000'000;

/// Parameters of the balanced-column code: M = q m codewords whose columns are all the
/// length-qm vectors holding each symbol exactly m times, so n = (qm)! / (m!)^q.
struct SimplexCodeSpec
{
    int q = 3;
    int ell = 1;
    int L = 2;
    int m = 1;

    void validate() const
    {
        if (q < 2 || q > kMaxAlphabet)
            throw std::invalid_argument("construction needs 2 <= q <= " + std::to_string(kMaxAlphabet));
        if (ell < 1 || ell >= q)
            throw std::invalid_argument("construction needs 1 <= ell < q");
        if (L < 2)
            throw std::invalid_argument("construction needs L >= 2");
        if (m < 1)
            throw std::invalid_argument("construction needs m >= 1");
    }

    int codewords() const { return q * m; }

    Integer blocklength() const
    {
        std::vector<int> parts(static_cast<std::size_t>(q), m);
        return multinomial_integer(parts);
    }

    /// The analysis covers q >= 3; q = 2 codes are still produced for cross-checks.
    bool in_analysed_regime() const { return q >= 3; }
};

/// The M x n codebook. Columns run over the balanced vectors in lexicographic order.
inline Codebook generate(const SimplexCodeSpec& spec, std::uint64_t n_budget = kDefaultBlocklengthBudget)
{
    spec.validate();
    const Integer n = spec.blocklength();
    if (!n.fits_ulong_p() || n.get_ui() > n_budget)
        throw BudgetExceeded("balanced-column code blocklength",
                             n.fits_ulong_p() ? n.get_ui() : UINT64_MAX, n_budget);
    const int M = spec.codewords();
    const int cols = static_cast<int>(n.get_ui());
    std::vector<Codeword> rows(static_cast<std::size_t>(M), Codeword(static_cast<std::size_t>(cols)));
    std::vector<Symbol> column;
    for (Symbol x = 1; x <= spec.q; ++x)
        column.insert(column.end(), static_cast<std::size_t>(spec.m), x);
    int j = 0;
    do {
        for (int i = 0; i < M; ++i)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = column[static_cast<std::size_t>(i)];
        ++j;
    } while (std::next_permutation(column.begin(), column.end()));
    return Codebook(spec.q, cols, std::move(rows));
}

/// (1/L) E[plur_ell] of L symbols drawn without replacement from the multiset holding each
/// symbol m times: the per-column plurality fraction of any L distinct codewords.
///   sum_a (maxl(a)/L) C(L; a) C(qm-L; m-a) / C(qm; m..m),
/// with multinomials having a negative entry taken as zero.
inline Rational exact_expected_plurality(const SimplexCodeSpec& spec)
{
    spec.validate();
    const int q = spec.q, m = spec.m, L = spec.L;
    if (q * m < L)
        throw std::invalid_argument("construction needs qm >= L distinct codewords");
    const Integer total = spec.blocklength();
    Integer acc = 0;
    std::vector<int> rest(static_cast<std::size_t>(q));
    for (const auto& a : compositions(q, L)) {
        for (int x = 0; x < q; ++x)
            rest[static_cast<std::size_t>(x)] = m - a.parts[static_cast<std::size_t>(x)];
        acc += maxl(a, spec.ell) * multinomial_integer(a.parts) * multinomial_integer(rest);
    }
    return make_rational(acc, total * L);
}

/// Exact radius of every L-list of distinct codewords: 1 - exact_expected_plurality.
inline Rational construction_radius(const SimplexCodeSpec& spec) { return 1 - exact_expected_plurality(spec); }

struct Coefficient
{
    Rational value;
    /// Positivity is only established for L > ell; other values are reported unverified.
    bool verified = true;
};

/// First-order excess of the construction over the threshold:
///   q^{-L} sum_a (maxl(a)/L) C(L; a) (sum_i C(a_i, 2) - C(L, 2)/q).
inline Coefficient c_coefficient(int q, int ell, int L)
{
    if (q < 2 || ell < 1 || ell >= q || L < 2)
        throw std::invalid_argument("c_coefficient needs q >= 2, 1 <= ell < q, L >= 2");
    Rational acc = 0;
    const Rational pairs_share = Rational(binomial(L, 2)) / q;
    for (const auto& a : compositions(q, L)) {
        Integer same = 0;
        for (int ai : a.parts)
            same += binomial(ai, 2);
        acc += Rational(multinomial_integer(a.parts) * maxl(a, ell)) * (Rational(same) - pairs_share);
    }
    Integer qL = 1;
    for (int i = 0; i < L; ++i)
        qL *= q;
    acc /= Rational(qL * L);
    return {acc, L > ell && q >= 3};
}

struct TradeoffRow
{
    int m = 0;
    int M = 0;
    Integer n;
    Rational p_exact;
    Rational p_star;
    Rational c_over_m;
    /// p_exact - p_star - c/m.
    Rational residual;
};

struct TradeoffTable
{
    int q = 0, ell = 0, L = 0;
    Rational p_star;
    Rational c;
    std::vector<TradeoffRow> rows;

    /// max over rows of |residual| m^2.
    Rational max_scaled_residual() const
    {
        Rational worst = 0;
        for (const auto& r : rows) {
            Rational s = abs(r.residual) * r.m * r.m;
            if (s > worst)
                worst = s;
        }
        return worst;
    }

    /// |r(m)| m^2 never increases along the table (rows ordered by m).
    bool scaled_residual_nonincreasing() const
    {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (abs(rows[i].residual) * rows[i].m * rows[i].m > abs(rows[i - 1].residual) * rows[i - 1].m * rows[i - 1].m)
                return false;
        return true;
    }

    static constexpr const char* kCsvHeader = "m,M,n,p_exact,p_star,c_over_m,residual";

    std::string to_csv() const
    {
        std::string out = std::string(kCsvHeader) + "\n";
        for (const auto& r : rows)
            out += std::to_string(r.m) + "," + std::to_string(r.M) + "," + r.n.get_str() + ","
                   + to_fraction_string(r.p_exact) + "," + to_fraction_string(r.p_star) + ","
                   + to_fraction_string(r.c_over_m) + "," + to_fraction_string(r.residual) + "\n";
        return out;
    }
};

/// p_exact(m) = 1 - exact_expected_plurality against p* + c/m for each m (sorted ascending).
inline TradeoffTable tradeoff_table(int q, int ell, int L, std::vector<int> m_values)
{
    std::sort(m_values.begin(), m_values.end());
    m_values.erase(std::unique(m_values.begin(), m_values.end()), m_values.end());
    TradeoffTable t;
    t.q = q;
    t.ell = ell;
    t.L = L;
    t.p_star = zero_rate_threshold(q, ell, L);
    t.c = c_coefficient(q, ell, L).value;
    for (int m : m_values) {
        SimplexCodeSpec spec{q, ell, L, m};
        TradeoffRow r;
        r.m = m;
        r.M = spec.codewords();
        r.n = spec.blocklength();
        r.p_exact = construction_radius(spec);
        r.p_star = t.p_star;
        r.c_over_m = t.c / m;
        r.residual = r.p_exact - r.p_star - r.c_over_m;
        t.rows.push_back(std::move(r));
    }
    return t;
}

/// Probability that L symbols drawn without replacement from the balanced multiset
/// read exactly u: the column fraction any L distinct codewords assign to u.
inline Rational hypergeometric_pattern_weight(const SimplexCodeSpec& spec, const std::vector<Symbol>& u)
{
    const int q = spec.q, m = spec.m;
    const int total = q * m;
    std::vector<int> used(static_cast<std::size_t>(q), 0);
    Rational prob = 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const int x = u[i] - 1;
        if (x < 0 || x >= q)
            throw std::invalid_argument("pattern symbol outside the alphabet");
        const int left = m - used[static_cast<std::size_t>(x)];
        if (left <= 0)
            return 0;
        prob *= make_rational(left, total - static_cast<int>(i));
        ++used[static_cast<std::size_t>(x)];
    }
    return prob;
}

} // namespace zerorate
