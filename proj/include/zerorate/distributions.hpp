// distributions.hpp -- probability vectors on finite sets

#pragma once

#include "zerorate/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace zerorate {

/// Thrown when exact and floating-point probability vectors meet in one computation.
class ModeMismatch : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// A point of the probability simplex on k outcomes, held either exactly or in floating point.
///
/// Exact points sum to exactly 1; floating points sum to 1 within 1e-12. The two modes never
/// mix: asking an exact-only routine for a floating point throws ModeMismatch.
class SimplexPoint
{
public:
    enum class Mode { exact, floating };

    static constexpr double kFloatTolerance = 1e-12;

    explicit SimplexPoint(std::vector<Rational> entries)
      : entries_(std::move(entries))
    {
        const auto& e = std::get<std::vector<Rational>>(entries_);
        if (e.empty())
            throw std::invalid_argument("simplex point needs at least one entry");
        Rational sum = 0;
        for (const auto& v : e) {
            if (sgn(v) < 0)
                throw std::invalid_argument("simplex point has a negative entry");
            sum += v;
        }
        if (sum != 1)
            throw std::invalid_argument("simplex point entries sum to " + to_fraction_string(sum) + ", not 1");
    }

    explicit SimplexPoint(std::vector<double> entries)
      : entries_(std::move(entries))
    {
        const auto& e = std::get<std::vector<double>>(entries_);
        if (e.empty())
            throw std::invalid_argument("simplex point needs at least one entry");
        double sum = 0;
        for (double v : e) {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("simplex point has a negative or non-finite entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kFloatTolerance)
            throw std::invalid_argument("floating simplex point does not sum to 1");
    }

    Mode mode() const noexcept { return entries_.index() == 0 ? Mode::exact : Mode::floating; }
    bool is_exact() const noexcept { return mode() == Mode::exact; }
    std::size_t size() const noexcept
    {
        return std::visit([](const auto& e) { return e.size(); }, entries_);
    }

    /// Exact entries; throws ModeMismatch for a floating point.
    const std::vector<Rational>& exact() const
    {
        if (!is_exact())
            throw ModeMismatch("exact entries requested from a floating simplex point");
        return std::get<std::vector<Rational>>(entries_);
    }

    /// Floating entries; throws ModeMismatch for an exact point.
    const std::vector<double>& floating() const
    {
        if (is_exact())
            throw ModeMismatch("floating entries requested from an exact simplex point");
        return std::get<std::vector<double>>(entries_);
    }

    /// Entry i as a double, whatever the mode. For display and sampling.
    double value(std::size_t i) const
    {
        return is_exact() ? exact().at(i).get_d() : floating().at(i);
    }

    /// Index of the largest entry; ties go to the lowest index.
    std::size_t argmax() const
    {
        std::size_t best = 0;
        if (is_exact()) {
            const auto& e = exact();
            for (std::size_t i = 1; i < e.size(); ++i)
                if (e[i] > e[best])
                    best = i;
        } else {
            const auto& e = floating();
            for (std::size_t i = 1; i < e.size(); ++i)
                if (e[i] > e[best])
                    best = i;
        }
        return best;
    }

    /// Exact sum of the ell largest entries (max mass of an ell-subset).
    Rational top_mass(int ell) const
    {
        auto e = exact();
        if (ell < 1 || ell > static_cast<int>(e.size()))
            throw std::invalid_argument("top_mass needs 1 <= ell <= size");
        std::sort(e.begin(), e.end(), [](const Rational& a, const Rational& b) { return a > b; });
        Rational s = 0;
        for (int i = 0; i < ell; ++i)
            s += e[static_cast<std::size_t>(i)];
        return s;
    }

    /// True when every entry is positive.
    bool full_support() const
    {
        for (std::size_t i = 0; i < size(); ++i)
            if (is_exact() ? sgn(exact()[i]) == 0 : floating()[i] == 0.0)
                return false;
        return true;
    }

    std::string to_string() const
    {
        std::string out = "(";
        for (std::size_t i = 0; i < size(); ++i) {
            if (i)
                out += ",";
            out += is_exact() ? to_fraction_string(exact()[i]) : std::to_string(floating()[i]);
        }
        return out + ")";
    }

    friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

private:
    std::variant<std::vector<Rational>, std::vector<double>> entries_;
};

/// U_k, exact.
inline SimplexPoint uniform(int k)
{
    if (k < 1)
        throw std::invalid_argument("uniform distribution needs k >= 1");
    return SimplexPoint(std::vector<Rational>(static_cast<std::size_t>(k), make_rational(1, k)));
}

/// Replaces the entries indexed by `subset` (0-based) with their mean. Mode is preserved.
inline SimplexPoint average_out(const SimplexPoint& w, std::span<const std::size_t> subset)
{
    if (subset.empty())
        throw std::invalid_argument("average_out needs a nonempty subset");
    std::vector<std::size_t> idx(subset.begin(), subset.end());
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw std::invalid_argument("average_out subset has repeated indices");
    if (idx.back() >= w.size())
        throw std::invalid_argument("average_out index out of range");

    if (w.is_exact()) {
        auto e = w.exact();
        Rational mean = 0;
        for (auto i : idx)
            mean += e[i];
        mean /= static_cast<long>(idx.size());
        for (auto i : idx)
            e[i] = mean;
        return SimplexPoint(std::move(e));
    }
    auto e = w.floating();
    double mean = 0;
    for (auto i : idx)
        mean += e[i];
    mean /= static_cast<double>(idx.size());
    for (auto i : idx)
        e[i] = mean;
    return SimplexPoint(std::move(e));
}

/// P_{q,ell,p}: the first q-ell entries share 1-p, the last ell entries share p.
inline SimplexPoint p_qlp(int q, int ell, const Rational& p)
{
    if (q < 2 || ell < 1 || ell >= q)
        throw std::invalid_argument("p_qlp needs 1 <= ell < q");
    if (p < make_rational(ell, q) || p > 1)
        throw std::invalid_argument("p_qlp needs ell/q <= p <= 1, got " + to_fraction_string(p));
    std::vector<Rational> e;
    e.reserve(static_cast<std::size_t>(q));
    Rational low = (1 - p) / (q - ell);
    Rational high = p / ell;
    for (int i = 0; i < q - ell; ++i)
        e.push_back(low);
    for (int i = 0; i < ell; ++i)
        e.push_back(high);
    return SimplexPoint(std::move(e));
}

/// P_{q,p}: mass p on symbol q, the rest spread evenly.
inline SimplexPoint p_qp(int q, const Rational& p)
{
    if (q < 2)
        throw std::invalid_argument("p_qp needs q >= 2");
    if (p < make_rational(1, q) || p > 1)
        throw std::invalid_argument("p_qp needs 1/q <= p <= 1, got " + to_fraction_string(p));
    return p_qlp(q, 1, p);
}

} // namespace zerorate
