// lp.hpp -- dense equational-form simplex solver and the relaxed-radius linear programs
//
// The solver is a two-phase tableau simplex with Bland's pivoting rule. It always reports a
// basic feasible solution, which is what the center-rounding step relies on: an optimal basic
// solution of the relaxed-radius program has at most (#rows) nonzeros, so all but at most L
// coordinate blocks of the fractional center are vertices of the simplex.

#pragma once

#include "zerorate/core.hpp"
#include "zerorate/radii.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zerorate {

/// maximize c.x subject to A x = b, x >= 0.
struct LpProblem
{
    std::vector<double> objective;
    std::vector<std::vector<double>> constraints;
    std::vector<double> rhs;

    std::size_t num_vars() const { return objective.size(); }
    std::size_t num_rows() const { return constraints.size(); }

    void validate() const
    {
        if (constraints.size() != rhs.size())
            throw std::invalid_argument("LP: constraint and rhs row counts differ");
        for (double v : objective)
            if (!std::isfinite(v))
                throw std::invalid_argument("LP: non-finite objective coefficient");
        for (std::size_t r = 0; r < constraints.size(); ++r) {
            if (constraints[r].size() != objective.size())
                throw std::invalid_argument("LP: row " + std::to_string(r) + " has the wrong width");
            for (double v : constraints[r])
                if (!std::isfinite(v))
                    throw std::invalid_argument("LP: non-finite constraint coefficient");
            if (!std::isfinite(rhs[r]))
                throw std::invalid_argument("LP: non-finite rhs");
        }
    }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* to_string(LpStatus s)
{
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "?";
}

struct LpSolution
{
    LpStatus status = LpStatus::infeasible;
    double objective = 0;
    std::vector<double> x;
    /// Structural columns in the final basis, ascending.
    std::vector<std::size_t> basis;
    std::size_t nonzero_count = 0;
    /// Row multipliers y with c_j - y.A_j <= 0 at optimality.
    std::vector<double> duals;
};

struct LpOptions
{
    double pivot_tolerance = 1e-9;
    double feasibility_tolerance = 1e-9;
    std::size_t max_iterations = 200'000;
};

namespace detail {

class Tableau
{
public:
    Tableau(const LpProblem& p, const LpOptions& opt)
      : m_(p.num_rows()), n_(p.num_vars()), width_(n_ + m_ + 1), opt_(opt),
        t_(m_ * width_, 0.0), obj_(width_, 0.0), basis_(m_), sign_(m_, 1.0)
    {
        for (std::size_t r = 0; r < m_; ++r) {
            sign_[r] = p.rhs[r] < 0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j)
                at(r, j) = sign_[r] * p.constraints[r][j];
            at(r, n_ + r) = 1.0;
            at(r, width_ - 1) = sign_[r] * p.rhs[r];
            basis_[r] = n_ + r;
        }
    }

    LpSolution run(const std::vector<double>& c)
    {
        LpSolution sol;
        // Phase 1: maximize -sum(artificials).
        std::fill(obj_.begin(), obj_.end(), 0.0);
        for (std::size_t r = 0; r < m_; ++r)
            for (std::size_t j = 0; j < n_; ++j)
                obj_[j] += at(r, j);
        for (std::size_t r = 0; r < m_; ++r)
            obj_[width_ - 1] += at(r, width_ - 1);
        iterate(n_ + m_);
        double infeas = obj_[width_ - 1];
        double scale = 1.0;
        for (std::size_t r = 0; r < m_; ++r)
            scale = std::max(scale, std::abs(at(r, width_ - 1)));
        if (infeas > opt_.feasibility_tolerance * scale) {
            sol.status = LpStatus::infeasible;
            return sol;
        }
        // Drive artificials out of the basis where a structural pivot exists; rows with none are redundant.
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_)
                continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(at(r, j)) > opt_.pivot_tolerance) {
                    pivot(r, j);
                    break;
                }
            }
        }

        // Phase 2.
        std::fill(obj_.begin(), obj_.end(), 0.0);
        for (std::size_t j = 0; j < n_; ++j)
            obj_[j] = c[j];
        for (std::size_t r = 0; r < m_; ++r) {
            double cb = basis_[r] < n_ ? c[basis_[r]] : 0.0;
            if (cb == 0.0)
                continue;
            for (std::size_t j = 0; j < width_; ++j)
                obj_[j] -= cb * at(r, j);
        }
        if (!iterate(n_)) {
            sol.status = LpStatus::unbounded;
            return sol;
        }

        sol.status = LpStatus::optimal;
        sol.objective = -obj_[width_ - 1];
        sol.x.assign(n_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < n_) {
                double v = at(r, width_ - 1);
                sol.x[basis_[r]] = std::abs(v) < 1e-12 ? 0.0 : v;
                sol.basis.push_back(basis_[r]);
            }
        }
        std::sort(sol.basis.begin(), sol.basis.end());
        for (double v : sol.x)
            sol.nonzero_count += std::abs(v) > opt_.pivot_tolerance;
        sol.duals.resize(m_);
        for (std::size_t r = 0; r < m_; ++r)
            sol.duals[r] = -sign_[r] * obj_[n_ + r];
        return sol;
    }

private:
    double& at(std::size_t r, std::size_t j) { return t_[r * width_ + j]; }

    void pivot(std::size_t r, std::size_t col)
    {
        const double pv = at(r, col);
        for (std::size_t j = 0; j < width_; ++j)
            at(r, j) /= pv;
        for (std::size_t k = 0; k < m_; ++k) {
            if (k == r)
                continue;
            const double f = at(k, col);
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j < width_; ++j)
                at(k, j) -= f * at(r, j);
            at(k, col) = 0.0;
        }
        const double f = obj_[col];
        if (f != 0.0) {
            for (std::size_t j = 0; j < width_; ++j)
                obj_[j] -= f * at(r, j);
            obj_[col] = 0.0;
        }
        basis_[r] = col;
    }

    // Bland's rule: lowest-index improving column enters; the ratio-test tie goes to the
    // lowest-index basic variable. Returns false if the objective is unbounded.
    bool iterate(std::size_t allowed_cols)
    {
        for (std::size_t it = 0; it < opt_.max_iterations; ++it) {
            std::size_t col = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (obj_[j] > opt_.pivot_tolerance) {
                    col = j;
                    break;
                }
            }
            if (col == allowed_cols)
                return true;
            std::size_t row = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, col);
                if (a <= opt_.pivot_tolerance)
                    continue;
                const double ratio = at(r, width_ - 1) / a;
                if (row == m_ || ratio < best - 1e-12) {
                    best = ratio;
                    row = r;
                } else if (ratio <= best + 1e-12 && basis_[r] < basis_[row]) {
                    row = r;
                }
            }
            if (row == m_)
                return false;
            pivot(row, col);
        }
        throw std::runtime_error("LP: iteration limit reached");
    }

    std::size_t m_, n_, width_;
    LpOptions opt_;
    std::vector<double> t_;
    std::vector<double> obj_;
    std::vector<std::size_t> basis_;
    std::vector<double> sign_;
};

} // namespace detail

/// Solves the LP; returns an optimal basic feasible solution, or reports infeasible/unbounded.
inline LpSolution solve(const LpProblem& problem, const LpOptions& options = {})
{
    problem.validate();
    detail::Tableau tab(problem, options);
    return tab.run(problem.objective);
}

/// max_r |A_r x - b_r|.
inline double primal_residual(const LpProblem& p, const LpSolution& s)
{
    double worst = 0;
    for (std::size_t r = 0; r < p.num_rows(); ++r) {
        double v = -p.rhs[r];
        for (std::size_t j = 0; j < p.num_vars(); ++j)
            v += p.constraints[r][j] * s.x[j];
        worst = std::max(worst, std::abs(v));
    }
    return worst;
}

/// Largest violation of dual feasibility or complementary slackness, against the solution's own duals.
inline double complementary_slackness_residual(const LpProblem& p, const LpSolution& s)
{
    double worst = 0;
    for (std::size_t j = 0; j < p.num_vars(); ++j) {
        double ya = 0;
        for (std::size_t r = 0; r < p.num_rows(); ++r)
            ya += s.duals[r] * p.constraints[r][j];
        const double reduced = ya - p.objective[j]; // >= 0 when dual feasible
        worst = std::max(worst, -reduced);
        worst = std::max(worst, std::abs(s.x[j] * reduced));
    }
    // Strong duality: c.x = y.b.
    double yb = 0;
    for (std::size_t r = 0; r < p.num_rows(); ++r)
        yb += s.duals[r] * p.rhs[r];
    worst = std::max(worst, std::abs(yb - s.objective));
    return worst;
}

/// Writes the problem as TSV: an "objective" line, then one line per constraint row ending in its rhs.
inline void dump_tsv(const LpProblem& p, std::ostream& os)
{
    os << "objective";
    for (double v : p.objective)
        os << '\t' << v;
    os << "\t-\n";
    for (std::size_t r = 0; r < p.num_rows(); ++r) {
        os << "row" << r;
        for (double v : p.constraints[r])
            os << '\t' << v;
        os << '\t' << p.rhs[r] << '\n';
    }
}

// ---------------------------------------------------------------------------
// Relaxed radius
// ---------------------------------------------------------------------------

/// Program for the relaxed ell-radius of a list.
///
/// Variables: y(j,A) for coordinate j and ell-set A (index j*K + a), then t, then one surplus
/// per codeword. Rows: sum_A y(j,A) = 1 for each j; for each codeword i,
/// sum_j y(j, sets containing c_i(j)) + n t - s_i = n, i.e. d(phi(c_i), y) <= n t.
inline LpProblem relaxed_radius_program(const Codebook& list, int ell)
{
    const int q = list.q(), n = list.n();
    const std::size_t L = list.size();
    if (L == 0)
        throw std::invalid_argument("relaxed radius of an empty list");
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("relaxed radius needs 1 <= ell <= q-1");
    const auto subsets = ell_subsets(q, ell);
    const std::size_t K = subsets.size();
    const std::size_t nk = static_cast<std::size_t>(n) * K;
    const std::size_t vars = nk + 1 + L;

    LpProblem p;
    p.objective.assign(vars, 0.0);
    p.objective[nk] = -1.0;
    for (int j = 0; j < n; ++j) {
        std::vector<double> row(vars, 0.0);
        for (std::size_t a = 0; a < K; ++a)
            row[static_cast<std::size_t>(j) * K + a] = 1.0;
        p.constraints.push_back(std::move(row));
        p.rhs.push_back(1.0);
    }
    for (std::size_t i = 0; i < L; ++i) {
        std::vector<double> row(vars, 0.0);
        for (int j = 0; j < n; ++j)
            for (std::size_t a = 0; a < K; ++a)
                if (subset_contains(subsets[a], list.at(i, j)))
                    row[static_cast<std::size_t>(j) * K + a] = 1.0;
        row[nk] = n;
        row[nk + 1 + i] = -1.0;
        p.constraints.push_back(std::move(row));
        p.rhs.push_back(n);
    }
    return p;
}

struct RelaxedRadius
{
    /// Relative relaxed radius (min over fractional centers of the max distance, divided by n).
    double value = 0;
    /// Optimal basic center.
    FractionalCenter center;
    LpSolution lp;
};

/// Relaxed Chebyshev ell-radius via the LP; the center is an optimal basic feasible point.
inline RelaxedRadius relaxed_radius(const Codebook& list, int ell, const LpOptions& options = {})
{
    const LpProblem p = relaxed_radius_program(list, ell);
    LpSolution s = solve(p, options);
    if (s.status != LpStatus::optimal)
        throw std::logic_error(std::string("relaxed radius LP ended ") + to_string(s.status));
    const std::size_t K = binomial_u64(list.q(), ell);
    const std::size_t n = static_cast<std::size_t>(list.n());
    RelaxedRadius out;
    out.value = s.x[n * K];
    out.center.q = list.q();
    out.center.ell = ell;
    out.center.blocks.assign(n, std::vector<double>(K, 0.0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t a = 0; a < K; ++a)
            out.center.blocks[j][a] = s.x[j * K + a];
    out.lp = std::move(s);
    return out;
}

struct OmegaRadius
{
    /// max over omega of the weighted-average radius.
    double value = 0;
    /// A maximizing weighting.
    std::vector<double> omega;
    LpSolution lp;
};

/// Program maximizing 1 - sum_u type(u) t_u over omega in Delta([L]) with
/// t_u >= omega-mass of positions i with u(i) in A, for every pattern u in the support and every A.
inline LpProblem omega_program(const TupleType& type, int ell)
{
    const int q = type.q(), L = type.L();
    if (ell < 1 || ell > q - 1)
        throw std::invalid_argument("omega program needs 1 <= ell <= q-1");
    const auto subsets = ell_subsets(q, ell);
    const std::size_t K = subsets.size();
    const std::size_t U = type.counts().size();
    const std::size_t Lz = static_cast<std::size_t>(L);
    const std::size_t vars = Lz + U + U * K;

    LpProblem p;
    p.objective.assign(vars, 0.0);
    {
        std::vector<double> row(vars, 0.0);
        for (std::size_t i = 0; i < Lz; ++i)
            row[i] = 1.0;
        p.constraints.push_back(std::move(row));
        p.rhs.push_back(1.0);
    }
    std::size_t u_index = 0;
    for (const auto& [u, count] : type.counts()) {
        p.objective[Lz + u_index] = -static_cast<double>(count) / type.n();
        for (std::size_t a = 0; a < K; ++a) {
            std::vector<double> row(vars, 0.0);
            row[Lz + u_index] = 1.0;
            for (std::size_t i = 0; i < Lz; ++i)
                if (subset_contains(subsets[a], u[i]))
                    row[i] = -1.0;
            row[Lz + U + u_index * K + a] = -1.0;
            p.constraints.push_back(std::move(row));
            p.rhs.push_back(0.0);
        }
        ++u_index;
    }
    return p;
}

/// The relaxed radius computed from the dual side: max over omega of the weighted-average radius.
inline OmegaRadius relaxed_radius_via_omega(const TupleType& type, int ell, const LpOptions& options = {})
{
    const LpProblem p = omega_program(type, ell);
    LpSolution s = solve(p, options);
    if (s.status != LpStatus::optimal)
        throw std::logic_error(std::string("omega LP ended ") + to_string(s.status));
    OmegaRadius out;
    out.value = 1.0 + s.objective;
    out.omega.assign(s.x.begin(), s.x.begin() + type.L());
    out.lp = std::move(s);
    return out;
}

// ---------------------------------------------------------------------------
// Rounding
// ---------------------------------------------------------------------------

struct RoundedCenter
{
    ListSet center;
    /// Exact max lr-distance from the rounded center to the list.
    int max_distance = 0;
    /// max_distance / n.
    Rational radius;
    /// Blocks that were not vertices and got the default set.
    int fractional_blocks = 0;
};

/// Maps vertex blocks to their ell-set and every other block to the first ell-set {1..ell}.
/// Throws if more than L blocks are fractional (the center is not a basic point).
inline RoundedCenter round_center(const FractionalCenter& center, const Codebook& list, int ell)
{
    if (center.n() != list.n() || center.q != list.q() || center.ell != ell)
        throw std::invalid_argument("round_center: center does not match the list");
    const auto subsets = ell_subsets(list.q(), ell);
    std::vector<SubsetMask> sets;
    int fractional = 0;
    for (int j = 0; j < center.n(); ++j) {
        if (center.blocks[static_cast<std::size_t>(j)].size() != subsets.size())
            throw std::invalid_argument("round_center: block width differs from C(q,ell)");
        if (auto v = center.vertex(j)) {
            sets.push_back(subsets[*v]);
        } else {
            sets.push_back(subsets.front());
            ++fractional;
        }
    }
    if (fractional > static_cast<int>(list.size()))
        throw std::invalid_argument("round_center: " + std::to_string(fractional)
                                    + " fractional blocks exceed the list size; center is not basic");
    ListSet y(list.q(), ell, std::move(sets));
    int worst = 0;
    for (std::size_t i = 0; i < list.size(); ++i)
        worst = std::max(worst, lr_distance(list.row(i), y));
    return {std::move(y), worst, make_rational(worst, list.n()), fractional};
}

} // namespace zerorate
