#include "zerorate/lp.hpp"
#include "zerorate/radii.hpp"
#include "zerorate/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace zerorate;

namespace {

std::size_t count_nonzeros(const std::vector<double>& x)
{
    return static_cast<std::size_t>(std::count_if(x.begin(), x.end(), [](double v) { return std::abs(v) > 1e-9; }));
}

// max_i of the relative embedded distance from codeword i to the center, recomputed independently.
double center_value(const FractionalCenter& c, const Codebook& list, int ell)
{
    const auto subsets = ell_subsets(list.q(), ell);
    double worst = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
        double d = 0;
        for (int j = 0; j < list.n(); ++j) {
            double inside = 0;
            for (std::size_t a = 0; a < subsets.size(); ++a)
                if (subset_contains(subsets[a], list.at(i, j)))
                    inside += c.blocks[static_cast<std::size_t>(j)][a];
            d += 1.0 - inside;
        }
        worst = std::max(worst, d / list.n());
    }
    return worst;
}

LpProblem random_feasible_problem(Rng& rng)
{
    // A random nonnegative point x0 fixes b = A x0, so the problem is feasible;
    // nonpositive objective coefficients keep it bounded.
    const std::size_t m = static_cast<std::size_t>(rng.uniform_int(1, 5));
    const std::size_t n = m + static_cast<std::size_t>(rng.uniform_int(0, 5));
    LpProblem p;
    std::vector<double> x0(n);
    for (auto& v : x0)
        v = static_cast<double>(rng.uniform_int(0, 3));
    for (std::size_t r = 0; r < m; ++r) {
        std::vector<double> row(n);
        double b = 0;
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = static_cast<double>(rng.uniform_int(-3, 3));
            b += row[j] * x0[j];
        }
        p.constraints.push_back(row);
        p.rhs.push_back(b);
    }
    for (std::size_t j = 0; j < n; ++j)
        p.objective.push_back(-static_cast<double>(rng.uniform_int(0, 4)));
    return p;
}

} // namespace

TEST_CASE("solver examples")
{
    LpProblem one{{0.0}, {{1.0}}, {1.0}};
    auto s = solve(one);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.x[0] == Catch::Approx(1.0));
    CHECK(s.nonzero_count == 1);

    LpProblem two{{1.0, 1.0, 0.0}, {{1.0, 1.0, 1.0}}, {1.0}};
    auto s2 = solve(two);
    REQUIRE(s2.status == LpStatus::optimal);
    CHECK(s2.objective == Catch::Approx(1.0));
    CHECK(s2.nonzero_count <= 1);

    LpProblem infeasible{{0.0}, {{1.0}}, {-1.0}};
    CHECK(solve(infeasible).status == LpStatus::infeasible);

    LpProblem unbounded{{1.0, 0.0}, {{1.0, -1.0}}, {0.0}};
    CHECK(solve(unbounded).status == LpStatus::unbounded);

    LpProblem bad{{1.0}, {{1.0, 2.0}}, {1.0}};
    CHECK_THROWS_AS(solve(bad), std::invalid_argument);
}

TEST_CASE("random LPs: feasibility, BFS size, complementary slackness")
{
    Rng rng(101);
    for (int t = 0; t < 300; ++t) {
        auto p = random_feasible_problem(rng);
        auto s = solve(p);
        REQUIRE(s.status == LpStatus::optimal);
        CHECK(primal_residual(p, s) <= 1e-8);
        for (double v : s.x)
            CHECK(v >= -1e-10);
        CHECK(s.nonzero_count == count_nonzeros(s.x));
        CHECK(s.nonzero_count <= p.num_rows());
        CHECK(s.basis.size() <= p.num_rows());
        CHECK(complementary_slackness_residual(p, s) <= 1e-7);
    }
}

TEST_CASE("LP dump is one line per row plus the objective")
{
    LpProblem p{{1.0, 0.0}, {{1.0, 1.0}, {0.0, 1.0}}, {2.0, 1.0}};
    std::ostringstream os;
    dump_tsv(p, os);
    CHECK(os.str() == "objective\t1\t0\t-\nrow0\t1\t1\t2\nrow1\t0\t1\t1\n");
}

TEST_CASE("relaxed radius examples")
{
    Codebook same(3, 3, {{1, 2, 3}, {1, 2, 3}});
    CHECK(relaxed_radius(same, 1).value == Catch::Approx(0.0).margin(1e-9));

    Codebook pair(2, 2, {{1, 1}, {2, 2}});
    CHECK(relaxed_radius(pair, 1).value == Catch::Approx(0.5).margin(1e-8));

    Codebook three(3, 1, {{1}, {2}, {3}});
    auto r = relaxed_radius(three, 1);
    CHECK(r.value == Catch::Approx(2.0 / 3).margin(1e-8));
    for (double v : r.center.blocks[0])
        CHECK(v == Catch::Approx(1.0 / 3).margin(1e-8));

    // Feasibility system for a 2-codeword list: at most n + L nonzeros.
    Codebook two(3, 4, {{1, 2, 3, 1}, {2, 2, 1, 3}});
    auto r2 = relaxed_radius(two, 1);
    CHECK(r2.lp.nonzero_count <= static_cast<std::size_t>(two.n()) + two.size());
}

TEST_CASE("omega route examples")
{
    Codebook constant(3, 2, {{2, 2}, {2, 2}, {2, 2}});
    CHECK(relaxed_radius_via_omega(tuple_type(constant), 1).value == Catch::Approx(0.0).margin(1e-9));

    Codebook three(3, 1, {{1}, {2}, {3}});
    auto o = relaxed_radius_via_omega(tuple_type(three), 1);
    CHECK(o.value == Catch::Approx(2.0 / 3).margin(1e-8));
    // Three symmetric positions: every optimal omega puts at most 1/3 on each position.
    for (double w : o.omega)
        CHECK(w <= 1.0 / 3 + 1e-8);
}

TEST_CASE("minimax equality and radius sandwich on random lists")
{
    Rng rng(55);
    for (int t = 0; t < 200; ++t) {
        const int ell = static_cast<int>(rng.uniform_int(1, 2));
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        const int L = static_cast<int>(rng.uniform_int(1, 4));
        auto list = random_codebook(rng, 3, n, L, false);
        auto rr = relaxed_radius(list, ell);
        auto om = relaxed_radius_via_omega(tuple_type(list), ell);
        CHECK(std::abs(rr.value - om.value) <= 1e-6);
        CHECK(std::abs(center_value(rr.center, list, ell) - rr.value) <= 1e-8);
        CHECK(om.value + 1e-9 >= weighted_average_radius(list, uniform(L), ell).get_d());
        CHECK(complementary_slackness_residual(relaxed_radius_program(list, ell), rr.lp) <= 1e-7);
        CHECK(rr.lp.nonzero_count <= static_cast<std::size_t>(n) + list.size());

        const Rational cheb = chebyshev_radius_exact(list, ell).radius;
        CHECK(rr.value <= cheb.get_d() + 1e-9);
        CHECK(cheb.get_d() <= rr.value + static_cast<double>(L) / n + 1e-9);

        CHECK(rr.center.vertex_blocks() >= n - L);
        auto rounded = round_center(rr.center, list, ell);
        CHECK(rounded.max_distance <= n * rr.value + L + 1e-9);
        CHECK(rounded.fractional_blocks <= L);
    }
}

TEST_CASE("round_center")
{
    SECTION("all-vertex center rounds to itself")
    {
        Codebook list(3, 2, {{1, 2}, {1, 3}});
        FractionalCenter c{3, 1, {{1, 0, 0}, {0, 1, 0}}};
        auto r = round_center(c, list, 1);
        CHECK(r.center.as_word() == Codeword{1, 2});
        CHECK(r.max_distance == 1);
        CHECK(r.fractional_blocks == 0);
    }
    SECTION("one fractional block")
    {
        Codebook list(3, 3, {{1, 1, 2}, {2, 1, 3}});
        FractionalCenter c{3, 1, {{0.5, 0.5, 0}, {0.5, 0, 0.5}, {0, 0.5, 0.5}}};
        CHECK_THROWS_AS(round_center(c, list, 1), std::invalid_argument);
        FractionalCenter c1{3, 1, {{0.5, 0.5, 0}, {1, 0, 0}, {0, 1, 0}}};
        auto r = round_center(c1, list, 1);
        CHECK(r.fractional_blocks == 1);
        CHECK(r.center.as_word() == Codeword{1, 1, 2});
        CHECK(r.max_distance <= center_value(c1, list, 1) * 3 + 2);
    }
    SECTION("the q = 2 pair rounds to its Chebyshev radius")
    {
        Codebook pair(2, 2, {{1, 1}, {2, 2}});
        auto rr = relaxed_radius(pair, 1);
        auto r = round_center(rr.center, pair, 1);
        CHECK(r.radius == chebyshev_radius_exact(pair, 1).radius);
    }
    SECTION("mismatched shapes")
    {
        Codebook list(3, 2, {{1, 2}});
        FractionalCenter c{3, 1, {{1, 0, 0}}};
        CHECK_THROWS_AS(round_center(c, list, 1), std::invalid_argument);
    }
}
