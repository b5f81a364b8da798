#include "zerorate/construction.hpp"
#include "zerorate/radii.hpp"
#include "zerorate/verifier.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace zerorate;

namespace {

Rational R(long a, long b) { return make_rational(a, b); }

// Oracle: average radius of every distinct L-subset of rows, by direct plurality counting.
std::set<Rational> distinct_list_radii(const Codebook& code, int ell, int L)
{
    std::set<Rational> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(L));
    std::vector<bool> pick(code.size(), false);
    std::fill(pick.begin(), pick.begin() + L, true);
    do {
        idx.clear();
        for (std::size_t i = 0; i < pick.size(); ++i)
            if (pick[i])
                idx.push_back(i);
        out.insert(average_radius(code.subset(idx), ell));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

} // namespace

TEST_CASE("generate: shape and column order")
{
    auto code = generate(SimplexCodeSpec{3, 1, 2, 1});
    CHECK(code.size() == 3);
    CHECK(code.n() == 6);
    CHECK(code.rows() == std::vector<Codeword>{{1, 1, 2, 2, 3, 3}, {2, 3, 1, 3, 1, 2}, {3, 2, 3, 1, 2, 1}});

    CHECK(SimplexCodeSpec{3, 1, 2, 2}.blocklength() == 90);
    CHECK(SimplexCodeSpec{4, 1, 2, 2}.blocklength() == 2520);
    auto code2 = generate(SimplexCodeSpec{3, 1, 2, 2});
    CHECK(code2.size() == 6);
    CHECK(code2.n() == 90);
    std::set<std::vector<Symbol>> cols;
    for (int j = 0; j < code2.n(); ++j) {
        auto c = code2.column(j);
        for (Symbol x = 1; x <= 3; ++x)
            CHECK(std::count(c.begin(), c.end(), x) == 2);
        if (j)
            CHECK(code2.column(j - 1) < c);
        cols.insert(c);
    }
    CHECK(cols.size() == 90);
    for (const auto& row : code2.rows())
        for (Symbol x = 1; x <= 3; ++x)
            CHECK(std::count(row.begin(), row.end(), x) == 30);

    CHECK_THROWS_AS(generate(SimplexCodeSpec{3, 1, 2, 5}, 1000), BudgetExceeded);
    CHECK_THROWS_AS(generate(SimplexCodeSpec{3, 3, 2, 1}), std::invalid_argument);
    CHECK(SimplexCodeSpec{2, 1, 2, 1}.in_analysed_regime() == false);
    CHECK(generate(SimplexCodeSpec{2, 1, 2, 2}).n() == 6);
}

TEST_CASE("exact expected plurality examples")
{
    CHECK(exact_expected_plurality(SimplexCodeSpec{3, 1, 2, 1}) == R(1, 2));
    CHECK(construction_radius(SimplexCodeSpec{3, 1, 2, 2}) == R(2, 5));
    CHECK(construction_radius(SimplexCodeSpec{3, 1, 2, 3}) == R(3, 8));
    CHECK(construction_radius(SimplexCodeSpec{3, 2, 3, 1}) == R(1, 3));
    CHECK(construction_radius(SimplexCodeSpec{3, 2, 3, 2}) == R(2, 15));
    CHECK(construction_radius(SimplexCodeSpec{4, 1, 4, 1}) == R(3, 4));
    CHECK(construction_radius(SimplexCodeSpec{4, 2, 3, 3}) == R(9, 55));
    CHECK_THROWS_AS(exact_expected_plurality(SimplexCodeSpec{3, 1, 4, 1}), std::invalid_argument);
}

TEST_CASE("every distinct list of the generated code has the predicted average radius")
{
    for (int m = 1; m <= 2; ++m)
        for (int ell = 1; ell <= 2; ++ell)
            for (int L = 2; L <= 3; ++L) {
                SimplexCodeSpec spec{3, ell, L, m};
                auto code = generate(spec);
                auto radii = distinct_list_radii(code, ell, L);
                INFO("m=" << m << " ell=" << ell << " L=" << L);
                REQUIRE(radii.size() == 1);
                CHECK(*radii.begin() == construction_radius(spec));
            }
}

TEST_CASE("distinct tuples share the hypergeometric type")
{
    for (int m = 1; m <= 2; ++m)
        for (int L = 2; L <= 3; ++L) {
            SimplexCodeSpec spec{3, 1, L, m};
            auto code = generate(spec);
            std::vector<std::size_t> idx(static_cast<std::size_t>(L));
            std::vector<bool> pick(code.size(), false);
            std::fill(pick.begin(), pick.begin() + L, true);
            do {
                idx.clear();
                for (std::size_t i = 0; i < pick.size(); ++i)
                    if (pick[i])
                        idx.push_back(i);
                auto type = tuple_type(code.subset(idx));
                std::vector<Symbol> u(static_cast<std::size_t>(L), 1);
                for (;;) {
                    CHECK(type.weight(u) == hypergeometric_pattern_weight(spec, u));
                    int pos = L - 1;
                    while (pos >= 0 && u[static_cast<std::size_t>(pos)] == 3)
                        u[static_cast<std::size_t>(pos--)] = 1;
                    if (pos < 0)
                        break;
                    ++u[static_cast<std::size_t>(pos)];
                }
            } while (std::prev_permutation(pick.begin(), pick.end()));
        }
}

TEST_CASE("c coefficient")
{
    CHECK(c_coefficient(3, 1, 2).value == R(1, 9));
    for (int q = 3; q <= 5; ++q)
        CHECK(c_coefficient(q, 1, 2).value == R(q - 1, 2 * q * q));
    CHECK(c_coefficient(3, 1, 3).value == R(4, 27));
    CHECK(c_coefficient(3, 2, 3).value == R(2, 27));
    CHECK(c_coefficient(4, 1, 4).value == R(9, 64));
    CHECK(c_coefficient(4, 2, 3).value == R(3, 32));
    for (int q = 3; q <= 5; ++q)
        for (int ell = 1; ell <= 2; ++ell)
            for (int L = ell + 1; L <= 6; ++L) {
                auto c = c_coefficient(q, ell, L);
                CHECK(c.verified);
                CHECK(c.value > 0);
            }
    auto flat = c_coefficient(3, 2, 2);
    CHECK_FALSE(flat.verified);
    CHECK(flat.value == 0);
    CHECK_THROWS_AS(c_coefficient(3, 3, 2), std::invalid_argument);
}

TEST_CASE("trade-off table")
{
    auto t = tradeoff_table(3, 1, 2, {3, 1, 2});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].m == 1);
    CHECK(t.rows[0].residual == R(1, 18));
    CHECK(t.rows[1].residual == R(1, 90));
    CHECK(t.to_csv()
          == "m,M,n,p_exact,p_star,c_over_m,residual\n"
             "1,3,6,1/2,1/3,1/9,1/18\n"
             "2,6,90,2/5,1/3,1/18,1/90\n"
             "3,9,1680,3/8,1/3,1/27,1/216\n");

    for (auto [q, ell, L] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {3, 1, 3}, {3, 2, 3}, {4, 1, 4}, {4, 2, 3}}) {
        std::vector<int> ms;
        for (int m = 1; m <= 24; ++m)
            ms.push_back(m);
        auto table = tradeoff_table(q, ell, L, ms);
        INFO("q=" << q << " ell=" << ell << " L=" << L);
        CHECK(table.scaled_residual_nonincreasing());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            CHECK(table.rows[i].p_exact > table.p_star);
            if (i)
                CHECK(table.rows[i].p_exact < table.rows[i - 1].p_exact);
        }
        // Doubling m shrinks the residual roughly fourfold.
        for (int m = 2; 2 * m <= 24; ++m) {
            const Rational ratio = table.rows[static_cast<std::size_t>(m - 1)].residual / table.rows[static_cast<std::size_t>(2 * m - 1)].residual;
            CHECK(ratio >= R(5, 2));
            CHECK(ratio <= 6);
        }
    }
}

TEST_CASE("large m approaches the threshold")
{
    for (auto [q, ell, L] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {3, 2, 3}, {4, 1, 3}}) {
        SimplexCodeSpec spec{q, ell, L, 50};
        const Rational gap = construction_radius(spec) - zero_rate_threshold(q, ell, L);
        CHECK(gap > 0);
        CHECK(gap <= 2 * c_coefficient(q, ell, L).value / 50);
    }
}

TEST_CASE("hypergeometric weights form a distribution")
{
    SimplexCodeSpec spec{3, 1, 3, 1};
    CHECK(hypergeometric_pattern_weight(spec, {1, 1, 2}) == 0);
    CHECK(hypergeometric_pattern_weight(spec, {1, 2, 3}) == R(1, 6));
    SimplexCodeSpec spec2{3, 1, 2, 2};
    Rational total = 0;
    for (Symbol a = 1; a <= 3; ++a)
        for (Symbol b = 1; b <= 3; ++b)
            total += hypergeometric_pattern_weight(spec2, {a, b});
    CHECK(total == 1);
    CHECK(hypergeometric_pattern_weight(spec2, {1, 1}) == R(1, 15));
}

TEST_CASE("generated code is tight at its exact radius")
{
    // m = 1: PASS just below p_exact (at the threshold), FAIL at p_exact.
    for (auto [ell, L] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}}) {
        SimplexCodeSpec spec{3, ell, L, 1};
        auto code = generate(spec);
        CHECK(is_list_recoverable(code, zero_rate_threshold(3, ell, L), ell, L).pass);
        auto fail = is_list_recoverable(code, construction_radius(spec), ell, L);
        CHECK_FALSE(fail.pass);
        CHECK(fail.witness_center.has_value());
    }
}
