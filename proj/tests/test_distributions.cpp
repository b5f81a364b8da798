#include "zerorate/distributions.hpp"
#include "zerorate/random.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numeric>

using namespace zerorate;

namespace {

Rational R(long a, long b) { return make_rational(a, b); }

SimplexPoint exact_point(std::vector<Rational> e) { return SimplexPoint(std::move(e)); }

} // namespace

TEST_CASE("uniform points")
{
    CHECK(uniform(1).exact() == std::vector<Rational>{1});
    CHECK(uniform(4).exact() == std::vector<Rational>(4, R(1, 4)));
    Rational s = 0;
    const auto u3 = uniform(3);
    for (const auto& v : u3.exact())
        s += v;
    CHECK(s == 1);
    CHECK_THROWS_AS(uniform(0), std::invalid_argument);
}

TEST_CASE("simplex point validation")
{
    CHECK_THROWS_AS(exact_point({R(1, 2), R(1, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(exact_point({R(3, 2), R(-1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(exact_point({}), std::invalid_argument);
    CHECK_NOTHROW(SimplexPoint(std::vector<double>{0.1, 0.2, 0.7}));
    CHECK_THROWS_AS(SimplexPoint(std::vector<double>{0.1, 0.2, 0.6}), std::invalid_argument);
}

TEST_CASE("modes do not mix")
{
    SimplexPoint f(std::vector<double>{0.5, 0.5});
    CHECK_FALSE(f.is_exact());
    CHECK_THROWS_AS(f.exact(), ModeMismatch);
    CHECK_THROWS_AS(uniform(2).floating(), ModeMismatch);
    CHECK_THROWS_AS(f.top_mass(1), ModeMismatch);
}

TEST_CASE("argmax breaks ties toward the lowest index")
{
    CHECK(exact_point({R(1, 3), R(1, 3), R(1, 3)}).argmax() == 0);
    CHECK(exact_point({R(1, 4), R(3, 8), R(3, 8)}).argmax() == 1);
    CHECK(SimplexPoint(std::vector<double>{0.2, 0.4, 0.4}).argmax() == 1);
}

TEST_CASE("average_out examples")
{
    std::vector<std::size_t> both{0, 1};
    CHECK(average_out(exact_point({R(1, 2), R(1, 2)}), both) == exact_point({R(1, 2), R(1, 2)}));
    CHECK(average_out(exact_point({R(1, 2), R(1, 4), R(1, 4)}), both)
          == exact_point({R(3, 8), R(3, 8), R(1, 4)}));
    std::vector<std::size_t> none;
    CHECK_THROWS_AS(average_out(uniform(2), none), std::invalid_argument);
    std::vector<std::size_t> dup{0, 0};
    CHECK_THROWS_AS(average_out(uniform(2), dup), std::invalid_argument);
    std::vector<std::size_t> out_of_range{5};
    CHECK_THROWS_AS(average_out(uniform(2), out_of_range), std::invalid_argument);
}

TEST_CASE("average_out properties on random weightings")
{
    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        const int L = static_cast<int>(rng.uniform_int(2, 6));
        auto w = random_rational_simplex(rng, L, 30, false);
        auto picks = sample_distinct(rng, 0, L - 1, static_cast<std::size_t>(rng.uniform_int(1, L)));
        std::vector<std::size_t> S(picks.begin(), picks.end());
        auto once = average_out(w, S);
        CHECK(average_out(once, S) == once);
        for (std::size_t i = 0; i < w.size(); ++i)
            if (std::find(S.begin(), S.end(), i) == S.end())
                CHECK(once.exact()[i] == w.exact()[i]);
        std::vector<std::size_t> all(static_cast<std::size_t>(L));
        std::iota(all.begin(), all.end(), 0);
        CHECK(average_out(w, all) == uniform(L));
    }
}

TEST_CASE("repeated pairwise averaging converges to uniform in float mode")
{
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        const int L = static_cast<int>(rng.uniform_int(2, 6));
        std::vector<double> e(static_cast<std::size_t>(L));
        double s = 0;
        for (auto& v : e)
            s += (v = rng.uniform01() + 1e-3);
        for (auto& v : e)
            v /= s;
        // Renormalise once more so the sum sits inside the float tolerance.
        s = 0;
        for (double v : e)
            s += v;
        e.back() += 1.0 - s;
        SimplexPoint w(e);
        // Cycling through all pairs is a deterministic schedule that mixes every coordinate.
        for (int round = 0; round < 200; ++round)
            for (int i = 0; i < L; ++i)
                for (int j = i + 1; j < L; ++j) {
                    std::vector<std::size_t> S{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
                    w = average_out(w, S);
                }
        double dev = 0;
        for (double v : w.floating())
            dev = std::max(dev, std::abs(v - 1.0 / L));
        CHECK(dev < 1e-6);
    }
}

TEST_CASE("p_qp and p_qlp examples")
{
    CHECK(p_qp(3, R(1, 3)) == uniform(3));
    CHECK(p_qp(3, 1) == exact_point({0, 0, 1}));
    CHECK(p_qp(4, R(1, 2)) == exact_point({R(1, 6), R(1, 6), R(1, 6), R(1, 2)}));
    CHECK(p_qlp(3, 1, R(1, 2)) == p_qp(3, R(1, 2)));
    CHECK(p_qlp(4, 2, R(1, 2)) == uniform(4));
    CHECK(p_qlp(4, 2, R(3, 4)) == exact_point({R(1, 8), R(1, 8), R(3, 8), R(3, 8)}));
    CHECK_THROWS_AS(p_qp(3, R(1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(p_qp(3, R(5, 4)), std::invalid_argument);
    CHECK_THROWS_AS(p_qlp(4, 2, R(1, 4)), std::invalid_argument);
    CHECK_THROWS_AS(p_qlp(4, 4, 1), std::invalid_argument);
}

TEST_CASE("p_qlp at ell/q is uniform")
{
    for (int q = 2; q <= 8; ++q)
        for (int ell = 1; ell < q; ++ell)
            CHECK(p_qlp(q, ell, R(ell, q)) == uniform(q));
}

TEST_CASE("top_mass of p_qlp is p")
{
    for (int q = 3; q <= 6; ++q)
        for (int ell = 1; ell < q; ++ell)
            for (const auto& p : rational_grid(R(ell, q), 1, 12))
                CHECK(p_qlp(q, ell, p).top_mass(ell) == p);
}

TEST_CASE("random rational simplex points are valid")
{
    Rng rng(2);
    for (int t = 0; t < 200; ++t) {
        const int k = static_cast<int>(rng.uniform_int(1, 6));
        auto w = random_rational_simplex(rng, k, 40, true);
        CHECK(w.full_support());
        CHECK(w.size() == static_cast<std::size_t>(k));
        for (const auto& v : w.exact())
            CHECK(v.get_den() <= 40);
    }
    for (int t = 0; t < 100; ++t) {
        const int L = static_cast<int>(rng.uniform_int(2, 5));
        CHECK_FALSE(random_nonuniform_weighting(rng, L, 20) == uniform(L));
    }
}
