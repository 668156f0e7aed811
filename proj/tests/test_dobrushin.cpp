#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conc/dobrushin.hpp"
#include "conc/models.hpp"

using namespace conc;

TEST_CASE("curie_weiss_matrix entries and norms") {
    const auto m = curie_weiss_matrix(10, 0.5);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            CHECK(m.entry(i, j) == (i == j ? 0.0 : doctest::Approx(0.05).epsilon(1e-14)));
    CHECK(m.norm_1 == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(m.norm_inf == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(m.norm_2 == doctest::Approx(0.45).epsilon(1e-8));

    const auto z = curie_weiss_matrix(5, 0.0);
    CHECK(z.norm_1 == 0.0);

    const auto two = curie_weiss_matrix(2, 1.0);
    CHECK(two.entry(0, 1) == doctest::Approx(0.5));
    CHECK(two.norm_1 == doctest::Approx(0.5));

    CHECK_THROWS_AS(curie_weiss_matrix(1, 0.5), DomainError);

    // norms stay strictly below beta
    for (int n : {2, 3, 7, 25})
        for (double beta : {0.1, 0.5, 0.99}) {
            const auto a = curie_weiss_matrix(n, beta);
            CHECK(a.norm_1 < beta);
            CHECK(a.norm_inf < beta);
        }
}

TEST_CASE("norms are recomputable from entries") {
    const auto m = curie_weiss_matrix(7, 0.8);
    CHECK(std::fabs(m.norm_1 - matrix_norm_1(m.entries)) <= 1e-10);
    CHECK(std::fabs(m.norm_inf - matrix_norm_inf(m.entries)) <= 1e-10);
    CHECK(std::fabs(m.norm_2 - matrix_norm_2(m.entries)) <= 1e-10);
}

TEST_CASE("exact_matrix of independent coordinates is identically zero") {
    const FiniteDistribution coin({0.5, 0.5});
    const auto model = independent_model({coin, coin});
    const auto m = exact_matrix(model);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(m.entry(i, j) == 0.0);
}

TEST_CASE("exact_matrix for Curie-Weiss n=3 beta=0.6") {
    const auto model = cw_conditional_model(3, 0.6, 0.0);
    const auto m = exact_matrix(model);
    // sup over the two neighbor configurations of |r(0.2(s+1)) - r(0.2(s-1))|
    const double expected = 1.0 / (1.0 + std::exp(-0.8)) - 0.5;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            CHECK(m.entry(i, j) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(m.entry(i, j) <= 0.6 / 3 + 1e-12);
        }
}

TEST_CASE("exact_matrix detects a deterministic copy") {
    // X2 = X1: joint (0,0) or (1,1) with probability 1/2 each
    ConditionalModel model;
    model.n = 2;
    model.alphabet_sizes = {2, 2};
    model.conditional = [](int i, const std::vector<int>& x)
        -> std::optional<FiniteDistribution> {
        const int other = x[static_cast<std::size_t>(1 - i)];
        std::vector<double> p(2, 0.0);
        p[static_cast<std::size_t>(other)] = 1.0;
        return FiniteDistribution(p);
    };
    const auto m = exact_matrix(model);
    CHECK(m.entry(1, 0) == doctest::Approx(1.0));
    CHECK(m.entry(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("exact_matrix output bounds TV for all pairs, not only single-coordinate ones") {
    const int n = 3;
    const auto model = cw_conditional_model(n, 0.7, 0.3);
    const auto m = exact_matrix(model);
    // exhaust all (x_{-i}, y_{-i}) pairs and test the defining inequality
    for (int i = 0; i < n; ++i) {
        for (int xm = 0; xm < 8; ++xm) {
            for (int ym = 0; ym < 8; ++ym) {
                std::vector<int> x(n), y(n);
                for (int k = 0; k < n; ++k) {
                    x[static_cast<std::size_t>(k)] = (xm >> k) & 1;
                    y[static_cast<std::size_t>(k)] = (ym >> k) & 1;
                }
                y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
                double rhs = 0.0;
                for (int j = 0; j < n; ++j)
                    if (x[static_cast<std::size_t>(j)] != y[static_cast<std::size_t>(j)])
                        rhs += m.entry(i, j);
                const double lhs = tv_distance(*model.conditional(i, x), *model.conditional(i, y));
                CHECK(lhs <= rhs + 1e-12);
            }
        }
    }
}

TEST_CASE("inhomogeneity of the uniform law") {
    const auto r = inhomogeneity_exact(SubsetLaw::uniform(10, 4));
    CHECK(r.r1 == doctest::Approx(1.0 / 7).epsilon(1e-14));
    CHECK(r.r2 == 0.0);
    CHECK(r.rho == doctest::Approx(4.0 / 7).epsilon(1e-14));

    const auto single = inhomogeneity_exact(SubsetLaw::uniform(9, 1));
    CHECK(single.r1 == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK(single.r2 == 0.0);
    CHECK(single.rho == doctest::Approx(1.0 / 9).epsilon(1e-14));

    // constant-rescaled weights give the identical result
    SubsetLaw scaled = SubsetLaw::uniform(8, 3);
    scaled.weight = [](std::uint32_t) { return 7.25; };
    const auto rs = inhomogeneity_exact(scaled);
    CHECK(rs.r1 == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(rs.r2 == 0.0);
}

TEST_CASE("weighted_swr_rho_bound") {
    CHECK(weighted_swr_rho_bound(0.1, 0.1, 4, 10) == doctest::Approx(4.0 / 6).epsilon(1e-14));
    CHECK(weighted_swr_rho_bound(0.2, 0.1, 2, 10) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(weighted_swr_rho_bound(0.2, 0.1, 0, 10) == 0.0);
    CHECK_THROWS_AS(weighted_swr_rho_bound(0.2, 0.1, 10, 10), DomainError);
    CHECK_THROWS_AS(weighted_swr_rho_bound(0.1, 0.2, 2, 10), DomainError);
}

TEST_CASE("degenerate subset laws are rejected") {
    SubsetLaw law;
    law.N = 5;
    law.n = 2;
    // all weight on subsets containing element 0
    law.weight = [](std::uint32_t mask) { return (mask & 1u) ? 1.0 : 0.0; };
    CHECK_THROWS_AS(inhomogeneity_exact(law), DegenerateLawError);
}

TEST_CASE("coordinate-model norms stay below rho (uniform and weighted)") {
    {
        const auto law = SubsetLaw::uniform(6, 2);
        const double rho = swr_lemma_matrix_bound(law);
        CHECK(rho == doctest::Approx(2.0 / 5).epsilon(1e-14));
        const auto m = exact_matrix(swr_coordinate_model(law));
        CHECK(m.norm_1 <= rho + 1e-9);
        CHECK(m.norm_inf <= rho + 1e-9);
    }
    {
        // single coordinate: no cross dependence at all
        const auto law = SubsetLaw::uniform(4, 1);
        const auto m = exact_matrix(swr_coordinate_model(law));
        CHECK(m.norm_1 == 0.0);
        CHECK(m.norm_inf == 0.0);
    }
    {
        // weighted sampling without replacement, intensity ratio 2
        std::vector<double> w(6);
        for (int i = 0; i < 6; ++i) w[static_cast<std::size_t>(i)] = 1.0 + i / 5.0;
        const auto p = FiniteDistribution::from_weights(w);
        const auto subset_law = swr_exact_subset_law(p, 2);
        std::vector<double> table(1u << 6, 0.0);
        for (const auto& [mask, prob] : subset_law) table[mask] = prob;
        SubsetLaw law;
        law.N = 6;
        law.n = 2;
        law.weight = [table](std::uint32_t mask) { return table[mask]; };
        const double rho = swr_lemma_matrix_bound(law);
        CHECK(rho < 1.0);
        const auto m = exact_matrix(swr_coordinate_model(law));
        CHECK(m.norm_1 <= rho + 1e-9);
        CHECK(m.norm_inf <= rho + 1e-9);
    }
}

TEST_CASE("ergm analytic matrix agrees with exhaustive enumeration") {
    for (const auto& [n, b1, b2] : {std::tuple{4, -0.2, 0.05}, std::tuple{4, 0.3, -0.1},
                                    std::tuple{5, -0.2, 0.05}}) {
        const auto analytic = ergm_edge_triangle_matrix(n, b1, b2);
        const auto exhaustive = exact_matrix(ergm_conditional_model(n, b1, b2));
        REQUIRE(analytic.n == exhaustive.n);
        for (int e = 0; e < analytic.n; ++e)
            for (int f = 0; f < analytic.n; ++f)
                CHECK(analytic.entry(e, f) ==
                      doctest::Approx(exhaustive.entry(e, f)).epsilon(1e-10));
    }
}

TEST_CASE("interdependence matrix CSV carries size and norms") {
    const auto m = curie_weiss_matrix(3, 0.6);
    const auto csv = m.to_csv();
    CHECK(csv.find("n,norm1,norminf,norm2") != std::string::npos);
    CHECK(csv.find("3,") == csv.find('\n') + 1);
}
