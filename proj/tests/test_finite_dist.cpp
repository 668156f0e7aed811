#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conc/finite_dist.hpp"
#include "conc/rng.hpp"

using namespace conc;

namespace {

FiniteDistribution bernoulli(double p1) { return FiniteDistribution({1.0 - p1, p1}); }

FiniteDistribution random_dist(SplitRng& rng, int m) {
    std::vector<double> w(static_cast<std::size_t>(m));
    for (auto& x : w) x = rng.uniform() + 1e-3;
    return FiniteDistribution::from_weights(w);
}

}  // namespace

TEST_CASE("tv_distance basic values") {
    CHECK(tv_distance(bernoulli(0.5), bernoulli(0.9)) == doctest::Approx(0.4).epsilon(1e-14));
    const FiniteDistribution p({0.2, 0.3, 0.5});
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(tv_distance(FiniteDistribution({1.0, 0.0, 0.0}), FiniteDistribution({0.0, 0.0, 1.0})) ==
          doctest::Approx(1.0));
    CHECK_THROWS_AS(tv_distance(bernoulli(0.5), p), DimensionError);
}

TEST_CASE("tv_distance is a metric on random triples") {
    SplitRng rng(7, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + rng.uniform_int(5);
        const auto p = random_dist(rng, m);
        const auto q = random_dist(rng, m);
        const auto r = random_dist(rng, m);
        const double dpq = tv_distance(p, q);
        CHECK(dpq == doctest::Approx(tv_distance(q, p)).epsilon(1e-14));
        CHECK(dpq <= tv_distance(p, r) + tv_distance(r, q) + 1e-12);
        CHECK(dpq >= 0.0);
        CHECK(dpq <= 1.0);
    }
}

TEST_CASE("coupling with identical marginals and q=0 is diagonal") {
    const FiniteDistribution p({0.2, 0.3, 0.5});
    const auto table = build_coupling(p, p, 0.0);
    CHECK(table.off_diagonal_mass() == 0.0);
    for (int i = 0; i < 3; ++i) CHECK(table.joint[i][i] == doctest::Approx(p.prob(i)));
}

TEST_CASE("coupling of Bernoulli(0.5) and Bernoulli(0.9) at q = TV") {
    const auto table = build_coupling(bernoulli(0.5), bernoulli(0.9), 0.4);
    // exact evaluation of the B/C/D densities gives joint [[0.1,0.4],[0,0.5]]
    CHECK(table.joint[0][0] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(table.joint[0][1] == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(table.joint[1][0] == doctest::Approx(0.0));
    CHECK(table.joint[1][1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(table.off_diagonal_mass() == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("q=1 gives the product coupling") {
    SplitRng rng(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 2 + rng.uniform_int(4);
        const auto p = random_dist(rng, m);
        const auto q = random_dist(rng, m);
        const auto table = build_coupling(p, q, 1.0);
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                CHECK(table.joint[x][y] == doctest::Approx(p.prob(x) * q.prob(y)).epsilon(1e-11));
    }
}

TEST_CASE("coupling marginals and off-diagonal mass on random inputs") {
    SplitRng rng(23, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + rng.uniform_int(5);
        const auto p = random_dist(rng, m);
        const auto qd = random_dist(rng, m);
        const double tv = tv_distance(p, qd);
        const double q = tv + (1.0 - tv) * rng.uniform();
        const auto table = build_coupling(p, qd, q);
        const auto rows = table.row_marginal();
        const auto cols = table.col_marginal();
        for (int i = 0; i < m; ++i) {
            CHECK(rows[i] == doctest::Approx(p.prob(i)).epsilon(1e-11));
            CHECK(cols[i] == doctest::Approx(qd.prob(i)).epsilon(1e-11));
        }
        CHECK(table.off_diagonal_mass() <= q + 1e-12);
        for (const auto& row : table.joint)
            for (double v : row) CHECK(v >= -1e-15);
    }
}

TEST_CASE("q = TV achieves the maximal coupling") {
    SplitRng rng(41, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + rng.uniform_int(5);
        const auto p = random_dist(rng, m);
        const auto qd = random_dist(rng, m);
        const double tv = tv_distance(p, qd);
        const auto table = build_coupling(p, qd, tv);
        CHECK(table.off_diagonal_mass() == doctest::Approx(tv).epsilon(1e-10));
    }
}

TEST_CASE("infeasible and out-of-range budgets are rejected") {
    CHECK_THROWS_AS(build_coupling(bernoulli(0.5), bernoulli(0.9), 0.2), InfeasibilityError);
    CHECK_THROWS_AS(build_coupling(bernoulli(0.5), bernoulli(0.9), 1.5), DomainError);
}

TEST_CASE("exact rational coupling marginals") {
    // p = (1/2, 1/3, 1/6), q_dist = (1/6, 1/2, 1/3)
    const std::vector<Rat> p{{1, 2}, {1, 3}, {1, 6}};
    const std::vector<Rat> qd{{1, 6}, {1, 2}, {1, 3}};
    const Rat tv = tv_distance_exact(p, qd);
    CHECK(tv == Rat(1, 3));
    for (const Rat& q : {tv, Rat(1, 2), Rat(1)}) {
        const auto cpl = build_coupling_exact(p, qd, q);
        for (std::size_t x = 0; x < 3; ++x) {
            Rat row(0), col(0);
            for (std::size_t y = 0; y < 3; ++y) {
                row += cpl.joint[x][y];
                col += cpl.joint[y][x];
            }
            CHECK(row == p[x]);
            CHECK(col == qd[x]);
        }
        Rat off(0);
        for (std::size_t x = 0; x < 3; ++x)
            for (std::size_t y = 0; y < 3; ++y)
                if (x != y) off += cpl.joint[x][y];
        CHECK(off <= q);
        if (q == tv) CHECK(off == tv);
    }
}

TEST_CASE("coupling parts reproduce marginals by mixture") {
    SplitRng rng(5, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + rng.uniform_int(4);
        const auto p = random_dist(rng, m);
        const auto qd = random_dist(rng, m);
        const double tv = tv_distance(p, qd);
        const double q = tv + (1.0 - tv) * rng.uniform();
        const auto parts = build_coupling_parts(p, qd, q);
        for (int i = 0; i < m; ++i) {
            const double px = (1.0 - parts.q) * parts.b[i] + parts.q * parts.c[i];
            const double py = (1.0 - parts.q) * parts.b[i] + parts.q * parts.d[i];
            CHECK(px == doctest::Approx(p.prob(i)).epsilon(1e-11));
            CHECK(py == doctest::Approx(qd.prob(i)).epsilon(1e-11));
        }
    }
}
