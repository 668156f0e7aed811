#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conc/bounds.hpp"
#include "conc/errors.hpp"
#include "conc/rng.hpp"

using namespace conc;

namespace {

BoundSpec spec(double a, double b, double mean_g, double norm1) {
    return BoundSpec{a, b, mean_g, norm1};
}

}  // namespace

TEST_CASE("mgf upper bounds at fixed points") {
    CHECK(mgf_star_upper(0.0, spec(1, 0, 100, 0)) == 0.0);
    CHECK(mgf_star_upper(0.25, spec(1, 0, 100, 0)) == doctest::Approx(6.25 / 1.5).epsilon(1e-14));
    // a = 0 removes the theta cap
    CHECK(mgf_star_upper(2.0, spec(0, 1, 0, 0.5)) == doctest::Approx(4.0).epsilon(1e-14));

    CHECK(mgf_weak_upper(0.0, spec(4, 0, 1, 0)) == 0.0);
    CHECK(mgf_weak_upper(0.1, spec(4, 0, 1, 0)) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(mgf_weak_upper(0.25, spec(1, 0, 100, 0)) == doctest::Approx(12.5).epsilon(1e-14));

    CHECK_THROWS_AS(mgf_star_upper(1.01, spec(1, 0, 1, 0)), DomainError);
    CHECK_THROWS_AS(mgf_weak_upper(0.51, spec(1, 0, 1, 0)), DomainError);
    CHECK_THROWS_AS(mgf_star_upper(-0.1, spec(1, 0, 1, 0)), DomainError);
}

TEST_CASE("weak mgf bound dominates the star bound") {
    SplitRng rng(3, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = spec(0.1 + rng.uniform(), rng.uniform(), 10.0 * rng.uniform(),
                            0.9 * rng.uniform());
        const double cap = (1.0 - s.norm1) / (2.0 * s.a);
        const double theta = cap * rng.uniform();
        CHECK(mgf_weak_upper(theta, s) >= mgf_star_upper(theta, s) - 1e-12);
    }
}

TEST_CASE("tail upper bounds at fixed points") {
    CHECK(tail_upper_star(0.0, spec(1, 0, 100, 0)) == 1.0);
    CHECK(tail_upper_star(20.0, spec(1, 0, 100, 0)) ==
          doctest::Approx(std::exp(-400.0 / 240.0)).epsilon(1e-14));
    CHECK(tail_upper_weak(0.0, spec(4, 0, 1, 0)) == 1.0);
    CHECK(tail_upper_weak(2.0, spec(4, 0, 1, 0)) ==
          doctest::Approx(std::exp(-1.0 / 12.0)).epsilon(1e-14));
}

TEST_CASE("tail bounds degrade monotonically in the interdependence norm") {
    for (double t : {0.5, 2.0, 10.0}) {
        double prev_star = 0.0, prev_weak = 0.0;
        for (double norm1 : {0.0, 0.3, 0.6, 0.9, 0.99}) {
            const auto s = spec(1, 0.5, 10, norm1);
            const double vs = tail_upper_star(t, s);
            const double vw = tail_upper_weak(t, s);
            CHECK(vs >= prev_star);
            CHECK(vw >= prev_weak);
            CHECK(vw >= vs);
            prev_star = vs;
            prev_weak = vw;
        }
    }
}

TEST_CASE("lower tail regimes") {
    CHECK(tail_lower(0.0, spec(1, 0, 100, 0)) == 1.0);
    // a = 1 is above a_c: Gaussian-type display
    CHECK(tail_lower(20.0, spec(1, 0, 100, 0)) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    // a = 0.1 is below a_c: Bernstein-type display
    CHECK(tail_lower(20.0, spec(0.1, 0, 100, 0)) ==
          doctest::Approx(std::exp(-400.0 / (50.0 + 40.0 / 3.0))).epsilon(1e-14));
}

TEST_CASE("a_c root and its reciprocal form") {
    const double ac = solve_ac();
    CHECK(ac > 0.285);
    CHECK(ac < 0.286);
    const double residual = (std::exp(1.0 / (4.0 * ac)) - 1.0) * 4.0 * ac - 1.6;
    CHECK(std::fabs(residual) < 1e-10);
    const double kc = 1.0 / (4.0 * ac);
    CHECK(std::fabs((std::exp(kc) - 1.0) / kc - 1.6) < 1e-10);
}

TEST_CASE("bernstein_tail") {
    CHECK(bernstein_tail(1, 0, 2) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(bernstein_tail(2, 1, 0) == 1.0);
    CHECK(bernstein_tail(2, 1, 2) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("closed-form tails equal the Chernoff value of the mgf bound") {
    // Markov at theta = t/(D + C t) of the integrated derivative bound is an identity
    SplitRng rng(17, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto s = spec(0.05 + rng.uniform(), rng.uniform(), 1.0 + 20.0 * rng.uniform(),
                            0.95 * rng.uniform());
        const double t = 10.0 * rng.uniform() + 1e-3;
        {
            const double d = (s.a * s.mean_g + s.b) / (1.0 - s.norm1);
            const double c = s.a / (1.0 - s.norm1);
            const double theta = t / (d + c * t);
            const double chernoff = std::exp(mgf_star_upper(theta, s) - theta * t);
            CHECK(chernoff == doctest::Approx(tail_upper_star(t, s)).epsilon(1e-11));
        }
        {
            const double d = 2.0 * (s.a * s.mean_g + s.b) / (1.0 - s.norm1);
            const double c = 2.0 * s.a / (1.0 - s.norm1);
            const double theta = t / (d + c * t);
            const double chernoff = std::exp(mgf_weak_upper(theta, s) - theta * t);
            CHECK(chernoff == doctest::Approx(tail_upper_weak(t, s)).epsilon(1e-11));
        }
    }
}

TEST_CASE("convex distance inequality pieces") {
    CHECK(convex_distance_rhs(1.0, 0.0) == 1.0);
    CHECK(convex_distance_rhs(0.5, 0.0) == doctest::Approx(2.0));
    CHECK(convex_distance_rate(0.0) == doctest::Approx(1.0 / 26.1).epsilon(1e-14));
    // the independent-case reference rate dominates the dependent one
    for (double norm1 : {0.0, 0.4, 0.9, 0.999})
        CHECK(0.25 > convex_distance_rate(norm1));
    CHECK_THROWS_AS(convex_distance_rhs(0.0, 0.0), DomainError);
}

TEST_CASE("nonuniform_tail values and monotonicity") {
    CHECK(nonuniform_tail(0.0, 64.0, 0.0) == 1.0);
    CHECK(nonuniform_tail(40.0, 64.0, 0.0) ==
          doctest::Approx(2.0 * std::exp(-1600.0 / 1670.4)).epsilon(1e-14));
    // doubling the budget halves the exponent magnitude
    const double e1 = -std::log(nonuniform_tail(40.0, 64.0, 0.0) / 2.0);
    const double e2 = -std::log(nonuniform_tail(40.0, 128.0, 0.0) / 2.0);
    CHECK(e1 == doctest::Approx(2.0 * e2).epsilon(1e-12));
}

TEST_CASE("application displays at fixed points") {
    ApplicationParams tsp;
    tsp.rho = 4.0 / 7.0;
    tsp.c_ratio = 1.0;
    CHECK(application_tail_raw(ApplicationKind::TSP, tsp, 50.0) ==
          doctest::Approx(4.0 * std::exp(-2500.0 * (3.0 / 7.0) / 1671.0)).epsilon(1e-14));

    ApplicationParams cw;
    cw.beta = 0.5;
    cw.h = 0.0;
    cw.n = 100;
    CHECK(application_tail_raw(ApplicationKind::CW_UP, cw, 0.2) ==
          doctest::Approx(std::exp(-100.0 * 0.5 * 0.04 / (16.0 * 1.8))).epsilon(1e-14));

    ApplicationParams sg;
    sg.n = 10;
    sg.norm1 = 0.2;
    sg.motif_vertices = 3;
    sg.motif_edges = 3;
    sg.mean_count = 15.0;
    CHECK(application_tail_raw(ApplicationKind::SUBGRAPH_LOW, sg, 10.0) ==
          doctest::Approx(std::exp(-0.8 * 100.0 / (8.0 * 8.0 * 3.0 * 15.0))).epsilon(1e-14));
    // exponents are negative: larger thresholds shrink the bound
    CHECK(application_tail_raw(ApplicationKind::SUBGRAPH_UP, sg, 20.0) <
          application_tail_raw(ApplicationKind::SUBGRAPH_UP, sg, 10.0));

    ApplicationParams swr;
    swr.c_budget = 64.0;
    swr.c_ratio = 2.0;
    CHECK(application_tail_raw(ApplicationKind::SWR_CONVEX, swr, 8.0) ==
          doctest::Approx(4.0 * std::exp(-64.0 / (16.0 * 64.0))).epsilon(1e-14));
    CHECK(application_tail_raw(ApplicationKind::SWR_TSP, swr, 32.0) ==
          doctest::Approx(4.0 * std::exp(-1024.0 / (1024.0 * 4.0))).epsilon(1e-14));
}

TEST_CASE("curves are capped at one and nonincreasing") {
    ApplicationParams tsp;
    tsp.rho = 0.5;
    tsp.c_ratio = 1.5;
    std::vector<double> ts;
    for (int i = 0; i <= 40; ++i) ts.push_back(i * 5.0);
    const auto curve = application_tails(ApplicationKind::TSP, tsp, ts);
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        CHECK(curve.values[i] <= 1.0);
        if (i > 0) CHECK(curve.values[i] <= curve.values[i - 1] + 1e-15);
    }
    CHECK(curve.values[0] == 1.0);
    const auto csv = curve.to_csv();
    CHECK(csv.rfind("t,bound\n", 0) == 0);
}

TEST_CASE("invalid parameter regimes are named") {
    ApplicationParams bad;
    bad.rho = 1.2;
    CHECK_THROWS_WITH_AS(application_tail_raw(ApplicationKind::TSP, bad, 1.0),
                         doctest::Contains("rho < 1"), DomainError);
    ApplicationParams cw;
    cw.beta = 1.2;
    cw.n = 10;
    CHECK_THROWS_WITH_AS(application_tail_raw(ApplicationKind::CW_UP, cw, 1.0),
                         doctest::Contains("beta"), DomainError);
}

TEST_CASE("constant composition checks") {
    const auto c = constant_composition_checks();
    CHECK(c.tsp_ok);
    CHECK(c.steiner_ok);
    CHECK(c.swr_tsp_ok);
    CHECK(c.all());
}

TEST_CASE("mgf lower derivative curve is finite in range") {
    const auto s = spec(4, 0, 2, 0.3);
    const double cap = (1.0 - s.norm1) / (2.0 * s.a);
    for (double frac : {0.0, 0.25, 0.5, 0.9}) {
        const double theta = -cap * frac;
        const double v = mgf_lower_derivative(theta, s);
        CHECK(std::isfinite(v));
        if (theta < 0.0) CHECK(v <= 0.0);  // derivative bound is nonpositive for theta < 0
    }
    CHECK_THROWS_AS(mgf_lower_derivative(0.1, s), DomainError);
}
