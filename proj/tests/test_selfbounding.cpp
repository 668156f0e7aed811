#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conc/rng.hpp"
#include "conc/selfbounding.hpp"

using namespace conc;

namespace {

// number of -1 spins with symbol 0 standing for spin -1
double n_minus(const std::vector<int>& x) {
    double s = 0.0;
    for (int v : x) s += v == 0 ? 1.0 : 0.0;
    return s;
}

std::vector<double> n_minus_alpha(const std::vector<int>& x) {
    std::vector<double> a(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) a[i] = x[i] == 0 ? 1.0 : 0.0;
    return a;
}

EdgeGraph graph_from_config(int n, const std::vector<int>& x) {
    EdgeGraph g(n);
    for (int s = 0; s < g.n_slots(); ++s)
        g.edges[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(x[static_cast<std::size_t>(s)]);
    return g;
}

}  // namespace

TEST_CASE("count of -1 spins is (1,0)-*-self-bounding for n up to 5") {
    for (int n = 1; n <= 5; ++n) {
        WitnessedFunction w;
        w.g = n_minus;
        w.alpha = n_minus_alpha;
        w.a = 1.0;
        w.b = 0.0;
        w.variant = SelfBoundingVariant::STAR;
        const auto rep = verify_star(w, ProductSpace::hypercube(n));
        CHECK(rep.holds);
        // the weak variant is implied and must also verify
        w.variant = SelfBoundingVariant::WSTAR;
        CHECK(verify_star(w, ProductSpace::hypercube(n)).holds);
    }
}

TEST_CASE("constant zero function with zero witnesses") {
    WitnessedFunction w;
    w.g = [](const std::vector<int>&) { return 0.0; };
    w.alpha = [](const std::vector<int>& x) { return std::vector<double>(x.size(), 0.0); };
    w.a = 0.0;
    w.b = 0.0;
    w.variant = SelfBoundingVariant::STAR;
    CHECK(verify_star(w, ProductSpace::hypercube(3)).holds);
}

TEST_CASE("zero witnesses fail the pairwise condition for the sum") {
    WitnessedFunction w;
    w.g = [](const std::vector<int>& x) {
        double s = 0.0;
        for (int v : x) s += v;
        return s;
    };
    w.alpha = [](const std::vector<int>& x) { return std::vector<double>(x.size(), 0.0); };
    w.a = 1.0;
    w.b = 0.0;
    w.variant = SelfBoundingVariant::STAR;
    const auto rep = verify_star(w, ProductSpace::hypercube(3));
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.worst_pair.has_value());
    // min margin over ordered pairs: x = (1,1,1) against y = (0,0,0)
    CHECK(rep.worst_pair->margin == doctest::Approx(-3.0));
    CHECK(rep.worst_pair->x == std::vector<int>{1, 1, 1});
    CHECK(rep.worst_pair->y == std::vector<int>{0, 0, 0});
}

TEST_CASE("verify_sb on the number of ones") {
    const auto ones = [](const std::vector<int>& x) {
        double s = 0.0;
        for (int v : x) s += v;
        return s;
    };
    CHECK(verify_sb(ones, ProductSpace::hypercube(4), 1.0, 0.0, false).holds);
    // self-bounding implies weakly self-bounding
    CHECK(verify_sb(ones, ProductSpace::hypercube(4), 1.0, 0.0, true).holds);

    const auto constant = [](const std::vector<int>&) { return 3.25; };
    CHECK(verify_sb(constant, ProductSpace::hypercube(3), 0.0, 0.0, false).holds);

    const auto doubled = [&ones](const std::vector<int>& x) { return 2.0 * ones(x); };
    const auto rep = verify_sb(doubled, ProductSpace::hypercube(3), 1.0, 0.0, false);
    CHECK_FALSE(rep.holds);  // increments of 2 break the [0,1] condition
}

TEST_CASE("subgraph witness on K4 with the triangle motif") {
    const auto host = EdgeGraph::complete(4);
    const auto alpha = subgraph_witness(host, GraphMotif::triangle());
    double sum = 0.0;
    for (double a : alpha) {
        CHECK(a == doctest::Approx(1.0));  // 2 copies through each edge / binom(2,1)
        sum += a;
    }
    CHECK(sum == doctest::Approx(6.0));
    // unscaled identity: sum of per-edge counts equals e_S N_S
    const auto counts = subgraph_edge_counts(host, GraphMotif::triangle());
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    CHECK(total == 3 * subgraph_count(host, GraphMotif::triangle()));
}

TEST_CASE("subgraph witness on an empty host and an embedded triangle") {
    const EdgeGraph empty(5);
    for (double a : subgraph_witness(empty, GraphMotif::triangle())) CHECK(a == 0.0);

    auto host = EdgeGraph(5);
    host.set_edge(0, 1, true);
    host.set_edge(1, 2, true);
    host.set_edge(0, 2, true);
    const auto alpha = subgraph_witness(host, GraphMotif::triangle());
    for (int s = 0; s < host.n_slots(); ++s) {
        const auto [i, j] = host.slot_pair(s);
        const bool on_triangle = i <= 2 && j <= 2;
        CHECK(alpha[static_cast<std::size_t>(s)] ==
              doctest::Approx(on_triangle ? 1.0 / 3.0 : 0.0));
    }
}

TEST_CASE("scaled triangle count verifies as (3,0)-*-self-bounding on small hosts") {
    for (int n : {3, 4}) {
        const GraphMotif motif = GraphMotif::triangle();
        const double scale = binomial(n - 2, 1);
        WitnessedFunction w;
        w.g = [n, motif, scale](const std::vector<int>& x) {
            return static_cast<double>(subgraph_count(graph_from_config(n, x), motif)) / scale;
        };
        w.alpha = [n, motif](const std::vector<int>& x) {
            return subgraph_witness(graph_from_config(n, x), motif);
        };
        w.a = 3.0;
        w.b = 0.0;
        w.variant = SelfBoundingVariant::STAR;
        ProductSpace space;
        space.alphabet_sizes.assign(static_cast<std::size_t>(n * (n - 1) / 2), 2);
        const auto rep = verify_star(w, space);
        CHECK(rep.holds);
    }
}

TEST_CASE("witness-sum identity on random graphs") {
    SplitRng rng(99, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4 + rng.uniform_int(3);
        EdgeGraph g(n);
        for (auto& e : g.edges) e = rng.bernoulli(0.5) ? 1 : 0;
        for (const auto& motif : {GraphMotif::triangle(), GraphMotif::path3()}) {
            const auto counts = subgraph_edge_counts(g, motif);
            std::int64_t total = 0;
            for (auto c : counts) total += c;
            CHECK(total == static_cast<std::int64_t>(motif.edges.size()) * subgraph_count(g, motif));
        }
    }
}

TEST_CASE("report serializes to JSON") {
    WitnessedFunction w;
    w.g = n_minus;
    w.alpha = n_minus_alpha;
    w.a = 1.0;
    w.b = 0.0;
    w.variant = SelfBoundingVariant::STAR;
    const auto rep = verify_star(w, ProductSpace::hypercube(2));
    const auto json = rep.to_json();
    CHECK(json.find("\"holds\":true") != std::string::npos);
    CHECK(json.find("checked_pairs") != std::string::npos);
}

TEST_CASE("motif larger than host is rejected") {
    const EdgeGraph host(2);
    CHECK_THROWS_AS(subgraph_witness(host, GraphMotif::triangle()), DomainError);
}
