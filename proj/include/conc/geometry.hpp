#ifndef CONC_GEOMETRY_HPP
#define CONC_GEOMETRY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conc {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double euclidean(const Point& a, const Point& b);

// points in the unit square
struct PointSet {
    std::vector<Point> points;

    int size() const { return static_cast<int>(points.size()); }
    std::string to_csv() const;
    static PointSet from_csv(const std::string& text);
    // the N grid points closest to a regular lattice filling [0,1]^2
    static PointSet grid(int N);
};

// cost function sandwiched between the Euclidean distance and c_ratio times
// it; need not be symmetric
struct CostFunction {
    std::function<double(const Point&, const Point&)> evaluate;
    double c_ratio = 1.0;
    bool symmetric = true;

    static CostFunction euclidean_cost();
    // deterministic pseudo-random stretch in [1, c_ratio] per ordered pair
    static CostFunction scaled_asymmetric(double c_ratio, std::uint64_t salt);
};

struct Tour {
    std::vector<int> order;  // permutation of point indices
    double cost = 0.0;       // sum of L over consecutive pairs, wraparound included
    double sum_sq_euclidean = 0.0;

    std::string to_csv() const;
};

Tour make_tour(const PointSet& ps, const CostFunction& L, std::vector<int> order);

// index of the cell containing p on the 2^depth x 2^depth Hilbert curve
std::uint64_t hilbert_index(int depth, const Point& p);

// visiting order along a Hilbert curve of depth ceil(log4 n) + 4; targets
// sum of squared Euclidean edge lengths <= 4 (measured, not asserted)
std::vector<int> space_filling_order(const PointSet& ps);
Tour space_filling_tour(const PointSet& ps, const CostFunction& L = CostFunction::euclidean_cost());

// optimal tour under L (asymmetric supported) by bitmask dynamic
// programming; n <= 14
Tour exact_tsp(const PointSet& ps, const CostFunction& L);

// space-filling start improved to local optimality: 2-opt for symmetric L,
// segment reinsertion (or-opt) otherwise
Tour heuristic_tsp(const PointSet& ps, const CostFunction& L);

// per-point witnesses on a tour: twice the incident directed edge costs,
// alpha_i = 2 [L(prev, x_i) + L(x_i, next)]
std::vector<double> tsp_witness_alpha(const PointSet& ps, const Tour& t, const CostFunction& L);

struct SpanningTree {
    std::vector<std::pair<int, int>> edges;  // n-1 pairs (i, j), i < j
    double total_length = 0.0;
    std::vector<double> edge_lengths;
    int max_degree = 0;

    std::string to_csv() const;
};

// Euclidean minimum spanning tree (dense Prim, lexicographic tie-break);
// duplicate points rejected
SpanningTree mst(const PointSet& ps);

struct MstInvariantReport {
    double sum_sq_edges = 0.0;      // <= 410 for points in the unit square
    int max_degree = 0;             // <= 6
    double sum_alpha_sq = 0.0;      // sum over vertices of (2 * incident length)^2 <= 19680
    bool sum_sq_ok = false;
    bool degree_ok = false;
    bool alpha_ok = false;
    bool all() const { return sum_sq_ok && degree_ok && alpha_ok; }
};
MstInvariantReport mst_invariant_check(const PointSet& ps, const SpanningTree& t);

// twice the incident MST edge lengths per vertex (the Steiner witness)
std::vector<double> mst_witness_alpha(const PointSet& ps, const SpanningTree& t);

// MST total length, a certified upper bound for the minimal Steiner tree
double steiner_upper(const PointSet& ps);

}  // namespace conc

#endif
