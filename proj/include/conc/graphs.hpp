#ifndef CONC_GRAPHS_HPP
#define CONC_GRAPHS_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace conc {

// Simple undirected graph as a 0/1 edge-indicator vector over the
// n(n-1)/2 vertex pairs in upper-triangle order:
// (0,1),(0,2),...,(0,n-1),(1,2),...
struct EdgeGraph {
    int n_vertices = 0;
    std::vector<std::uint8_t> edges;

    explicit EdgeGraph(int n)
        : n_vertices(n), edges(static_cast<std::size_t>(n) * (n - 1) / 2, 0) {}

    int n_slots() const { return static_cast<int>(edges.size()); }

    int slot(int i, int j) const {
        if (i > j) std::swap(i, j);
        return i * n_vertices - i * (i + 1) / 2 + (j - i - 1);
    }
    std::pair<int, int> slot_pair(int s) const;

    bool has_edge(int i, int j) const { return edges[static_cast<std::size_t>(slot(i, j))] != 0; }
    void set_edge(int i, int j, bool present) {
        edges[static_cast<std::size_t>(slot(i, j))] = present ? 1 : 0;
    }

    int common_neighbors(int i, int j) const;
    int edge_count() const;
    int triangle_count() const;

    static EdgeGraph complete(int n);
    static EdgeGraph from_edge_list(int n, const std::vector<std::pair<int, int>>& list);
};

// Motif with n_S >= 2 vertices and e_S >= 1 edges, vertices labelled 0..n_S-1.
struct GraphMotif {
    int n_vertices = 0;
    std::vector<std::pair<int, int>> edges;

    static GraphMotif triangle() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }
    static GraphMotif single_edge() { return {2, {{0, 1}}}; }
    static GraphMotif path3() { return {3, {{0, 1}, {1, 2}}}; }
};

// Number of vertex subsets of size n_S whose induced subgraph contains a
// copy of the motif (monotone in the edge set).
std::int64_t subgraph_count(const EdgeGraph& g, const GraphMotif& motif);

// Per-slot copy counts through each edge, using one canonical embedding per
// counted subset (the first vertex permutation, in lexicographic order, that
// realizes the motif). Summing over slots gives exactly e_S * N_S(g).
std::vector<std::int64_t> subgraph_edge_counts(const EdgeGraph& g, const GraphMotif& motif);

}  // namespace conc

#endif
