#include "conc/graphs.hpp"

#include <algorithm>

#include "conc/errors.hpp"

namespace conc {

std::pair<int, int> EdgeGraph::slot_pair(int s) const {
    int i = 0;
    int offset = n_vertices - 1;
    while (s >= offset) {
        s -= offset;
        ++i;
        --offset;
    }
    return {i, i + 1 + s};
}

int EdgeGraph::common_neighbors(int i, int j) const {
    int c = 0;
    for (int k = 0; k < n_vertices; ++k) {
        if (k == i || k == j) continue;
        if (has_edge(i, k) && has_edge(j, k)) ++c;
    }
    return c;
}

int EdgeGraph::edge_count() const {
    int c = 0;
    for (auto e : edges) c += e;
    return c;
}

int EdgeGraph::triangle_count() const {
    int c = 0;
    for (int i = 0; i < n_vertices; ++i)
        for (int j = i + 1; j < n_vertices; ++j) {
            if (!has_edge(i, j)) continue;
            for (int k = j + 1; k < n_vertices; ++k)
                if (has_edge(i, k) && has_edge(j, k)) ++c;
        }
    return c;
}

EdgeGraph EdgeGraph::complete(int n) {
    EdgeGraph g(n);
    std::fill(g.edges.begin(), g.edges.end(), static_cast<std::uint8_t>(1));
    return g;
}

EdgeGraph EdgeGraph::from_edge_list(int n, const std::vector<std::pair<int, int>>& list) {
    EdgeGraph g(n);
    for (auto [i, j] : list) g.set_edge(i, j, true);
    return g;
}

namespace {

void validate_motif(const EdgeGraph& g, const GraphMotif& motif) {
    if (motif.n_vertices < 2 || motif.edges.empty())
        throw DomainError("motif must have >= 2 vertices and >= 1 edge");
    if (motif.n_vertices > g.n_vertices) throw DomainError("motif larger than host graph");
}

// first permutation of `subset` (lex order over the arrangement) embedding
// the motif; returns false if none exists
bool canonical_embedding(const EdgeGraph& g, const GraphMotif& motif, std::vector<int>& subset) {
    std::sort(subset.begin(), subset.end());
    do {
        bool ok = true;
        for (auto [a, b] : motif.edges) {
            if (!g.has_edge(subset[static_cast<std::size_t>(a)],
                            subset[static_cast<std::size_t>(b)])) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(subset.begin(), subset.end()));
    std::sort(subset.begin(), subset.end());
    return false;
}

template <class Visit>
void for_each_subset(int n, int k, Visit&& visit) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        visit(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int p = pos + 1; p < k; ++p)
            idx[static_cast<std::size_t>(p)] = idx[static_cast<std::size_t>(p - 1)] + 1;
    }
}

}  // namespace

std::int64_t subgraph_count(const EdgeGraph& g, const GraphMotif& motif) {
    validate_motif(g, motif);
    std::int64_t count = 0;
    for_each_subset(g.n_vertices, motif.n_vertices, [&](const std::vector<int>& subset) {
        std::vector<int> s = subset;
        if (canonical_embedding(g, motif, s)) ++count;
    });
    return count;
}

std::vector<std::int64_t> subgraph_edge_counts(const EdgeGraph& g, const GraphMotif& motif) {
    validate_motif(g, motif);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(g.n_slots()), 0);
    for_each_subset(g.n_vertices, motif.n_vertices, [&](const std::vector<int>& subset) {
        std::vector<int> s = subset;
        if (!canonical_embedding(g, motif, s)) return;
        for (auto [a, b] : motif.edges) {
            const int slot = g.slot(s[static_cast<std::size_t>(a)], s[static_cast<std::size_t>(b)]);
            ++counts[static_cast<std::size_t>(slot)];
        }
    });
    return counts;
}

}  // namespace conc
