#include "conc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <sstream>

#include "conc/errors.hpp"

namespace conc {

double euclidean(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

std::string PointSet::to_csv() const {
    std::string out = "x,y\n";
    char line[64];
    for (const auto& p : points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", p.x, p.y);
        out += line;
    }
    return out;
}

PointSet PointSet::from_csv(const std::string& text) {
    PointSet ps;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'x' || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("PointSet::from_csv: malformed row");
        ps.points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return ps;
}

PointSet PointSet::grid(int N) {
    if (N < 1) throw DomainError("PointSet::grid: N must be >= 1");
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(N))));
    PointSet ps;
    for (int r = 0; r < side && ps.size() < N; ++r)
        for (int c = 0; c < side && ps.size() < N; ++c)
            ps.points.push_back({(c + 0.5) / side, (r + 0.5) / side});
    return ps;
}

CostFunction CostFunction::euclidean_cost() {
    CostFunction L;
    L.evaluate = [](const Point& a, const Point& b) { return euclidean(a, b); };
    L.c_ratio = 1.0;
    L.symmetric = true;
    return L;
}

CostFunction CostFunction::scaled_asymmetric(double c_ratio, std::uint64_t salt) {
    if (c_ratio < 1.0) throw DomainError("scaled_asymmetric: c_ratio must be >= 1");
    CostFunction L;
    L.c_ratio = c_ratio;
    L.symmetric = c_ratio == 1.0;
    L.evaluate = [c_ratio, salt](const Point& a, const Point& b) {
        // deterministic stretch in [1, c_ratio] from the ordered pair of coordinates
        std::uint64_t hsh = salt ^ 0x9e3779b97f4a7c15ULL;
        for (double v : {a.x, a.y, b.x, b.y}) {
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(v));
            std::memcpy(&bits, &v, sizeof(bits));
            hsh ^= bits + 0x9e3779b97f4a7c15ULL + (hsh << 6) + (hsh >> 2);
        }
        hsh ^= hsh >> 33;
        hsh *= 0xff51afd7ed558ccdULL;
        hsh ^= hsh >> 33;
        const double u = static_cast<double>(hsh >> 11) * 0x1.0p-53;
        return euclidean(a, b) * (1.0 + (c_ratio - 1.0) * u);
    };
    return L;
}

Tour make_tour(const PointSet& ps, const CostFunction& L, std::vector<int> order) {
    const int n = ps.size();
    if (static_cast<int>(order.size()) != n) throw DimensionError("make_tour: order length mismatch");
    Tour t;
    t.order = std::move(order);
    for (int k = 0; k < n; ++k) {
        const Point& a = ps.points[static_cast<std::size_t>(t.order[static_cast<std::size_t>(k)])];
        const Point& b =
            ps.points[static_cast<std::size_t>(t.order[static_cast<std::size_t>((k + 1) % n)])];
        t.cost += L.evaluate(a, b);
        const double e = euclidean(a, b);
        t.sum_sq_euclidean += e * e;
    }
    return t;
}

std::string Tour::to_csv() const {
    std::string out = "position,point_index\n";
    char line[48];
    for (std::size_t k = 0; k < order.size(); ++k) {
        std::snprintf(line, sizeof(line), "%zu,%d\n", k, order[k]);
        out += line;
    }
    char tail[96];
    std::snprintf(tail, sizeof(tail), "# cost,%.17g\n# sum_sq_euclidean,%.17g\n", cost,
                  sum_sq_euclidean);
    out += tail;
    return out;
}

std::uint64_t hilbert_index(int depth, const Point& p) {
    const std::uint64_t side = 1ull << depth;
    auto clamp_cell = [side](double v) {
        auto c = static_cast<std::int64_t>(v * static_cast<double>(side));
        if (c < 0) c = 0;
        if (c >= static_cast<std::int64_t>(side)) c = static_cast<std::int64_t>(side) - 1;
        return static_cast<std::uint64_t>(c);
    };
    std::uint64_t x = clamp_cell(p.x);
    std::uint64_t y = clamp_cell(p.y);
    std::uint64_t rx, ry, d = 0;
    for (std::uint64_t s = side / 2; s > 0; s /= 2) {
        rx = (x & s) > 0 ? 1 : 0;
        ry = (y & s) > 0 ? 1 : 0;
        d += s * s * ((3 * rx) ^ ry);
        // rotate quadrant (reflection uses the full side)
        if (ry == 0) {
            if (rx == 1) {
                x = side - 1 - x;
                y = side - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

std::vector<int> space_filling_order(const PointSet& ps) {
    const int n = ps.size();
    if (n < 2) throw DomainError("space_filling_order: need at least 2 points");
    const int depth =
        static_cast<int>(std::ceil(std::log(static_cast<double>(n)) / std::log(4.0))) + 4;
    std::vector<std::pair<std::uint64_t, int>> keyed(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        keyed[static_cast<std::size_t>(i)] = {hilbert_index(depth, ps.points[static_cast<std::size_t>(i)]), i};
    std::stable_sort(keyed.begin(), keyed.end());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = keyed[static_cast<std::size_t>(k)].second;
    return order;
}

Tour space_filling_tour(const PointSet& ps, const CostFunction& L) {
    return make_tour(ps, L, space_filling_order(ps));
}

Tour exact_tsp(const PointSet& ps, const CostFunction& L) {
    const int n = ps.size();
    if (n < 2) throw DomainError("exact_tsp: need at least 2 points");
    if (n > 14) throw CapacityError("exact_tsp: n > 14 beyond bitmask DP scale");

    std::vector<std::vector<double>> c(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    L.evaluate(ps.points[static_cast<std::size_t>(i)],
                               ps.points[static_cast<std::size_t>(j)]);

    const int full = (1 << n) - 1;
    const double inf = std::numeric_limits<double>::infinity();
    // dp[mask][j]: cheapest path starting at 0, visiting mask, ending at j
    std::vector<std::vector<double>> dp(static_cast<std::size_t>(full) + 1,
                                        std::vector<double>(static_cast<std::size_t>(n), inf));
    std::vector<std::vector<int>> parent(static_cast<std::size_t>(full) + 1,
                                         std::vector<int>(static_cast<std::size_t>(n), -1));
    dp[1][0] = 0.0;
    for (int mask = 1; mask <= full; ++mask) {
        if (!(mask & 1)) continue;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1 << j))) continue;
            const double base = dp[static_cast<std::size_t>(mask)][static_cast<std::size_t>(j)];
            if (base == inf) continue;
            for (int k = 0; k < n; ++k) {
                if (mask & (1 << k)) continue;
                const int next = mask | (1 << k);
                const double cand =
                    base + c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (cand < dp[static_cast<std::size_t>(next)][static_cast<std::size_t>(k)]) {
                    dp[static_cast<std::size_t>(next)][static_cast<std::size_t>(k)] = cand;
                    parent[static_cast<std::size_t>(next)][static_cast<std::size_t>(k)] = j;
                }
            }
        }
    }
    double best = inf;
    int best_end = -1;
    for (int j = 1; j < n; ++j) {
        const double cand = dp[static_cast<std::size_t>(full)][static_cast<std::size_t>(j)] +
                            c[static_cast<std::size_t>(j)][0];
        if (cand < best) {
            best = cand;
            best_end = j;
        }
    }
    std::vector<int> order;
    if (n == 2) {
        order = {0, 1};
    } else {
        int mask = full, j = best_end;
        while (j >= 0) {
            order.push_back(j);
            const int pj = parent[static_cast<std::size_t>(mask)][static_cast<std::size_t>(j)];
            mask ^= 1 << j;
            j = pj;
        }
        std::reverse(order.begin(), order.end());
    }
    return make_tour(ps, L, std::move(order));
}

namespace {

double order_cost(const PointSet& ps, const CostFunction& L, const std::vector<int>& order) {
    double c = 0.0;
    const int n = static_cast<int>(order.size());
    for (int k = 0; k < n; ++k)
        c += L.evaluate(ps.points[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])],
                        ps.points[static_cast<std::size_t>(order[static_cast<std::size_t>((k + 1) % n)])]);
    return c;
}

// classic 2-opt on symmetric costs: reverse segments while improving
void two_opt(const PointSet& ps, const CostFunction& L, std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    bool improved = true;
    auto cost = [&](int a, int b) {
        return L.evaluate(ps.points[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])],
                          ps.points[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])]);
    };
    while (improved) {
        improved = false;
        for (int i = 0; i < n - 1; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;
                const int before = (i - 1 + n) % n;
                const int after = (j + 1) % n;
                const double delta =
                    cost(before, j) + cost(i, after) - cost(before, i) - cost(j, after);
                if (delta < -1e-12) {
                    std::reverse(order.begin() + i, order.begin() + j + 1);
                    improved = true;
                }
            }
        }
    }
}

// or-opt: move segments of length 1..3 elsewhere, orientation preserved
void or_opt(const PointSet& ps, const CostFunction& L, std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    bool improved = true;
    while (improved) {
        improved = false;
        double base = order_cost(ps, L, order);
        for (int len = 1; len <= 3 && len < n; ++len) {
            for (int start = 0; start < n; ++start) {
                std::vector<int> cand;
                cand.reserve(order.size());
                for (int k = 0; k < n; ++k) {
                    const int rel = (k - start + n) % n;
                    if (rel < len) continue;
                    cand.push_back(order[static_cast<std::size_t>(k)]);
                }
                std::vector<int> seg;
                for (int k = 0; k < len; ++k)
                    seg.push_back(order[static_cast<std::size_t>((start + k) % n)]);
                for (std::size_t pos = 0; pos <= cand.size(); ++pos) {
                    std::vector<int> trial;
                    trial.reserve(order.size());
                    trial.insert(trial.end(), cand.begin(), cand.begin() + static_cast<long>(pos));
                    trial.insert(trial.end(), seg.begin(), seg.end());
                    trial.insert(trial.end(), cand.begin() + static_cast<long>(pos), cand.end());
                    const double c = order_cost(ps, L, trial);
                    if (c < base - 1e-12) {
                        order = trial;
                        base = c;
                        improved = true;
                    }
                }
            }
        }
    }
}

}  // namespace

Tour heuristic_tsp(const PointSet& ps, const CostFunction& L) {
    std::vector<int> order = space_filling_order(ps);
    if (L.symmetric)
        two_opt(ps, L, order);
    else
        or_opt(ps, L, order);
    return make_tour(ps, L, std::move(order));
}

std::vector<double> tsp_witness_alpha(const PointSet& ps, const Tour& t, const CostFunction& L) {
    const int n = ps.size();
    std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        const int prev = t.order[static_cast<std::size_t>((k - 1 + n) % n)];
        const int cur = t.order[static_cast<std::size_t>(k)];
        const int next = t.order[static_cast<std::size_t>((k + 1) % n)];
        alpha[static_cast<std::size_t>(cur)] =
            2.0 * (L.evaluate(ps.points[static_cast<std::size_t>(prev)],
                              ps.points[static_cast<std::size_t>(cur)]) +
                   L.evaluate(ps.points[static_cast<std::size_t>(cur)],
                              ps.points[static_cast<std::size_t>(next)]));
    }
    return alpha;
}

SpanningTree mst(const PointSet& ps) {
    const int n = ps.size();
    if (n < 2) throw DomainError("mst: need at least 2 points");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (ps.points[static_cast<std::size_t>(i)].x == ps.points[static_cast<std::size_t>(j)].x &&
                ps.points[static_cast<std::size_t>(i)].y == ps.points[static_cast<std::size_t>(j)].y)
                throw DomainError("mst: duplicate points");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(n), inf);
    std::vector<int> from(static_cast<std::size_t>(n), -1);
    std::vector<bool> in_tree(static_cast<std::size_t>(n), false);
    dist[0] = 0.0;
    SpanningTree tree;
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (int round = 0; round < n; ++round) {
        int v = -1;
        for (int i = 0; i < n; ++i) {
            if (in_tree[static_cast<std::size_t>(i)]) continue;
            if (v < 0 || dist[static_cast<std::size_t>(i)] < dist[static_cast<std::size_t>(v)]) v = i;
        }
        in_tree[static_cast<std::size_t>(v)] = true;
        if (from[static_cast<std::size_t>(v)] >= 0) {
            const int u = from[static_cast<std::size_t>(v)];
            tree.edges.emplace_back(std::min(u, v), std::max(u, v));
            tree.edge_lengths.push_back(dist[static_cast<std::size_t>(v)]);
            tree.total_length += dist[static_cast<std::size_t>(v)];
            ++degree[static_cast<std::size_t>(u)];
            ++degree[static_cast<std::size_t>(v)];
        }
        for (int i = 0; i < n; ++i) {
            if (in_tree[static_cast<std::size_t>(i)]) continue;
            const double d = euclidean(ps.points[static_cast<std::size_t>(v)],
                                       ps.points[static_cast<std::size_t>(i)]);
            if (d < dist[static_cast<std::size_t>(i)]) {
                dist[static_cast<std::size_t>(i)] = d;
                from[static_cast<std::size_t>(i)] = v;
            }
        }
    }
    tree.max_degree = *std::max_element(degree.begin(), degree.end());
    return tree;
}

std::string SpanningTree::to_csv() const {
    std::string out = "u,v,length\n";
    char line[96];
    for (std::size_t k = 0; k < edges.size(); ++k) {
        std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", edges[k].first, edges[k].second,
                      edge_lengths[k]);
        out += line;
    }
    char tail[96];
    std::snprintf(tail, sizeof(tail), "# total_length,%.17g\n# max_degree,%d\n", total_length,
                  max_degree);
    out += tail;
    return out;
}

std::vector<double> mst_witness_alpha(const PointSet& ps, const SpanningTree& t) {
    std::vector<double> incident(static_cast<std::size_t>(ps.size()), 0.0);
    for (std::size_t k = 0; k < t.edges.size(); ++k) {
        incident[static_cast<std::size_t>(t.edges[k].first)] += t.edge_lengths[k];
        incident[static_cast<std::size_t>(t.edges[k].second)] += t.edge_lengths[k];
    }
    for (double& v : incident) v *= 2.0;
    return incident;
}

MstInvariantReport mst_invariant_check(const PointSet& ps, const SpanningTree& t) {
    MstInvariantReport r;
    for (double e : t.edge_lengths) r.sum_sq_edges += e * e;
    r.max_degree = t.max_degree;
    for (double a : mst_witness_alpha(ps, t)) r.sum_alpha_sq += a * a;
    r.sum_sq_ok = r.sum_sq_edges <= 410.0;
    r.degree_ok = r.max_degree <= 6;
    r.alpha_ok = r.sum_alpha_sq <= 19680.0;
    return r;
}

double steiner_upper(const PointSet& ps) { return mst(ps).total_length; }

}  // namespace conc
