#include "conc/dobrushin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

#include "conc/errors.hpp"
#include "conc/graphs.hpp"
#include "conc/parallel.hpp"

namespace conc {

namespace {

constexpr std::int64_t kEvalBudget = 10'000'000;

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// iterate over all assignments of the coordinates listed in `coords`
// (variable radix counter); x holds the full configuration
template <class Visit>
void enumerate_assignments(std::vector<int>& x, const std::vector<int>& coords,
                           const std::vector<int>& sizes, Visit&& visit) {
    for (int c : coords) x[static_cast<std::size_t>(c)] = 0;
    while (true) {
        visit();
        int pos = static_cast<int>(coords.size()) - 1;
        while (pos >= 0) {
            const int c = coords[static_cast<std::size_t>(pos)];
            if (++x[static_cast<std::size_t>(c)] < sizes[static_cast<std::size_t>(c)]) break;
            x[static_cast<std::size_t>(c)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

}  // namespace

double matrix_norm_1(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i][j]);
        best = std::max(best, s);
    }
    return best;
}

double matrix_norm_inf(const std::vector<std::vector<double>>& a) {
    double best = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (double v : row) s += std::fabs(v);
        best = std::max(best, s);
    }
    return best;
}

double matrix_norm_2(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    // power iteration on A^T A
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> av(n), atav(n);
    double lambda = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
            av[i] = s;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += a[i][j] * av[i];
            atav[j] = s;
        }
        double norm = 0.0;
        for (double x : atav) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        const double next = norm;
        for (std::size_t j = 0; j < n; ++j) v[j] = atav[j] / norm;
        if (std::fabs(next - lambda) <= 1e-10 * std::max(1.0, next)) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

InterdependenceMatrix InterdependenceMatrix::from_entries(
    std::vector<std::vector<double>> entries) {
    const int n = static_cast<int>(entries.size());
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(entries[static_cast<std::size_t>(i)].size()) != n)
            throw DimensionError("InterdependenceMatrix: not square");
        if (entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 0.0)
            throw DomainError("InterdependenceMatrix: nonzero diagonal");
        for (double v : entries[static_cast<std::size_t>(i)])
            if (v < 0.0) throw DomainError("InterdependenceMatrix: negative entry");
    }
    InterdependenceMatrix m;
    m.n = n;
    m.norm_1 = matrix_norm_1(entries);
    m.norm_inf = matrix_norm_inf(entries);
    m.norm_2 = matrix_norm_2(entries);
    m.entries = std::move(entries);
    return m;
}

std::string InterdependenceMatrix::to_csv() const {
    char head[160];
    std::snprintf(head, sizeof(head), "n,norm1,norminf,norm2\n%d,%.17g,%.17g,%.17g\n", n, norm_1,
                  norm_inf, norm_2);
    std::string out(head);
    char cell[40];
    for (const auto& row : entries) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            std::snprintf(cell, sizeof(cell), "%.17g", row[j]);
            out += cell;
            out += (j + 1 == row.size()) ? '\n' : ',';
        }
    }
    return out;
}

InterdependenceMatrix exact_matrix(const ConditionalModel& model, int threads) {
    const int n = model.n;
    if (n < 1 || static_cast<int>(model.alphabet_sizes.size()) != n)
        throw DimensionError("exact_matrix: inconsistent model dimensions");
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::atomic<std::int64_t> evals{0};

    // each (i,j) cell is an independent supremum; parallel over cells
    const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    parallel_for(cells, threads, [&](std::size_t cell) {
        const int i = static_cast<int>(cell) / n;
        const int j = static_cast<int>(cell) % n;
        if (i == j) return;
        std::vector<int> others;
        for (int k = 0; k < n; ++k)
            if (k != i && k != j) others.push_back(k);
        std::vector<int> x(static_cast<std::size_t>(n), 0);
        const int mj = model.alphabet_sizes[static_cast<std::size_t>(j)];
        std::vector<std::optional<FiniteDistribution>> conds(static_cast<std::size_t>(mj));
        double sup = 0.0;
        enumerate_assignments(x, others, model.alphabet_sizes, [&] {
            for (int vj = 0; vj < mj; ++vj) {
                x[static_cast<std::size_t>(j)] = vj;
                if (model.support && !model.support(i, x)) {
                    conds[static_cast<std::size_t>(vj)] = std::nullopt;
                    continue;
                }
                if (evals.fetch_add(1, std::memory_order_relaxed) >= kEvalBudget)
                    throw CapacityError("exact_matrix: conditional evaluation budget exceeded");
                conds[static_cast<std::size_t>(vj)] = model.conditional(i, x);
            }
            for (int u = 0; u < mj; ++u) {
                if (!conds[static_cast<std::size_t>(u)]) continue;
                for (int v = u + 1; v < mj; ++v) {
                    if (!conds[static_cast<std::size_t>(v)]) continue;
                    sup = std::max(sup, tv_distance(*conds[static_cast<std::size_t>(u)],
                                                    *conds[static_cast<std::size_t>(v)]));
                }
            }
        });
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = sup;
    });
    return InterdependenceMatrix::from_entries(std::move(a));
}

InterdependenceMatrix curie_weiss_matrix(int n, double beta) {
    if (n < 2) throw DomainError("curie_weiss_matrix: n must be >= 2");
    if (beta < 0.0) throw DomainError("curie_weiss_matrix: beta must be nonnegative");
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), beta / n));
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
    return InterdependenceMatrix::from_entries(std::move(a));
}

InterdependenceMatrix ergm_edge_triangle_matrix(int n_vertices, double beta1, double beta2) {
    if (n_vertices < 2) throw DomainError("ergm_edge_triangle_matrix: need >= 2 vertices");
    const EdgeGraph proto(n_vertices);
    const int m = proto.n_slots();
    // flipping a slot that shares vertex v with (i,j) changes the common
    // neighbor count by one exactly when the closing third edge is present;
    // remaining common neighbors range over 0..n-3
    const double tau = n_vertices > 0 ? 6.0 * beta2 / n_vertices : 0.0;
    double delta = 0.0;
    for (int c = 0; c + 3 <= n_vertices; ++c)
        delta = std::max(delta, std::fabs(sigmoid(2.0 * beta1 + tau * (c + 1)) -
                                          sigmoid(2.0 * beta1 + tau * c)));
    std::vector<std::vector<double>> a(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int e = 0; e < m; ++e) {
        const auto [i, j] = proto.slot_pair(e);
        for (int f = 0; f < m; ++f) {
            if (e == f) continue;
            const auto [u, v] = proto.slot_pair(f);
            const int shared = (u == i || u == j) + (v == i || v == j);
            if (shared == 1)
                a[static_cast<std::size_t>(e)][static_cast<std::size_t>(f)] = delta;
        }
    }
    return InterdependenceMatrix::from_entries(std::move(a));
}

SubsetLaw SubsetLaw::uniform(int N, int n) {
    SubsetLaw law;
    law.N = N;
    law.n = n;
    law.weight = [](std::uint32_t) { return 1.0; };
    return law;
}

namespace {

// visit all masks over [N] with exactly k bits set
template <class Visit>
void for_each_mask(int N, int k, Visit&& visit) {
    if (k == 0) {
        visit(std::uint32_t{0});
        return;
    }
    if (k > N) return;
    std::uint32_t mask = (1u << k) - 1u;
    const std::uint32_t limit = 1u << N;
    while (mask < limit) {
        visit(mask);
        const std::uint32_t c = mask & (0u - mask);
        const std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
        if (c == 0) break;
    }
}

}  // namespace

Inhomogeneity inhomogeneity_exact(const SubsetLaw& law) {
    const int N = law.N;
    const int n = law.n;
    if (N < 1 || n < 1 || n > N) throw DomainError("inhomogeneity_exact: need 1 <= n <= N");
    if (N > 24) throw CapacityError("inhomogeneity_exact: N too large for enumeration");

    Inhomogeneity out;
    // r1: prefixes of size n-1, extended by one element
    for_each_mask(N, n - 1, [&](std::uint32_t b) {
        double denom = 0.0;
        std::vector<double> numer;
        for (int e = 0; e < N; ++e) {
            if (b & (1u << e)) continue;
            const double w = law.weight(b | (1u << e));
            if (w < 0.0) throw DomainError("inhomogeneity_exact: negative weight");
            numer.push_back(w);
            denom += w;
        }
        if (denom <= 0.0)
            throw DegenerateLawError("inhomogeneity_exact: conditioning set has zero weight");
        for (double w : numer) out.r1 = std::max(out.r1, w / denom);
    });

    // r2: prefixes of size n-2, two competing next elements b,c, probe d
    if (n >= 2) {
        for_each_mask(N, n - 2, [&](std::uint32_t base) {
            std::vector<int> free;
            for (int e = 0; e < N; ++e)
                if (!(base & (1u << e))) free.push_back(e);
            // conditional ratio of picking d after prefix (base, b)
            std::vector<std::vector<double>> ratio(free.size(),
                                                   std::vector<double>(free.size(), 0.0));
            for (std::size_t bi = 0; bi < free.size(); ++bi) {
                const std::uint32_t with_b = base | (1u << free[bi]);
                double denom = 0.0;
                for (std::size_t di = 0; di < free.size(); ++di) {
                    if (di == bi) continue;
                    ratio[bi][di] = law.weight(with_b | (1u << free[di]));
                    denom += ratio[bi][di];
                }
                if (denom <= 0.0)
                    throw DegenerateLawError(
                        "inhomogeneity_exact: conditioning set has zero weight");
                for (std::size_t di = 0; di < free.size(); ++di) ratio[bi][di] /= denom;
            }
            for (std::size_t bi = 0; bi < free.size(); ++bi)
                for (std::size_t ci = 0; ci < free.size(); ++ci) {
                    if (bi == ci) continue;
                    for (std::size_t di = 0; di < free.size(); ++di) {
                        if (di == bi || di == ci) continue;
                        out.r2 = std::max(out.r2, std::fabs(ratio[bi][di] - ratio[ci][di]));
                    }
                }
        });
    }
    out.rho = n * (out.r1 + (N - n) * out.r2);
    return out;
}

double weighted_swr_rho_bound(double p_max, double p_min, int n, int N) {
    if (!(p_min > 0.0) || p_max < p_min)
        throw DomainError("weighted_swr_rho_bound: need 0 < p_min <= p_max");
    if (n >= N) throw DomainError("weighted_swr_rho_bound: need n < N");
    if (n < 0) throw DomainError("weighted_swr_rho_bound: need n >= 0");
    const double r = p_max / p_min;
    return 0.5 * (r + r * r) * static_cast<double>(n) / static_cast<double>(N - n);
}

double swr_lemma_matrix_bound(const SubsetLaw& law) { return inhomogeneity_exact(law).rho; }

ConditionalModel swr_coordinate_model(const SubsetLaw& law) {
    ConditionalModel model;
    model.n = law.n;
    model.alphabet_sizes.assign(static_cast<std::size_t>(law.n), law.N);
    const int N = law.N;
    const auto weight = law.weight;
    const int n = law.n;
    model.support = [n, N](int i, const std::vector<int>& x) {
        std::uint32_t seen = 0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            const std::uint32_t bit = 1u << x[static_cast<std::size_t>(k)];
            if (seen & bit) return false;
            seen |= bit;
        }
        return true;
    };
    model.conditional = [n, N, weight](int i, const std::vector<int>& x)
        -> std::optional<FiniteDistribution> {
        std::uint32_t mask = 0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            const std::uint32_t bit = 1u << x[static_cast<std::size_t>(k)];
            if (mask & bit) return std::nullopt;
            mask |= bit;
        }
        std::vector<double> w(static_cast<std::size_t>(N), 0.0);
        double total = 0.0;
        for (int d = 0; d < N; ++d) {
            if (mask & (1u << d)) continue;
            const double v = weight(mask | (1u << d));
            w[static_cast<std::size_t>(d)] = v;
            total += v;
        }
        if (total <= 0.0) return std::nullopt;
        return FiniteDistribution::from_weights(w);
    };
    return model;
}

ConditionalModel independent_model(const std::vector<FiniteDistribution>& laws) {
    ConditionalModel model;
    model.n = static_cast<int>(laws.size());
    for (const auto& law : laws) model.alphabet_sizes.push_back(law.support_size());
    model.conditional = [laws](int i, const std::vector<int>&)
        -> std::optional<FiniteDistribution> { return laws[static_cast<std::size_t>(i)]; };
    return model;
}

}  // namespace conc
