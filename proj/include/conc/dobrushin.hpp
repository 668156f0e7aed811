#ifndef CONC_DOBRUSHIN_HPP
#define CONC_DOBRUSHIN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conc/finite_dist.hpp"

namespace conc {

// Nonnegative matrix with zero diagonal, together with its operator norms.
// Entry (i,j) bounds the total-variation shift of coordinate i's conditional
// law when coordinate j changes.
struct InterdependenceMatrix {
    int n = 0;
    std::vector<std::vector<double>> entries;
    double norm_1 = 0.0;
    double norm_inf = 0.0;
    double norm_2 = 0.0;

    static InterdependenceMatrix from_entries(std::vector<std::vector<double>> entries);

    double entry(int i, int j) const {
        return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    std::string to_csv() const;
};

double matrix_norm_1(const std::vector<std::vector<double>>& a);
double matrix_norm_inf(const std::vector<std::vector<double>>& a);
// largest singular value, power iteration on A^T A to 1e-10 relative tolerance
double matrix_norm_2(const std::vector<std::vector<double>>& a);

// Finite product-space model given by its single-coordinate conditionals.
// conditional(i, x) returns the law of coordinate i given the others (x[i]
// is ignored); nullopt signals a zero-probability conditioning event, which
// suprema skip. `support`, when set, is a cheap pre-filter for the same.
struct ConditionalModel {
    int n = 0;
    std::vector<int> alphabet_sizes;
    std::function<std::optional<FiniteDistribution>(int, const std::vector<int>&)> conditional;
    std::function<bool(int, const std::vector<int>&)> support;  // optional
};

// Minimal matrix satisfying the defining inequality for single-coordinate
// discrepancies: a_ij = sup over pairs x_{-i}, y_{-i} differing only at j of
// d_TV of the two conditionals. Desk scale: throws CapacityError beyond 1e7
// conditional evaluations.
InterdependenceMatrix exact_matrix(const ConditionalModel& model, int threads = 1);

// a_ij = beta/n off the diagonal; norms equal beta(1 - 1/n) < beta.
InterdependenceMatrix curie_weiss_matrix(int n, double beta);

// Dobrushin matrix of the two-parameter edge/triangle exponential random
// graph on n vertices (density proportional to exp(2 b1 E + (6 b2 / n) D)).
// Each pair of edge slots sharing exactly one vertex gets the maximal
// sigmoid increment over achievable common-neighbor counts; disjoint slots
// are independent. Exact: the conditional of an edge depends on the rest of
// the graph only through the common neighbors of its endpoints.
InterdependenceMatrix ergm_edge_triangle_matrix(int n_vertices, double beta1, double beta2);

// Law of a random size-n subset of [N], subsets encoded as bitmasks.
struct SubsetLaw {
    int N = 0;
    int n = 0;
    std::function<double(std::uint32_t)> weight;

    static SubsetLaw uniform(int N, int n);
};

struct Inhomogeneity {
    double r1 = 0.0;
    double r2 = 0.0;
    double rho = 0.0;  // n (r1 + (N - n) r2)
};

// r1, r2 by exhaustive enumeration of the defining suprema over conditioning
// prefixes; rho = n (r1 + (N-n) r2). Throws DegenerateLawError when some
// conditioning set has zero total weight.
Inhomogeneity inhomogeneity_exact(const SubsetLaw& law);

// rho bound for weighted sampling without replacement:
// (1/2)(r + r^2) n/(N-n) with r = p_max/p_min.
double weighted_swr_rho_bound(double p_max, double p_min, int n, int N);

// rho of the law; tests pair it with exact_matrix on the exchangeable
// coordinate model and assert both norms stay below it.
double swr_lemma_matrix_bound(const SubsetLaw& law);

// Exchangeable coordinate representation: P(X_1=a_1,...,X_n=a_n) is the
// subset weight of {a_1,...,a_n} divided by n! (zero unless all distinct).
ConditionalModel swr_coordinate_model(const SubsetLaw& law);

// model of n mutually independent coordinates with the given laws
ConditionalModel independent_model(const std::vector<FiniteDistribution>& laws);

}  // namespace conc

#endif
