#ifndef CONC_CONVEXDIST_HPP
#define CONC_CONVEXDIST_HPP

#include <functional>
#include <string>
#include <vector>

#include "conc/rng.hpp"
#include "conc/space.hpp"

namespace conc {

// point x and finite set S in a common product space of integer symbols
struct ConvexDistanceInstance {
    int n = 0;
    std::vector<int> x;
    std::vector<std::vector<int>> S;

    static ConvexDistanceInstance from_json(const std::string& text);
};

struct ConvexDistanceResult {
    double value = 0.0;
    std::vector<double> weights;    // optimal measure over S (simplex vector)
    std::vector<double> direction;  // optimal nonnegative unit direction c

    std::string to_csv() const;
};

// Convex distance d_T(x, S): minimum Euclidean norm over convex combinations
// of the disagreement-indicator vectors v(y)_i = 1[x_i != y_i], y in S.
// Wolfe's min-norm-point algorithm with an away-step Frank-Wolfe fallback;
// duality gap below 1e-10.
ConvexDistanceResult convex_distance(const ConvexDistanceInstance& inst);

// Independent exhaustive oracle for |S| <= 6: every subset of S is solved as
// an equality-constrained least-norm affine combination; feasible candidates
// (nonnegative weights) are compared by norm.
double convex_distance_oracle(const ConvexDistanceInstance& inst);

// d_c(x, S) = min_{y in S} sum c_i 1[x_i != y_i] for a fixed direction
double weighted_hamming_distance(const std::vector<int>& x,
                                 const std::vector<std::vector<int>>& S,
                                 const std::vector<double>& c);

struct LipschitzCheckReport {
    bool one_coord_ok = false;  // |d_T^2(x) - d_T^2(y)| <= 1 on one-coordinate pairs
    bool pair_ok = false;       // d_T^2(x) - d_T^2(y) <= sum_{x_i != y_i} alpha_i(x)
    bool budget_ok = false;     // sum alpha_i(x)^2 <= 4 d_T^2(x)
    double worst_one_coord = 0.0;
    double worst_pair_margin = 0.0;
    double worst_budget_margin = 0.0;
    bool all() const { return one_coord_ok && pair_ok && budget_ok; }
};

// Exhaustive check of the two testable facts about d_T^2 over a finite
// space: the one-coordinate Lipschitz bound and the weak-(4,0) witness
// inequality with alpha(x) = 2 d_T(x,S) c_hat(x).
LipschitzCheckReport dt_squared_lipschitz_check(const ProductSpace& space,
                                                const std::vector<std::vector<int>>& S);

// exact E[exp(rate d_T(X,S)^2)] for X with the given finite law
double exact_exp_moment(const std::vector<std::vector<int>>& points,
                        const std::vector<double>& probs,
                        const std::vector<std::vector<int>>& S, double rate);

struct ConvexExperimentReport {
    double lhs = 0.0;  // estimate of E exp(rate d_T^2)
    double lhs_ci_low = 0.0;
    double lhs_ci_high = 0.0;
    double rhs = 0.0;  // 1/mu(S)
    double rate = 0.0;
    int replicas = 0;
    bool satisfied = false;  // lhs_ci_low <= rhs

    std::string to_csv() const;
};

// Monte Carlo version: sampler draws configurations, mu_S is the known or
// estimated probability of S
ConvexExperimentReport convex_distance_experiment(
    const std::function<std::vector<int>(SplitRng&)>& sampler,
    const std::vector<std::vector<int>>& S, double mu_S, double rate, int replicas,
    std::uint64_t seed, int threads = 1);

}  // namespace conc

#endif
