#ifndef CONC_MODELS_HPP
#define CONC_MODELS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "conc/dobrushin.hpp"
#include "conc/finite_dist.hpp"
#include "conc/graphs.hpp"
#include "conc/rng.hpp"

namespace conc {

// ---------------------------------------------------------------- Curie-Weiss

struct SpinConfiguration {
    int n = 0;
    std::vector<std::int8_t> spins;  // entries in {-1,+1}

    static SpinConfiguration all_up(int n) { return {n, std::vector<std::int8_t>(n, +1)}; }
    static SpinConfiguration all_down(int n) { return {n, std::vector<std::int8_t>(n, -1)}; }

    int spin_sum() const {
        int s = 0;
        for (auto v : spins) s += v;
        return s;
    }
    double magnetization() const { return static_cast<double>(spin_sum()) / n; }
};

// probability the resampled spin is +1 given t = beta * m_i(x) + h
double cw_flip_prob(double t);

// single Glauber update: uniform coordinate resampled from the conditional
// sigmoid of beta * m_i(x) + h with m_i(x) = (1/n) sum_{j != i} x_j
void cw_glauber_step(SpinConfiguration& state, double beta, double h, SplitRng& rng);

// exact law of the spin sum k = sum sigma_i on {-n, -n+2, ..., n};
// P(k) proportional to binom(n, (n+k)/2) exp((beta/(2n))(k^2 - n) + h k),
// accumulated in log space
struct MagnetizationLaw {
    int n = 0;
    FiniteDistribution dist;  // index j corresponds to k = 2j - n

    double spin_sum_at(int index) const { return 2.0 * index - n; }
    double mean_spin_sum() const;
    double mean_magnetization() const { return mean_spin_sum() / n; }
    // P(m >= v) and P(m <= v), boundary lattice points included
    double prob_m_ge(double v) const;
    double prob_m_le(double v) const;
    // inverse-cdf sample of the magnetization
    double sample_m(SplitRng& rng) const;
};
MagnetizationLaw cw_exact_magnetization_law(int n, double beta, double h);

// conditional-law view of the same model, for Dobrushin computations and
// coupled chains; symbol 0 encodes spin -1, symbol 1 encodes spin +1
ConditionalModel cw_conditional_model(int n, double beta, double h);

// ------------------------------------------------------ exponential random graphs

// Gibbs model on edge indicators given by the conditional log-odds of each
// slot; covers the whole exponential family since the conditional only needs
// the sufficient-statistic deltas for one flipped edge.
struct ErgmModel {
    int n_vertices = 0;
    std::function<double(const EdgeGraph&, int)> log_odds;

    // density proportional to exp(2 b1 E + (6 b2 / n) Delta): log-odds of an
    // edge is 2 b1 + (6 b2 / n) * (common neighbors of its endpoints)
    static ErgmModel edge_triangle(int n_vertices, double beta1, double beta2);
};

double ergm_conditional_prob(const EdgeGraph& g, int slot, double beta1, double beta2);
// resample a uniformly chosen slot from its exact conditional
void ergm_glauber_step(EdgeGraph& g, double beta1, double beta2, SplitRng& rng);
void general_ergm_glauber_step(EdgeGraph& g, const ErgmModel& model, SplitRng& rng);

ConditionalModel ergm_conditional_model(int n_vertices, double beta1, double beta2);

// ------------------------------------------------- sampling without replacement

struct IndexSample {
    int N = 0;
    std::vector<int> indices;  // ordered, distinct, values in [0, N)
};

enum class SwrVariant { Sequential, ExponentialClocks };

// weighted sampling without replacement: sequentially by renormalized
// weights, or equivalently by the n smallest independent exponential clocks
IndexSample weighted_swr_sample(const FiniteDistribution& p, int n, SplitRng& rng,
                                SwrVariant variant = SwrVariant::Sequential);

// exact unordered subset law (mask -> probability) by enumerating all ordered
// prefixes; desk scale N <= 16
std::vector<std::pair<std::uint32_t, double>> swr_exact_subset_law(const FiniteDistribution& p,
                                                                   int n);

// -------------------------------------------------------- coupled Glauber chains

struct CoupledChainState {
    std::vector<int> x;
    std::vector<int> y;
    std::vector<std::uint8_t> disagreement;  // 1 where x and y differ
    int step = 0;

    int disagreement_count() const {
        int c = 0;
        for (auto v : disagreement) c += v;
        return c;
    }
};

// One transition of the coupled pair: pick a uniform coordinate I, draw the
// disagreement proposal xi (xi = e_i with probability a_{I,i}), set
// chi = <xi, L>, and resample coordinate I of both chains through the
// mixture coupling with budget q = sum_i a_{I,i} L_i. Throws
// InfeasibilityError when q falls below the conditional total variation,
// i.e. when A is not a valid interdependence matrix for the model.
void coupled_glauber_step(CoupledChainState& state, const ConditionalModel& model,
                          const InterdependenceMatrix& A, SplitRng& rng);

// full trajectory including the initial state (steps + 1 entries)
std::vector<CoupledChainState> coupled_glauber_run(const ConditionalModel& model,
                                                   const InterdependenceMatrix& A,
                                                   const std::vector<int>& x0,
                                                   const std::vector<int>& y0, int steps,
                                                   SplitRng& rng);

// ||L(k)||_1 per step without storing the trajectory
std::vector<int> coupled_disagreement_curve(const ConditionalModel& model,
                                            const InterdependenceMatrix& A,
                                            const std::vector<int>& x0,
                                            const std::vector<int>& y0, int steps, SplitRng& rng);

}  // namespace conc

#endif
