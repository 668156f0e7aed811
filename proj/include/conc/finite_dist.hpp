#ifndef CONC_FINITE_DIST_HPP
#define CONC_FINITE_DIST_HPP

#include <cstddef>
#include <vector>

#include "conc/errors.hpp"
#include "conc/rational.hpp"

namespace conc {

// Probability vector over a finite alphabet. Entries are >= 0 and sum to 1
// within 1e-12; construction validates both.
class FiniteDistribution {
public:
    explicit FiniteDistribution(std::vector<double> probs);

    // normalizes nonnegative weights with positive total
    static FiniteDistribution from_weights(const std::vector<double>& weights);

    int support_size() const { return static_cast<int>(probs_.size()); }
    double prob(int i) const { return probs_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& probs() const { return probs_; }

private:
    std::vector<double> probs_;
};

// d_TV(p, q) = (1/2) sum |p_i - q_i|; coincides with the event-supremum
// definition on finite supports.
double tv_distance(const FiniteDistribution& p, const FiniteDistribution& q);

// Joint table of a coupling (X, Y) with X ~ mu1 (rows), Y ~ mu2 (columns)
// and P(X != Y) <= q.
struct CouplingTable {
    std::vector<std::vector<double>> joint;
    double q = 0.0;

    double off_diagonal_mass() const;
    std::vector<double> row_marginal() const;
    std::vector<double> col_marginal() const;
};

// Mixture coupling with disagreement budget q: with probability 1-q both
// draws equal a shared B ~ min(p1,p2)/(1-TV); otherwise X ~ mu_C and
// Y ~ mu_D are drawn independently, where
//   mu_C = (p1 - min(p1,p2) (1-q)/(1-TV)) / q,   mu_D symmetrically for p2.
// Requires TV(p1,p2) <= q <= 1. With q = TV this is the maximal coupling;
// with q = 1 it degenerates to the product coupling.
CouplingTable build_coupling(const FiniteDistribution& p, const FiniteDistribution& q_dist,
                             double q);

// Per-component densities of the same construction, for samplers that draw
// chi/B/C/D directly instead of materializing the joint table.
struct CouplingParts {
    std::vector<double> b;  // shared-draw density (unused mass when q = 1 and TV = 1)
    std::vector<double> c;  // X-density on disagreement
    std::vector<double> d;  // Y-density on disagreement
    double q = 0.0;
};
CouplingParts build_coupling_parts(const FiniteDistribution& p,
                                   const FiniteDistribution& q_dist, double q);

// Exact-rational mirror of build_coupling for small supports. probabilities
// and the budget are rationals; marginal identities hold with equality.
struct RationalCoupling {
    std::vector<std::vector<Rat>> joint;
    Rat q;
};
RationalCoupling build_coupling_exact(const std::vector<Rat>& p, const std::vector<Rat>& q_dist,
                                      const Rat& q);
Rat tv_distance_exact(const std::vector<Rat>& p, const std::vector<Rat>& q);

}  // namespace conc

#endif
