#ifndef CONC_SELFBOUNDING_HPP
#define CONC_SELFBOUNDING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conc/graphs.hpp"
#include "conc/space.hpp"

namespace conc {

enum class SelfBoundingVariant { SB, WSB, STAR, WSTAR };

// A candidate self-bounding function with explicit per-coordinate witnesses.
struct WitnessedFunction {
    std::function<double(const std::vector<int>&)> g;
    std::function<std::vector<double>(const std::vector<int>&)> alpha;
    double a = 0.0;
    double b = 0.0;
    SelfBoundingVariant variant = SelfBoundingVariant::STAR;
};

struct VerificationReport {
    bool holds = false;
    struct WorstPair {
        std::vector<int> x;
        std::vector<int> y;
        double margin = 0.0;  // right side minus left side of the violated/tightest check
    };
    std::optional<WorstPair> worst_pair;
    std::int64_t checked_pairs = 0;

    std::string to_json() const;
};

// Exhaustive check of the *-self-bounding conditions over a finite space:
// witness range (dropped for WSTAR), the pairwise decrease bound
// g(x)-g(y) <= sum_{i: x_i != y_i} alpha_i(x), and the witness budget
// sum alpha_i <= a g + b (squared sum for WSTAR). Capacity: |space|^2 pair
// checks, at most 1e8.
VerificationReport verify_star(const WitnessedFunction& w, const ProductSpace& space,
                               int threads = 1);

// Self-bounding check with g_i built as the coordinate-wise infimum of g.
// Verifies 0 <= g - g_i <= 1 and sum (g - g_i) <= a g + b; with weak=true
// only the squared-sum budget sum (g - g_i)^2 <= a g + b is required.
VerificationReport verify_sb(const std::function<double(const std::vector<int>&)>& g,
                             const ProductSpace& space, double a, double b, bool weak,
                             int threads = 1);

// Witness for subgraph counts: per edge slot, the number of counted motif
// placements through that edge (one canonical embedding per counted vertex
// subset), scaled by 1/binom(n-2, n_S-2) so each entry lies in [0,1].
std::vector<double> subgraph_witness(const EdgeGraph& x, const GraphMotif& motif);

// helper for the scaling above
double binomial(int n, int k);

}  // namespace conc

#endif
