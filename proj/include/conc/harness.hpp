#ifndef CONC_HARNESS_HPP
#define CONC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "conc/bounds.hpp"
#include "conc/convexdist.hpp"

namespace conc {

enum class ExperimentKind { CW, ERGM, TSP, STEINER, SWR, CONVEX, COUPLING };

ExperimentKind experiment_kind_from_string(const std::string& s);
std::string to_string(ExperimentKind k);

// One configuration drives every subcommand; kinds ignore the fields they do
// not use. JSON fields mirror the member names; CLI flags override.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::CW;
    int replicas = 1000;
    std::uint64_t seed = 1;
    std::vector<double> thresholds;
    int burn_in = -1;   // -1: kind-specific default
    int thinning = -1;  // -1: kind-specific default
    int threads = 1;
    bool strict = false;

    // Curie-Weiss
    int cw_n = 100;
    double cw_beta = 0.5;
    double cw_h = 0.0;
    std::string cw_sampling = "exact";  // exact | law_sample | mcmc

    // exponential random graph (edge/triangle, triangle motif counts)
    int ergm_n = 8;
    double ergm_beta1 = -0.2;
    double ergm_beta2 = 0.05;

    // subset sampling for TSP / STEINER / SWR
    int swr_N = 40;
    int swr_n = 15;
    double cost_ratio = 1.0;
    std::uint64_t cost_salt = 0;
    double weight_ratio = 1.0;  // 1 = uniform; else linear weights with p_max/p_min = ratio
    std::string points_csv;     // optional path to a point set; default grid(N)
    std::string tsp_solver = "auto";  // auto | exact | heuristic

    // convex-distance experiment (independent fair bits)
    int convex_n = 10;
    int convex_ball_radius = 1;  // Hamming ball around all-zeros
    double convex_rate = -1.0;   // -1: (1 - ||A||_1)/26.1 with ||A||_1 = 0

    // coupled chains (Curie-Weiss conditionals)
    int coupling_steps = 100;
    std::vector<int> coupling_record;  // defaults to {10, 50, 100} clipped to steps

    static ExperimentConfig from_json(const std::string& text);
};

struct ThresholdRow {
    std::string side;  // upper | lower | two_sided
    double t = 0.0;
    double upper_freq = 0.0;
    double lower_freq = 0.0;
    double ci_low = 0.0;   // Wilson 99% interval of the compared frequency
    double ci_high = 0.0;
    double bound = 0.0;
    bool satisfied = false;  // ci_low <= bound
};

struct ExperimentReport {
    std::string kind_label;
    std::uint64_t seed = 0;
    int replicas = 0;
    std::string center_label;  // which centering the cited bound uses: mean | median
    double center_estimate = 0.0;
    double mean_estimate = 0.0;
    bool hypothesis_violated = false;
    std::string note;
    std::vector<ThresholdRow> rows;
    double runtime_seconds = 0.0;  // console-only; excluded from the CSV

    std::string to_csv() const;
    // (t, empirical, ci_low, ci_high, bound) per row, for plotting
    std::string plot_data_csv() const;
};

// CW, ERGM, TSP, STEINER and SWR campaigns: a pilot half estimates the
// centering statistic, the other half measures deviation frequencies, and
// the matching theoretical curve is attached per threshold. Deterministic
// given (seed, replicas) for any thread count.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// convex-distance moment experiment for independent fair bits
ConvexExperimentReport run_convex_experiment(const ExperimentConfig& cfg);

struct CouplingRow {
    int k = 0;
    double mean_l1 = 0.0;
    double stderr_l1 = 0.0;
    double bound = 0.0;  // n (1 - (1 - ||A||_1)/n)^k
    bool satisfied = false;  // mean <= bound + 3 stderr
};

struct CouplingReport {
    std::uint64_t seed = 0;
    int replicas = 0;
    int n = 0;
    double beta = 0.0;
    double h = 0.0;
    std::vector<CouplingRow> rows;
    double runtime_seconds = 0.0;

    std::string to_csv() const;
};

// coupled Curie-Weiss chains started from all-up / all-down
CouplingReport run_coupling_experiment(const ExperimentConfig& cfg);

}  // namespace conc

#endif
