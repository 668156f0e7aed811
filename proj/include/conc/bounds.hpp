#ifndef CONC_BOUNDS_HPP
#define CONC_BOUNDS_HPP

#include <string>
#include <vector>

namespace conc {

// Parameters shared by the mgf/tail displays: witness budget coefficients
// a, b >= 0, the mean E g, and the interdependence norm ||A||_1 < 1.
struct BoundSpec {
    double a = 0.0;
    double b = 0.0;
    double mean_g = 0.0;
    double norm1 = 0.0;

    void validate() const;
};

// Evaluated bound curve t -> bound(t); values capped at 1 and nonincreasing.
struct TailCurve {
    std::vector<double> thresholds;
    std::vector<double> values;

    std::string to_csv() const;
};

// log-mgf upper bound for *-self-bounding g:
//   (a E g + b) theta^2 / (2 (1 - ||A||_1 - a theta)),  0 <= theta <= (1-||A||_1)/a
double mgf_star_upper(double theta, const BoundSpec& s);

// weakly *-self-bounding version:
//   (a E g + b) theta^2 / (1 - ||A||_1 - 2 a theta),    0 <= theta <= (1-||A||_1)/(2a)
double mgf_weak_upper(double theta, const BoundSpec& s);

// lower bound on (log m)' for negative theta (the raw derivative display;
// exposed for plotting, not asserted against simulation):
//   -(e^{-theta}-1) (2/(1-||A||_1)) [aEg+b - theta a(aEg+b)/(2(1-||A||_1+2a theta))]
double mgf_lower_derivative(double theta, const BoundSpec& s);

// upper-tail bounds P[g >= E g + t]
double tail_upper_star(double t, const BoundSpec& s);  // exp(-(1-||A||_1)t^2 / (2(aEg+b+at)))
double tail_upper_weak(double t, const BoundSpec& s);  // exp(-(1-||A||_1)t^2 / (4(aEg+b+at)))

// lower-tail bound P[g <= E g - t]; regime split at a = a_c (1-||A||_1):
// Gaussian-type exp(-(1-||A||_1)t^2/(8(aEg+b))) above, Bernstein-type
// exp(-t^2/(5(aEg+b)/(1-||A||_1) + (2/3)t)) below. Requires the caller to
// know |g(x)-g(x*)| <= 1 for one-coordinate changes.
double tail_lower(double t, const BoundSpec& s);

// unique positive root of (exp(1/4a)-1)/(1/(4a)) = 8/5, in (0.285, 0.286);
// bisection to 1e-12
double solve_ac();

// P(W >= t) <= exp(-t^2/(2(D+Ct))) for mgf derivative bounds
// m'(theta) <= C theta m'(theta) + D theta m(theta)
double bernstein_tail(double D, double C, double t);

// convex distance inequality right-hand side 1/mu(S) and its exponent rate
double convex_distance_rhs(double mu_S, double norm1);
double convex_distance_rate(double norm1);  // (1 - ||A||_1)/26.1

// two-sided median-deviation bound min(1, 2 exp(-t^2 (1-||A||_1)/(26.1 C)))
double nonuniform_tail(double t, double C_budget, double norm1);

enum class ApplicationKind {
    TSP,           // 4 exp(-t^2 (1-rho)/(1671 C^2))
    STEINER,       // 4 exp(-t^2 (1-rho)/520000)
    CW_UP,         // exp(-n(1-beta)t^2 / (16 (1-tanh h + 4/((1-beta) sqrt n))))
    CW_LOW,        // exp(-n(1-beta)t^2 / (4 (1-tanh h + 4/((1-beta) sqrt n)) + 4t))
    SUBGRAPH_UP,   // exp(-(1-||A||_1)t^2 / (2 binom(n-2,nS-2) eS (E N_S + t)))
    SUBGRAPH_LOW,  // exp(-(1-||A||_1)t^2 / (8 binom(n-2,nS-2) eS E N_S))
    SWR_CONVEX,    // 4 exp(-t^2/(16 C))
    SWR_TSP,       // 4 exp(-t^2/(1024 C^2))
};

struct ApplicationParams {
    double rho = 0.0;       // inhomogeneity coefficient (TSP/STEINER)
    double c_ratio = 1.0;   // cost-function stretch (TSP/SWR_TSP)
    double beta = 0.0;      // Curie-Weiss interaction
    double h = 0.0;         // Curie-Weiss field
    int n = 0;              // spins (CW) or host vertices (SUBGRAPH)
    double norm1 = 0.0;     // ||A||_1 (SUBGRAPH)
    int motif_vertices = 3; // n_S
    int motif_edges = 3;    // e_S
    double mean_count = 0.0;  // E N_S
    double c_budget = 0.0;  // C of the squared-witness budget (SWR_CONVEX)
};

// the display value before capping at 1
double application_tail_raw(ApplicationKind kind, const ApplicationParams& p, double t);

// evaluated curve over the thresholds, capped at 1
TailCurve application_tails(ApplicationKind kind, const ApplicationParams& p,
                            const std::vector<double>& thresholds, int threads = 1);

// fixed arithmetic relations between the composed constants
struct ConstantChecks {
    bool tsp_ok = false;       // 26.1 * 64 <= 1671
    bool steiner_ok = false;   // 26.1 * 19680 <= 520000
    bool swr_tsp_ok = false;   // 16 * 64 == 1024
    bool all() const { return tsp_ok && steiner_ok && swr_tsp_ok; }
};
ConstantChecks constant_composition_checks();

}  // namespace conc

#endif
