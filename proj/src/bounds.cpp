#include "conc/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "conc/errors.hpp"
#include "conc/parallel.hpp"
#include "conc/selfbounding.hpp"

namespace conc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void BoundSpec::validate() const {
    if (a < 0.0 || b < 0.0) throw DomainError("BoundSpec: a, b must be nonnegative");
    if (mean_g < 0.0) throw DomainError("BoundSpec: E g must be nonnegative");
    if (!(norm1 >= 0.0 && norm1 < 1.0)) throw DomainError("BoundSpec: need 0 <= ||A||_1 < 1");
}

std::string TailCurve::to_csv() const {
    std::string out = "t,bound\n";
    char line[80];
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g\n", thresholds[i], values[i]);
        out += line;
    }
    return out;
}

double mgf_star_upper(double theta, const BoundSpec& s) {
    s.validate();
    const double cap = s.a > 0.0 ? (1.0 - s.norm1) / s.a : kInf;
    if (theta < 0.0 || theta > cap) throw DomainError("mgf_star_upper: theta out of range");
    const double denom = 2.0 * (1.0 - s.norm1 - s.a * theta);
    if (denom <= 0.0) return kInf;
    return (s.a * s.mean_g + s.b) * theta * theta / denom;
}

double mgf_weak_upper(double theta, const BoundSpec& s) {
    s.validate();
    const double cap = s.a > 0.0 ? (1.0 - s.norm1) / (2.0 * s.a) : kInf;
    if (theta < 0.0 || theta > cap) throw DomainError("mgf_weak_upper: theta out of range");
    const double denom = 1.0 - s.norm1 - 2.0 * s.a * theta;
    if (denom <= 0.0) return kInf;
    return (s.a * s.mean_g + s.b) * theta * theta / denom;
}

double mgf_lower_derivative(double theta, const BoundSpec& s) {
    s.validate();
    const double cap = s.a > 0.0 ? (1.0 - s.norm1) / (2.0 * s.a) : kInf;
    if (theta > 0.0 || theta < -cap)
        throw DomainError("mgf_lower_derivative: theta out of range");
    const double budget = s.a * s.mean_g + s.b;
    const double inner =
        budget - theta * s.a * budget / (2.0 * (1.0 - s.norm1 + 2.0 * s.a * theta));
    return -(std::exp(-theta) - 1.0) * (2.0 / (1.0 - s.norm1)) * inner;
}

double tail_upper_star(double t, const BoundSpec& s) {
    s.validate();
    if (t < 0.0) throw DomainError("tail_upper_star: t must be nonnegative");
    if (t == 0.0) return 1.0;
    const double denom = 2.0 * (s.a * s.mean_g + s.b + s.a * t);
    if (denom <= 0.0) return 0.0;
    return std::exp(-(1.0 - s.norm1) * t * t / denom);
}

double tail_upper_weak(double t, const BoundSpec& s) {
    s.validate();
    if (t < 0.0) throw DomainError("tail_upper_weak: t must be nonnegative");
    if (t == 0.0) return 1.0;
    const double denom = 4.0 * (s.a * s.mean_g + s.b + s.a * t);
    if (denom <= 0.0) return 0.0;
    return std::exp(-(1.0 - s.norm1) * t * t / denom);
}

double tail_lower(double t, const BoundSpec& s) {
    s.validate();
    if (t < 0.0) throw DomainError("tail_lower: t must be nonnegative");
    if (t == 0.0) return 1.0;
    const double budget = s.a * s.mean_g + s.b;
    static const double ac = solve_ac();
    if (s.a >= ac * (1.0 - s.norm1)) {
        if (budget <= 0.0) return 0.0;
        return std::exp(-(1.0 - s.norm1) * t * t / (8.0 * budget));
    }
    const double denom = 5.0 * budget / (1.0 - s.norm1) + (2.0 / 3.0) * t;
    return std::exp(-t * t / denom);
}

double solve_ac() {
    // (exp(1/4a) - 1) * 4a - 8/5 is decreasing in a; root bracketed in [0.2, 0.4]
    auto f = [](double a) { return (std::exp(1.0 / (4.0 * a)) - 1.0) * 4.0 * a - 1.6; };
    double lo = 0.2, hi = 0.4;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double bernstein_tail(double D, double C, double t) {
    if (D < 0.0 || C < 0.0 || t < 0.0) throw DomainError("bernstein_tail: negative argument");
    if (t == 0.0) return 1.0;
    const double denom = 2.0 * (D + C * t);
    if (denom <= 0.0) return 0.0;
    return std::exp(-t * t / denom);
}

double convex_distance_rhs(double mu_S, double norm1) {
    if (!(mu_S > 0.0 && mu_S <= 1.0)) throw DomainError("convex_distance_rhs: mu(S) in (0,1]");
    if (!(norm1 >= 0.0 && norm1 < 1.0)) throw DomainError("convex_distance_rhs: ||A||_1 in [0,1)");
    return 1.0 / mu_S;
}

double convex_distance_rate(double norm1) {
    if (!(norm1 >= 0.0 && norm1 < 1.0)) throw DomainError("convex_distance_rate: ||A||_1 in [0,1)");
    return (1.0 - norm1) / 26.1;
}

double nonuniform_tail(double t, double C_budget, double norm1) {
    if (t < 0.0) throw DomainError("nonuniform_tail: t must be nonnegative");
    if (!(C_budget > 0.0)) throw DomainError("nonuniform_tail: C must be positive");
    if (!(norm1 >= 0.0 && norm1 < 1.0)) throw DomainError("nonuniform_tail: ||A||_1 in [0,1)");
    return std::min(1.0, 2.0 * std::exp(-t * t * (1.0 - norm1) / (26.1 * C_budget)));
}

double application_tail_raw(ApplicationKind kind, const ApplicationParams& p, double t) {
    if (t < 0.0) throw DomainError("application_tail_raw: t must be nonnegative");
    switch (kind) {
        case ApplicationKind::TSP: {
            if (!(p.rho < 1.0)) throw DomainError("TSP tail: need rho < 1");
            if (!(p.c_ratio >= 1.0)) throw DomainError("TSP tail: need C >= 1");
            return 4.0 * std::exp(-t * t * (1.0 - p.rho) / (1671.0 * p.c_ratio * p.c_ratio));
        }
        case ApplicationKind::STEINER: {
            if (!(p.rho < 1.0)) throw DomainError("Steiner tail: need rho < 1");
            return 4.0 * std::exp(-t * t * (1.0 - p.rho) / 520000.0);
        }
        case ApplicationKind::CW_UP:
        case ApplicationKind::CW_LOW: {
            if (!(p.beta >= 0.0 && p.beta < 1.0)) throw DomainError("CW tail: need 0 <= beta < 1");
            if (p.h < 0.0) throw DomainError("CW tail: need h >= 0");
            if (p.n < 1) throw DomainError("CW tail: need n >= 1");
            const double slack =
                1.0 - std::tanh(p.h) + 4.0 / ((1.0 - p.beta) * std::sqrt(static_cast<double>(p.n)));
            const double num = p.n * (1.0 - p.beta) * t * t;
            if (kind == ApplicationKind::CW_UP) return std::exp(-num / (16.0 * slack));
            return std::exp(-num / (4.0 * slack + 4.0 * t));
        }
        case ApplicationKind::SUBGRAPH_UP:
        case ApplicationKind::SUBGRAPH_LOW: {
            if (!(p.norm1 >= 0.0 && p.norm1 < 1.0))
                throw DomainError("subgraph tail: need ||A||_1 < 1");
            if (p.motif_vertices < 2 || p.motif_edges < 1 || p.n < p.motif_vertices)
                throw DomainError("subgraph tail: invalid motif/host sizes");
            if (!(p.mean_count >= 0.0)) throw DomainError("subgraph tail: E N_S >= 0");
            const double scale = binomial(p.n - 2, p.motif_vertices - 2) * p.motif_edges;
            const double denom = kind == ApplicationKind::SUBGRAPH_UP
                                     ? 2.0 * scale * (p.mean_count + t)
                                     : 8.0 * scale * p.mean_count;
            if (denom <= 0.0) return t == 0.0 ? 1.0 : 0.0;
            // displayed exponents are positive; the derivation through the
            // tail corollary forces the minus sign used here
            return std::exp(-(1.0 - p.norm1) * t * t / denom);
        }
        case ApplicationKind::SWR_CONVEX: {
            if (!(p.c_budget > 0.0)) throw DomainError("SWR convex tail: need C > 0");
            return 4.0 * std::exp(-t * t / (16.0 * p.c_budget));
        }
        case ApplicationKind::SWR_TSP: {
            if (!(p.c_ratio >= 1.0)) throw DomainError("SWR TSP tail: need C >= 1");
            return 4.0 * std::exp(-t * t / (1024.0 * p.c_ratio * p.c_ratio));
        }
    }
    throw DomainError("application_tail_raw: unknown kind");
}

TailCurve application_tails(ApplicationKind kind, const ApplicationParams& p,
                            const std::vector<double>& thresholds, int threads) {
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] < thresholds[i - 1])
            throw DomainError("application_tails: thresholds must be ascending");
    TailCurve curve;
    curve.thresholds = thresholds;
    curve.values.assign(thresholds.size(), 0.0);
    parallel_for(thresholds.size(), threads, [&](std::size_t i) {
        curve.values[i] = std::min(1.0, application_tail_raw(kind, p, thresholds[i]));
    });
    return curve;
}

ConstantChecks constant_composition_checks() {
    ConstantChecks c;
    c.tsp_ok = 26.1 * 64.0 <= 1671.0;
    c.steiner_ok = 26.1 * 19680.0 <= 520000.0;
    c.swr_tsp_ok = 16.0 * 64.0 == 1024.0;
    return c;
}

}  // namespace conc
