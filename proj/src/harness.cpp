#include "conc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "conc/dobrushin.hpp"
#include "conc/errors.hpp"
#include "conc/geometry.hpp"
#include "conc/graphs.hpp"
#include "conc/models.hpp"
#include "conc/parallel.hpp"
#include "conc/stats.hpp"

namespace conc {

namespace {

constexpr double kCi = 0.99;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> default_thresholds(double max_t, int count) {
    std::vector<double> ts;
    for (int i = 1; i <= count; ++i) ts.push_back(max_t * i / count);
    return ts;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// frequencies of one-sided deviations beyond each threshold
struct DeviationCounts {
    std::vector<std::int64_t> upper;
    std::vector<std::int64_t> lower;
    std::int64_t trials = 0;
};

DeviationCounts count_deviations(const std::vector<double>& values, double center,
                                 const std::vector<double>& thresholds) {
    DeviationCounts c;
    c.upper.assign(thresholds.size(), 0);
    c.lower.assign(thresholds.size(), 0);
    c.trials = static_cast<std::int64_t>(values.size());
    for (double v : values) {
        for (std::size_t i = 0; i < thresholds.size(); ++i) {
            if (v >= center + thresholds[i]) ++c.upper[i];
            if (v <= center - thresholds[i]) ++c.lower[i];
        }
    }
    return c;
}

ThresholdRow make_row(const std::string& side, double t, std::int64_t up, std::int64_t low,
                      std::int64_t trials, double bound) {
    ThresholdRow row;
    row.side = side;
    row.t = t;
    row.upper_freq = trials > 0 ? static_cast<double>(up) / trials : 0.0;
    row.lower_freq = trials > 0 ? static_cast<double>(low) / trials : 0.0;
    std::int64_t compared;
    if (side == "upper")
        compared = up;
    else if (side == "lower")
        compared = low;
    else
        compared = up + low;  // deviation events are disjoint for t > 0
    compared = std::min(compared, trials);
    if (trials >= 2) {
        const auto [lo, hi] = wilson_interval(compared, trials, kCi);
        row.ci_low = lo;
        row.ci_high = hi;
    } else {
        // degenerate runs: interval of width 1
        row.ci_low = 0.0;
        row.ci_high = 1.0;
    }
    row.bound = bound;
    row.satisfied = row.ci_low <= bound;
    return row;
}

// split replica values: even prefix half estimates the center, the rest measures
std::pair<std::vector<double>, std::vector<double>> pilot_split(std::vector<double> values) {
    const std::size_t half = values.size() / 2;
    std::vector<double> pilot(values.begin(), values.begin() + static_cast<long>(half));
    std::vector<double> measure(values.begin() + static_cast<long>(half), values.end());
    if (pilot.empty()) pilot = measure;  // degenerate single-replica runs
    return {pilot, measure};
}

ExperimentReport cw_experiment(const ExperimentConfig& cfg) {
    Timer timer;
    const int n = cfg.cw_n;
    const double beta = cfg.cw_beta;
    const double h = cfg.cw_h;
    ExperimentReport rep;
    rep.kind_label = "CW";
    rep.seed = cfg.seed;
    rep.replicas = cfg.replicas;
    rep.center_label = "mean";
    if (!(beta >= 0.0 && beta < 1.0) || h < 0.0) {
        rep.hypothesis_violated = true;
        rep.note = "requires 0 <= beta < 1 and h >= 0";
    }

    std::vector<double> thresholds =
        cfg.thresholds.empty() ? default_thresholds(1.0, 20) : cfg.thresholds;

    ApplicationParams params;
    params.beta = beta;
    params.h = h;
    params.n = n;

    const auto law = cw_exact_magnetization_law(n, beta, h);

    if (cfg.cw_sampling == "exact") {
        // no Monte Carlo error: tail probabilities straight from the law
        const double em = law.mean_magnetization();
        rep.center_estimate = em;
        rep.mean_estimate = em;
        for (double t : thresholds) {
            const double up = law.prob_m_ge(em + t);
            const double low = law.prob_m_le(em - t);
            const double bu = rep.hypothesis_violated
                                  ? 1.0
                                  : std::min(1.0, application_tail_raw(ApplicationKind::CW_UP,
                                                                       params, t));
            const double bl = rep.hypothesis_violated
                                  ? 1.0
                                  : std::min(1.0, application_tail_raw(ApplicationKind::CW_LOW,
                                                                       params, t));
            ThresholdRow ru{"upper", t, up, low, up, up, bu, up <= bu};
            ThresholdRow rl{"lower", t, up, low, low, low, bl, low <= bl};
            rep.rows.push_back(ru);
            rep.rows.push_back(rl);
        }
        rep.runtime_seconds = timer.seconds();
        return rep;
    }

    std::vector<double> values(static_cast<std::size_t>(cfg.replicas));
    if (cfg.cw_sampling == "law_sample") {
        parallel_for(values.size(), cfg.threads, [&](std::size_t r) {
            SplitRng rng(cfg.seed, r);
            values[r] = law.sample_m(rng);
        });
    } else if (cfg.cw_sampling == "mcmc") {
        const int burn = cfg.burn_in >= 0 ? cfg.burn_in : 100 * n;
        const int thin = cfg.thinning >= 0 ? cfg.thinning : n;
        SplitRng rng(cfg.seed, 0);
        SpinConfiguration state = SpinConfiguration::all_up(n);
        for (int k = 0; k < burn; ++k) cw_glauber_step(state, beta, h, rng);
        for (auto& v : values) {
            for (int k = 0; k < thin; ++k) cw_glauber_step(state, beta, h, rng);
            v = state.magnetization();
        }
    } else {
        throw DomainError("cw experiment: unknown sampling mode " + cfg.cw_sampling);
    }

    auto [pilot, measure] = pilot_split(std::move(values));
    const double em = mean(pilot);
    rep.center_estimate = em;
    rep.mean_estimate = em;
    const auto counts = count_deviations(measure, em, thresholds);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double t = thresholds[i];
        const double bu =
            rep.hypothesis_violated
                ? 1.0
                : std::min(1.0, application_tail_raw(ApplicationKind::CW_UP, params, t));
        const double bl =
            rep.hypothesis_violated
                ? 1.0
                : std::min(1.0, application_tail_raw(ApplicationKind::CW_LOW, params, t));
        rep.rows.push_back(
            make_row("upper", t, counts.upper[i], counts.lower[i], counts.trials, bu));
        rep.rows.push_back(
            make_row("lower", t, counts.upper[i], counts.lower[i], counts.trials, bl));
    }
    rep.runtime_seconds = timer.seconds();
    return rep;
}

ExperimentReport ergm_experiment(const ExperimentConfig& cfg) {
    Timer timer;
    const int n = cfg.ergm_n;
    ExperimentReport rep;
    rep.kind_label = "ERGM";
    rep.seed = cfg.seed;
    rep.replicas = cfg.replicas;
    rep.center_label = "mean";

    const auto A = ergm_edge_triangle_matrix(n, cfg.ergm_beta1, cfg.ergm_beta2);
    if (!(A.norm_1 < 1.0)) {
        rep.hypothesis_violated = true;
        rep.note = "edge/triangle interdependence norm ||A||_1 >= 1";
    }
    const GraphMotif motif = GraphMotif::triangle();

    EdgeGraph g(n);
    SplitRng rng(cfg.seed, 0);
    const int slots = g.n_slots();
    const int burn = cfg.burn_in >= 0 ? cfg.burn_in : 200 * slots;
    const int thin = cfg.thinning >= 0 ? cfg.thinning : 5 * slots;
    for (int k = 0; k < burn; ++k) ergm_glauber_step(g, cfg.ergm_beta1, cfg.ergm_beta2, rng);
    std::vector<double> values(static_cast<std::size_t>(cfg.replicas));
    for (auto& v : values) {
        for (int k = 0; k < thin; ++k) ergm_glauber_step(g, cfg.ergm_beta1, cfg.ergm_beta2, rng);
        v = static_cast<double>(subgraph_count(g, motif));
    }

    auto [pilot, measure] = pilot_split(std::move(values));
    const double mean_count = mean(pilot);
    rep.center_estimate = mean_count;
    rep.mean_estimate = mean_count;

    std::vector<double> thresholds = cfg.thresholds.empty()
                                         ? default_thresholds(std::max(4.0, 2.0 * mean_count), 20)
                                         : cfg.thresholds;
    ApplicationParams params;
    params.n = n;
    params.norm1 = std::min(A.norm_1, 1.0 - 1e-12);
    params.motif_vertices = motif.n_vertices;
    params.motif_edges = static_cast<int>(motif.edges.size());
    params.mean_count = mean_count;

    const auto counts = count_deviations(measure, mean_count, thresholds);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double t = thresholds[i];
        const double bu =
            rep.hypothesis_violated
                ? 1.0
                : std::min(1.0, application_tail_raw(ApplicationKind::SUBGRAPH_UP, params, t));
        const double bl =
            rep.hypothesis_violated
                ? 1.0
                : std::min(1.0, application_tail_raw(ApplicationKind::SUBGRAPH_LOW, params, t));
        rep.rows.push_back(
            make_row("upper", t, counts.upper[i], counts.lower[i], counts.trials, bu));
        rep.rows.push_back(
            make_row("lower", t, counts.upper[i], counts.lower[i], counts.trials, bl));
    }
    rep.runtime_seconds = timer.seconds();
    return rep;
}

FiniteDistribution swr_weights(int N, double ratio) {
    std::vector<double> w(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        w[static_cast<std::size_t>(i)] =
            N > 1 ? 1.0 + (ratio - 1.0) * static_cast<double>(i) / (N - 1) : 1.0;
    return FiniteDistribution::from_weights(w);
}

ExperimentReport subset_experiment(const ExperimentConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.kind_label = to_string(cfg.kind);
    rep.seed = cfg.seed;
    rep.replicas = cfg.replicas;
    rep.center_label = "median";

    PointSet all_points;
    if (!cfg.points_csv.empty()) {
        std::ifstream in(cfg.points_csv);
        if (!in) throw DomainError("cannot open point set " + cfg.points_csv);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        all_points = PointSet::from_csv(text);
    } else {
        all_points = PointSet::grid(cfg.swr_N);
    }
    const int N = all_points.size();
    const int n = cfg.swr_n;
    if (n < 2 || n > N) throw DomainError("subset experiment: need 2 <= n <= N");

    const bool uniform = cfg.weight_ratio == 1.0;
    const auto p = swr_weights(N, cfg.weight_ratio);

    // inhomogeneity: closed form for the uniform law, intensity-ratio bound otherwise
    double rho;
    if (uniform)
        rho = static_cast<double>(n) / (N - n + 1);
    else
        rho = weighted_swr_rho_bound(cfg.weight_ratio, 1.0, n, N);
    if (!(rho < 1.0)) {
        rep.hypothesis_violated = true;
        rep.note = "inhomogeneity coefficient rho >= 1";
    }
    if (cfg.kind == ExperimentKind::SWR && !uniform) {
        rep.hypothesis_violated = true;
        rep.note = "sampling-without-replacement curve requires the uniform law";
    }

    const CostFunction L = cfg.cost_ratio == 1.0
                               ? CostFunction::euclidean_cost()
                               : CostFunction::scaled_asymmetric(cfg.cost_ratio, cfg.cost_salt);
    const bool needs_tour = cfg.kind != ExperimentKind::STEINER;
    const bool exact_tour = cfg.tsp_solver == "exact" ||
                            (cfg.tsp_solver == "auto" && n <= 12);
    if (needs_tour && !exact_tour) rep.note += (rep.note.empty() ? "" : "; ");
    if (needs_tour && !exact_tour)
        rep.note += "tour functional is the space-filling + local search surrogate";

    std::vector<double> values(static_cast<std::size_t>(cfg.replicas));
    parallel_for(values.size(), cfg.threads, [&](std::size_t r) {
        SplitRng rng(cfg.seed, r);
        const auto sample = weighted_swr_sample(p, n, rng);
        PointSet sub;
        for (int idx : sample.indices)
            sub.points.push_back(all_points.points[static_cast<std::size_t>(idx)]);
        if (cfg.kind == ExperimentKind::STEINER)
            values[r] = steiner_upper(sub);
        else
            values[r] = exact_tour ? exact_tsp(sub, L).cost : heuristic_tsp(sub, L).cost;
    });

    auto [pilot, measure] = pilot_split(std::move(values));
    const double center = median(pilot);
    rep.center_estimate = center;
    rep.mean_estimate = mean(pilot);

    std::vector<double> thresholds =
        cfg.thresholds.empty() ? default_thresholds(std::max(1.0, center), 20) : cfg.thresholds;

    ApplicationParams params;
    params.rho = std::min(rho, 1.0 - 1e-12);
    params.c_ratio = cfg.cost_ratio;

    const ApplicationKind curve = cfg.kind == ExperimentKind::TSP ? ApplicationKind::TSP
                                  : cfg.kind == ExperimentKind::STEINER
                                      ? ApplicationKind::STEINER
                                      : ApplicationKind::SWR_TSP;

    const auto counts = count_deviations(measure, center, thresholds);
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const double t = thresholds[i];
        const double b = rep.hypothesis_violated
                             ? 1.0
                             : std::min(1.0, application_tail_raw(curve, params, t));
        rep.rows.push_back(
            make_row("two_sided", t, counts.upper[i], counts.lower[i], counts.trials, b));
    }
    rep.runtime_seconds = timer.seconds();
    return rep;
}

}  // namespace

ExperimentKind experiment_kind_from_string(const std::string& s) {
    if (s == "cw" || s == "CW") return ExperimentKind::CW;
    if (s == "ergm" || s == "ERGM") return ExperimentKind::ERGM;
    if (s == "tsp" || s == "TSP") return ExperimentKind::TSP;
    if (s == "steiner" || s == "STEINER") return ExperimentKind::STEINER;
    if (s == "swr" || s == "SWR") return ExperimentKind::SWR;
    if (s == "convex" || s == "CONVEX") return ExperimentKind::CONVEX;
    if (s == "coupling" || s == "COUPLING") return ExperimentKind::COUPLING;
    throw DomainError("unknown experiment kind: " + s);
}

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::CW: return "CW";
        case ExperimentKind::ERGM: return "ERGM";
        case ExperimentKind::TSP: return "TSP";
        case ExperimentKind::STEINER: return "STEINER";
        case ExperimentKind::SWR: return "SWR";
        case ExperimentKind::CONVEX: return "CONVEX";
        case ExperimentKind::COUPLING: return "COUPLING";
    }
    return "?";
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentConfig cfg;
    cfg.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("replicas")) cfg.replicas = j["replicas"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("thresholds")) cfg.thresholds = j["thresholds"].get<std::vector<double>>();
    if (j.contains("burn_in")) cfg.burn_in = j["burn_in"].get<int>();
    if (j.contains("thinning")) cfg.thinning = j["thinning"].get<int>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("strict")) cfg.strict = j["strict"].get<bool>();
    if (j.contains("cw_n")) cfg.cw_n = j["cw_n"].get<int>();
    if (j.contains("cw_beta")) cfg.cw_beta = j["cw_beta"].get<double>();
    if (j.contains("cw_h")) cfg.cw_h = j["cw_h"].get<double>();
    if (j.contains("cw_sampling")) cfg.cw_sampling = j["cw_sampling"].get<std::string>();
    if (j.contains("ergm_n")) cfg.ergm_n = j["ergm_n"].get<int>();
    if (j.contains("ergm_beta1")) cfg.ergm_beta1 = j["ergm_beta1"].get<double>();
    if (j.contains("ergm_beta2")) cfg.ergm_beta2 = j["ergm_beta2"].get<double>();
    if (j.contains("swr_N")) cfg.swr_N = j["swr_N"].get<int>();
    if (j.contains("swr_n")) cfg.swr_n = j["swr_n"].get<int>();
    if (j.contains("cost_ratio")) cfg.cost_ratio = j["cost_ratio"].get<double>();
    if (j.contains("cost_salt")) cfg.cost_salt = j["cost_salt"].get<std::uint64_t>();
    if (j.contains("weight_ratio")) cfg.weight_ratio = j["weight_ratio"].get<double>();
    if (j.contains("points_csv")) cfg.points_csv = j["points_csv"].get<std::string>();
    if (j.contains("tsp_solver")) cfg.tsp_solver = j["tsp_solver"].get<std::string>();
    if (j.contains("convex_n")) cfg.convex_n = j["convex_n"].get<int>();
    if (j.contains("convex_ball_radius"))
        cfg.convex_ball_radius = j["convex_ball_radius"].get<int>();
    if (j.contains("convex_rate")) cfg.convex_rate = j["convex_rate"].get<double>();
    if (j.contains("coupling_steps")) cfg.coupling_steps = j["coupling_steps"].get<int>();
    if (j.contains("coupling_record"))
        cfg.coupling_record = j["coupling_record"].get<std::vector<int>>();
    return cfg;
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    out += "# kind," + kind_label + "\n";
    out += "# seed," + std::to_string(seed) + "\n";
    out += "# replicas," + std::to_string(replicas) + "\n";
    out += "# center," + center_label + "," + fmt(center_estimate) + "\n";
    out += "# mean," + fmt(mean_estimate) + "\n";
    out += "# hypothesis_violated," + std::string(hypothesis_violated ? "1" : "0") + "\n";
    if (!note.empty()) out += "# note," + note + "\n";
    out += "side,t,empirical_upper_freq,empirical_lower_freq,ci_low,ci_high,bound_value,satisfied\n";
    for (const auto& r : rows) {
        out += r.side + "," + fmt(r.t) + "," + fmt(r.upper_freq) + "," + fmt(r.lower_freq) + "," +
               fmt(r.ci_low) + "," + fmt(r.ci_high) + "," + fmt(r.bound) + "," +
               (r.satisfied ? "1" : "0") + "\n";
    }
    return out;
}

std::string ExperimentReport::plot_data_csv() const {
    std::string out = "t,empirical,ci_low,ci_high,bound\n";
    for (const auto& r : rows) {
        const double emp = r.side == "lower" ? r.lower_freq
                           : r.side == "upper" ? r.upper_freq
                                               : std::min(1.0, r.upper_freq + r.lower_freq);
        out += fmt(r.t) + "," + fmt(emp) + "," + fmt(r.ci_low) + "," + fmt(r.ci_high) + "," +
               fmt(r.bound) + "\n";
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.replicas < 1) throw DomainError("run_experiment: replicas must be >= 1");
    for (std::size_t i = 1; i < cfg.thresholds.size(); ++i)
        if (cfg.thresholds[i] < cfg.thresholds[i - 1])
            throw DomainError("run_experiment: thresholds must be ascending");
    for (double t : cfg.thresholds)
        if (t < 0.0) throw DomainError("run_experiment: thresholds must be nonnegative");
    switch (cfg.kind) {
        case ExperimentKind::CW: return cw_experiment(cfg);
        case ExperimentKind::ERGM: return ergm_experiment(cfg);
        case ExperimentKind::TSP:
        case ExperimentKind::STEINER:
        case ExperimentKind::SWR: return subset_experiment(cfg);
        default:
            throw DomainError("run_experiment: kind has a dedicated runner; "
                              "use run_convex_experiment / run_coupling_experiment");
    }
}

ConvexExperimentReport run_convex_experiment(const ExperimentConfig& cfg) {
    const int n = cfg.convex_n;
    if (n < 1 || n > 24) throw DomainError("convex experiment: need 1 <= n <= 24");
    // Hamming ball around the all-zeros configuration
    std::vector<std::vector<int>> S;
    const std::uint32_t total = 1u << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (__builtin_popcount(mask) > cfg.convex_ball_radius) continue;
        std::vector<int> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        S.push_back(std::move(y));
    }
    const double mu = static_cast<double>(S.size()) / total;
    const double rate = cfg.convex_rate > 0.0 ? cfg.convex_rate : convex_distance_rate(0.0);
    const auto sampler = [n](SplitRng& rng) {
        std::vector<int> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = rng.bernoulli(0.5) ? 1 : 0;
        return x;
    };
    return convex_distance_experiment(sampler, S, mu, rate, cfg.replicas, cfg.seed, cfg.threads);
}

std::string CouplingReport::to_csv() const {
    std::string out;
    out += "# seed," + std::to_string(seed) + "\n";
    out += "# replicas," + std::to_string(replicas) + "\n";
    out += "# n," + std::to_string(n) + "\n";
    out += "# beta," + fmt(beta) + "\n# h," + fmt(h) + "\n";
    out += "k,mean_disagreement,stderr,bound,satisfied\n";
    for (const auto& r : rows)
        out += std::to_string(r.k) + "," + fmt(r.mean_l1) + "," + fmt(r.stderr_l1) + "," +
               fmt(r.bound) + "," + (r.satisfied ? "1" : "0") + "\n";
    return out;
}

CouplingReport run_coupling_experiment(const ExperimentConfig& cfg) {
    Timer timer;
    const int n = cfg.cw_n;
    const int steps = cfg.coupling_steps;
    std::vector<int> record = cfg.coupling_record;
    if (record.empty()) {
        for (int k : {10, 50, 100})
            if (k <= steps) record.push_back(k);
        if (record.empty()) record.push_back(steps);
    }

    const auto model = cw_conditional_model(n, cfg.cw_beta, cfg.cw_h);
    const auto A = curie_weiss_matrix(n, cfg.cw_beta);
    const std::vector<int> x0(static_cast<std::size_t>(n), 1);
    const std::vector<int> y0(static_cast<std::size_t>(n), 0);

    std::vector<std::vector<int>> curves(static_cast<std::size_t>(cfg.replicas));
    parallel_for(curves.size(), cfg.threads, [&](std::size_t r) {
        SplitRng rng(cfg.seed, r);
        curves[r] = coupled_disagreement_curve(model, A, x0, y0, steps, rng);
    });

    CouplingReport rep;
    rep.seed = cfg.seed;
    rep.replicas = cfg.replicas;
    rep.n = n;
    rep.beta = cfg.cw_beta;
    rep.h = cfg.cw_h;
    const double rate = 1.0 - (1.0 - A.norm_1) / n;
    for (int k : record) {
        if (k < 0 || k > steps) throw DomainError("coupling experiment: record step out of range");
        double s = 0.0, s2 = 0.0;
        for (const auto& c : curves) {
            const double v = c[static_cast<std::size_t>(k)];
            s += v;
            s2 += v * v;
        }
        const double m = s / cfg.replicas;
        const double var = std::max(0.0, s2 / cfg.replicas - m * m);
        const double se = std::sqrt(var / cfg.replicas);
        CouplingRow row;
        row.k = k;
        row.mean_l1 = m;
        row.stderr_l1 = se;
        row.bound = n * std::pow(rate, k);
        row.satisfied = m <= row.bound + 3.0 * se;
        rep.rows.push_back(row);
    }
    rep.runtime_seconds = timer.seconds();
    return rep;
}

}  // namespace conc
