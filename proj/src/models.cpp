#include "conc/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conc/errors.hpp"

namespace conc {

// ---------------------------------------------------------------- Curie-Weiss

double cw_flip_prob(double t) { return 1.0 / (1.0 + std::exp(-2.0 * t)); }

void cw_glauber_step(SpinConfiguration& state, double beta, double h, SplitRng& rng) {
    if (beta < 0.0) throw DomainError("cw_glauber_step: beta must be nonnegative");
    const int n = state.n;
    const int i = rng.uniform_int(n);
    const double mi =
        static_cast<double>(state.spin_sum() - state.spins[static_cast<std::size_t>(i)]) / n;
    const double p_up = cw_flip_prob(beta * mi + h);
    state.spins[static_cast<std::size_t>(i)] = rng.bernoulli(p_up) ? +1 : -1;
}

MagnetizationLaw cw_exact_magnetization_law(int n, double beta, double h) {
    if (n < 1 || n > 10000) throw DomainError("cw_exact_magnetization_law: need 1 <= n <= 1e4");
    std::vector<double> logw(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        const double k = 2.0 * j - n;
        const double lchoose =
            std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
        logw[static_cast<std::size_t>(j)] =
            lchoose + (beta / (2.0 * n)) * (k * k - n) + h * k;
    }
    const double mx = *std::max_element(logw.begin(), logw.end());
    std::vector<double> w(logw.size());
    for (std::size_t j = 0; j < logw.size(); ++j) w[j] = std::exp(logw[j] - mx);
    return MagnetizationLaw{n, FiniteDistribution::from_weights(w)};
}

double MagnetizationLaw::mean_spin_sum() const {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) s += dist.prob(j) * spin_sum_at(j);
    return s;
}

double MagnetizationLaw::prob_m_ge(double v) const {
    // inclusive at lattice points, with a fuzz that errs toward inclusion
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
        if (spin_sum_at(j) >= v * n - 1e-9) s += dist.prob(j);
    return std::min(1.0, s);
}

double MagnetizationLaw::prob_m_le(double v) const {
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
        if (spin_sum_at(j) <= v * n + 1e-9) s += dist.prob(j);
    return std::min(1.0, s);
}

double MagnetizationLaw::sample_m(SplitRng& rng) const {
    const double u = rng.uniform();
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
        acc += dist.prob(j);
        if (u < acc) return spin_sum_at(j) / n;
    }
    return spin_sum_at(n) / n;
}

ConditionalModel cw_conditional_model(int n, double beta, double h) {
    if (n < 1) throw DomainError("cw_conditional_model: n must be >= 1");
    ConditionalModel model;
    model.n = n;
    model.alphabet_sizes.assign(static_cast<std::size_t>(n), 2);
    model.conditional = [n, beta, h](int i, const std::vector<int>& x)
        -> std::optional<FiniteDistribution> {
        int sum = 0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            sum += x[static_cast<std::size_t>(k)] == 1 ? 1 : -1;
        }
        const double p_up = cw_flip_prob(beta * (static_cast<double>(sum) / n) + h);
        return FiniteDistribution({1.0 - p_up, p_up});
    };
    return model;
}

// ------------------------------------------------------ exponential random graphs

ErgmModel ErgmModel::edge_triangle(int n_vertices, double beta1, double beta2) {
    ErgmModel m;
    m.n_vertices = n_vertices;
    m.log_odds = [beta1, beta2](const EdgeGraph& g, int slot) {
        const auto [i, j] = g.slot_pair(slot);
        return 2.0 * beta1 + (6.0 * beta2 / g.n_vertices) * g.common_neighbors(i, j);
    };
    return m;
}

double ergm_conditional_prob(const EdgeGraph& g, int slot, double beta1, double beta2) {
    const auto [i, j] = g.slot_pair(slot);
    const double lo = 2.0 * beta1 + (6.0 * beta2 / g.n_vertices) * g.common_neighbors(i, j);
    return 1.0 / (1.0 + std::exp(-lo));
}

void ergm_glauber_step(EdgeGraph& g, double beta1, double beta2, SplitRng& rng) {
    const int slot = rng.uniform_int(g.n_slots());
    const double p = ergm_conditional_prob(g, slot, beta1, beta2);
    g.edges[static_cast<std::size_t>(slot)] = rng.bernoulli(p) ? 1 : 0;
}

void general_ergm_glauber_step(EdgeGraph& g, const ErgmModel& model, SplitRng& rng) {
    const int slot = rng.uniform_int(g.n_slots());
    const double lo = model.log_odds(g, slot);
    const double p = 1.0 / (1.0 + std::exp(-lo));
    g.edges[static_cast<std::size_t>(slot)] = rng.bernoulli(p) ? 1 : 0;
}

ConditionalModel ergm_conditional_model(int n_vertices, double beta1, double beta2) {
    EdgeGraph proto(n_vertices);
    const int m = proto.n_slots();
    ConditionalModel model;
    model.n = m;
    model.alphabet_sizes.assign(static_cast<std::size_t>(m), 2);
    model.conditional = [n_vertices, beta1, beta2](int slot, const std::vector<int>& x)
        -> std::optional<FiniteDistribution> {
        EdgeGraph g(n_vertices);
        for (int s = 0; s < g.n_slots(); ++s)
            g.edges[static_cast<std::size_t>(s)] =
                static_cast<std::uint8_t>(x[static_cast<std::size_t>(s)]);
        const double p = ergm_conditional_prob(g, slot, beta1, beta2);
        return FiniteDistribution({1.0 - p, p});
    };
    return model;
}

// ------------------------------------------------- sampling without replacement

IndexSample weighted_swr_sample(const FiniteDistribution& p, int n, SplitRng& rng,
                                SwrVariant variant) {
    const int N = p.support_size();
    if (n < 1 || n > N) throw DomainError("weighted_swr_sample: need 1 <= n <= N");
    for (int i = 0; i < N; ++i)
        if (!(p.prob(i) > 0.0)) throw DomainError("weighted_swr_sample: weights must be positive");

    IndexSample sample;
    sample.N = N;
    if (variant == SwrVariant::Sequential) {
        std::vector<double> w(p.probs());
        double total = 1.0;
        for (int step = 0; step < n; ++step) {
            const double u = rng.uniform() * total;
            double acc = 0.0;
            int pick = -1;
            for (int i = 0; i < N; ++i) {
                acc += w[static_cast<std::size_t>(i)];
                if (u < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) {  // fp tail: take the last live index
                for (int i = N - 1; i >= 0; --i)
                    if (w[static_cast<std::size_t>(i)] > 0.0) {
                        pick = i;
                        break;
                    }
            }
            sample.indices.push_back(pick);
            total -= w[static_cast<std::size_t>(pick)];
            w[static_cast<std::size_t>(pick)] = 0.0;
        }
    } else {
        std::vector<std::pair<double, int>> clocks(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i)
            clocks[static_cast<std::size_t>(i)] = {rng.exponential(p.prob(i)), i};
        std::sort(clocks.begin(), clocks.end());
        for (int k = 0; k < n; ++k)
            sample.indices.push_back(clocks[static_cast<std::size_t>(k)].second);
    }
    return sample;
}

std::vector<std::pair<std::uint32_t, double>> swr_exact_subset_law(const FiniteDistribution& p,
                                                                   int n) {
    const int N = p.support_size();
    if (N > 16) throw CapacityError("swr_exact_subset_law: N too large");
    if (n < 1 || n > N) throw DomainError("swr_exact_subset_law: need 1 <= n <= N");
    std::vector<double> law(1u << N, 0.0);
    // depth-first over ordered prefixes
    struct Frame {
        std::uint32_t mask;
        double prob;
        double remaining;
        int depth;
    };
    std::vector<Frame> stack{{0u, 1.0, 1.0, 0}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.depth == n) {
            law[f.mask] += f.prob;
            continue;
        }
        for (int i = 0; i < N; ++i) {
            if (f.mask & (1u << i)) continue;
            const double pi = p.prob(i);
            stack.push_back(
                {f.mask | (1u << i), f.prob * pi / f.remaining, f.remaining - pi, f.depth + 1});
        }
    }
    std::vector<std::pair<std::uint32_t, double>> out;
    for (std::uint32_t mask = 0; mask < law.size(); ++mask)
        if (law[mask] > 0.0) out.emplace_back(mask, law[mask]);
    return out;
}

// -------------------------------------------------------- coupled Glauber chains

namespace {

std::optional<FiniteDistribution> conditional_or_throw(const ConditionalModel& model, int i,
                                                       const std::vector<int>& x) {
    auto d = model.conditional(i, x);
    if (!d) throw DomainError("coupled_glauber_step: conditional undefined at current state");
    return d;
}

}  // namespace

void coupled_glauber_step(CoupledChainState& state, const ConditionalModel& model,
                          const InterdependenceMatrix& A, SplitRng& rng) {
    const int n = model.n;
    const int i = rng.uniform_int(n);

    const auto& arow = A.entries[static_cast<std::size_t>(i)];
    // xi = e_k with probability a_{i,k}; chi indicates xi hit a disagreeing coordinate
    const double u = rng.uniform();
    double acc = 0.0;
    int xi = -1;
    for (int k = 0; k < n; ++k) {
        acc += arow[static_cast<std::size_t>(k)];
        if (u < acc) {
            xi = k;
            break;
        }
    }
    const bool chi = xi >= 0 && state.disagreement[static_cast<std::size_t>(xi)] != 0;

    double q = 0.0;
    for (int k = 0; k < n; ++k)
        if (state.disagreement[static_cast<std::size_t>(k)]) q += arow[static_cast<std::size_t>(k)];

    const auto nu1 = conditional_or_throw(model, i, state.x);
    const auto nu2 = conditional_or_throw(model, i, state.y);
    const double tv = tv_distance(*nu1, *nu2);
    if (q < tv - 1e-12)
        throw InfeasibilityError(
            "coupled_glauber_step: disagreement budget below conditional TV; the supplied "
            "matrix is not a valid interdependence matrix for this model");

    const auto parts = build_coupling_parts(*nu1, *nu2, q);
    int vx, vy;
    if (!chi) {
        vx = vy = rng.categorical(parts.b);
    } else {
        vx = rng.categorical(parts.c);
        vy = rng.categorical(parts.d);
    }
    state.x[static_cast<std::size_t>(i)] = vx;
    state.y[static_cast<std::size_t>(i)] = vy;
    state.disagreement[static_cast<std::size_t>(i)] = vx != vy ? 1 : 0;
    ++state.step;
}

static CoupledChainState make_initial(const ConditionalModel& model,
                                      const InterdependenceMatrix& A, const std::vector<int>& x0,
                                      const std::vector<int>& y0) {
    if (A.n != model.n) throw DimensionError("coupled_glauber_run: matrix/model size mismatch");
    if (A.norm_inf > 1.0 + 1e-12)
        throw DomainError("coupled_glauber_run: need ||A||_inf <= 1 for the proposal law");
    if (static_cast<int>(x0.size()) != model.n || static_cast<int>(y0.size()) != model.n)
        throw DimensionError("coupled_glauber_run: initial states have wrong length");
    CoupledChainState state;
    state.x = x0;
    state.y = y0;
    state.disagreement.assign(x0.size(), 0);
    for (std::size_t k = 0; k < x0.size(); ++k)
        state.disagreement[k] = x0[k] != y0[k] ? 1 : 0;
    state.step = 0;
    return state;
}

std::vector<CoupledChainState> coupled_glauber_run(const ConditionalModel& model,
                                                   const InterdependenceMatrix& A,
                                                   const std::vector<int>& x0,
                                                   const std::vector<int>& y0, int steps,
                                                   SplitRng& rng) {
    std::vector<CoupledChainState> trajectory;
    trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    trajectory.push_back(make_initial(model, A, x0, y0));
    for (int k = 0; k < steps; ++k) {
        CoupledChainState next = trajectory.back();
        coupled_glauber_step(next, model, A, rng);
        trajectory.push_back(std::move(next));
    }
    return trajectory;
}

std::vector<int> coupled_disagreement_curve(const ConditionalModel& model,
                                            const InterdependenceMatrix& A,
                                            const std::vector<int>& x0,
                                            const std::vector<int>& y0, int steps,
                                            SplitRng& rng) {
    CoupledChainState state = make_initial(model, A, x0, y0);
    std::vector<int> curve;
    curve.reserve(static_cast<std::size_t>(steps) + 1);
    curve.push_back(state.disagreement_count());
    for (int k = 0; k < steps; ++k) {
        coupled_glauber_step(state, model, A, rng);
        curve.push_back(state.disagreement_count());
    }
    return curve;
}

}  // namespace conc
