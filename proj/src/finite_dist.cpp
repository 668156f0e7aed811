#include "conc/finite_dist.hpp"

#include <algorithm>
#include <cmath>

namespace conc {

namespace {
constexpr double kSumTol = 1e-12;
}

FiniteDistribution::FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw DomainError("FiniteDistribution: empty support");
    double sum = 0.0;
    for (double& p : probs_) {
        if (p < -kSumTol) throw DomainError("FiniteDistribution: negative probability");
        if (p < 0.0) p = 0.0;
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTol)
        throw DomainError("FiniteDistribution: probabilities do not sum to 1");
}

FiniteDistribution FiniteDistribution::from_weights(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw DomainError("from_weights: negative weight");
        total += w;
    }
    if (!(total > 0.0)) throw DomainError("from_weights: total weight must be positive");
    std::vector<double> probs(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) probs[i] = weights[i] / total;
    return FiniteDistribution(std::move(probs));
}

double tv_distance(const FiniteDistribution& p, const FiniteDistribution& q) {
    if (p.support_size() != q.support_size())
        throw DimensionError("tv_distance: mismatched support sizes");
    double s = 0.0;
    for (int i = 0; i < p.support_size(); ++i) s += std::fabs(p.prob(i) - q.prob(i));
    return 0.5 * s;
}

double CouplingTable::off_diagonal_mass() const {
    double s = 0.0;
    for (std::size_t x = 0; x < joint.size(); ++x)
        for (std::size_t y = 0; y < joint[x].size(); ++y)
            if (x != y) s += joint[x][y];
    return s;
}

std::vector<double> CouplingTable::row_marginal() const {
    std::vector<double> r(joint.size(), 0.0);
    for (std::size_t x = 0; x < joint.size(); ++x)
        for (double v : joint[x]) r[x] += v;
    return r;
}

std::vector<double> CouplingTable::col_marginal() const {
    std::vector<double> c(joint.empty() ? 0 : joint[0].size(), 0.0);
    for (const auto& row : joint)
        for (std::size_t y = 0; y < row.size(); ++y) c[y] += row[y];
    return c;
}

CouplingParts build_coupling_parts(const FiniteDistribution& p,
                                   const FiniteDistribution& q_dist, double q) {
    if (p.support_size() != q_dist.support_size())
        throw DimensionError("build_coupling: mismatched support sizes");
    if (q > 1.0 + kSumTol) throw DomainError("build_coupling: q must be <= 1");
    q = std::min(q, 1.0);
    const double tv = tv_distance(p, q_dist);
    if (q < tv - kSumTol)
        throw InfeasibilityError("build_coupling: q below the total variation distance");
    q = std::max(q, 0.0);

    const int m = p.support_size();
    CouplingParts parts;
    parts.q = q;
    parts.b.assign(static_cast<std::size_t>(m), 0.0);
    parts.c.assign(static_cast<std::size_t>(m), 0.0);
    parts.d.assign(static_cast<std::size_t>(m), 0.0);

    // shared density: min(p1,p2)/(1-tv); only meaningful when tv < 1, and only
    // used when q < 1 (chi = 0 has positive probability)
    if (tv < 1.0) {
        for (int i = 0; i < m; ++i)
            parts.b[static_cast<std::size_t>(i)] =
                std::min(p.prob(i), q_dist.prob(i)) / (1.0 - tv);
    }
    if (q > 0.0) {
        const double shrink = tv < 1.0 ? (1.0 - q) / (1.0 - tv) : 0.0;
        for (int i = 0; i < m; ++i) {
            const double h = std::min(p.prob(i), q_dist.prob(i));
            parts.c[static_cast<std::size_t>(i)] = std::max(0.0, (p.prob(i) - h * shrink) / q);
            parts.d[static_cast<std::size_t>(i)] =
                std::max(0.0, (q_dist.prob(i) - h * shrink) / q);
        }
    }
    return parts;
}

CouplingTable build_coupling(const FiniteDistribution& p, const FiniteDistribution& q_dist,
                             double q) {
    const CouplingParts parts = build_coupling_parts(p, q_dist, q);
    const int m = p.support_size();
    CouplingTable table;
    table.q = parts.q;
    table.joint.assign(static_cast<std::size_t>(m),
                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            double v = parts.q * parts.c[static_cast<std::size_t>(x)] *
                       parts.d[static_cast<std::size_t>(y)];
            if (x == y) v += (1.0 - parts.q) * parts.b[static_cast<std::size_t>(x)];
            table.joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = v;
        }
    }
    return table;
}

Rat tv_distance_exact(const std::vector<Rat>& p, const std::vector<Rat>& q) {
    if (p.size() != q.size()) throw DimensionError("tv_distance_exact: mismatched supports");
    Rat s(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rat d = p[i] - q[i];
        if (d < Rat(0)) d = Rat(0) - d;
        s += d;
    }
    return s / Rat(2);
}

RationalCoupling build_coupling_exact(const std::vector<Rat>& p, const std::vector<Rat>& q_dist,
                                      const Rat& q) {
    if (p.size() != q_dist.size()) throw DimensionError("build_coupling_exact: mismatched supports");
    if (Rat(1) < q) throw DomainError("build_coupling_exact: q must be <= 1");
    const Rat tv = tv_distance_exact(p, q_dist);
    if (q < tv) throw InfeasibilityError("build_coupling_exact: q below total variation");

    const std::size_t m = p.size();
    RationalCoupling out;
    out.q = q;
    out.joint.assign(m, std::vector<Rat>(m, Rat(0)));
    if (q == Rat(0)) {
        for (std::size_t i = 0; i < m; ++i) out.joint[i][i] = p[i];
        return out;
    }
    std::vector<Rat> c(m), d(m);
    const Rat one(1);
    for (std::size_t i = 0; i < m; ++i) {
        const Rat h = min(p[i], q_dist[i]);
        // h * (1-q)/(1-tv) subtracted from each marginal; zero when tv = 1
        const Rat shared = tv == one ? Rat(0) : h * (one - q) / (one - tv);
        c[i] = (p[i] - shared) / q;
        d[i] = (q_dist[i] - shared) / q;
    }
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            out.joint[x][y] = q * c[x] * d[y];
            if (x == y && !(tv == one)) {
                const Rat b = min(p[x], q_dist[x]) / (one - tv);
                out.joint[x][y] += (one - q) * b;
            }
        }
    return out;
}

}  // namespace conc
