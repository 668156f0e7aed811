#include "conc/convexdist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include <json.hpp>

#include "conc/errors.hpp"
#include "conc/parallel.hpp"
#include "conc/stats.hpp"

namespace conc {

namespace {

// disagreement indicator vectors of S against x, deduplicated
std::vector<std::vector<double>> indicator_vertices(const ConvexDistanceInstance& inst) {
    if (inst.S.empty()) throw DomainError("convex_distance: S must be non-empty");
    if (static_cast<int>(inst.x.size()) != inst.n)
        throw DimensionError("convex_distance: x has wrong length");
    std::vector<std::vector<double>> vertices;
    std::map<std::vector<double>, int> seen;
    for (const auto& y : inst.S) {
        if (static_cast<int>(y.size()) != inst.n)
            throw DimensionError("convex_distance: member of S has wrong length");
        std::vector<double> v(static_cast<std::size_t>(inst.n), 0.0);
        for (int i = 0; i < inst.n; ++i)
            v[static_cast<std::size_t>(i)] =
                inst.x[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
        if (seen.emplace(v, 1).second) vertices.push_back(std::move(v));
    }
    return vertices;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// least-norm affine combination of the given vertices: solve
// [G 1; 1^T 0] [w; mu] = [0; 1]; returns false when the system is singular
bool affine_min_norm(const std::vector<const std::vector<double>*>& pts,
                     std::vector<double>& weights) {
    const std::size_t k = pts.size();
    std::vector<std::vector<double>> m(k + 1, std::vector<double>(k + 2, 0.0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = dot(*pts[i], *pts[j]);
    for (std::size_t i = 0; i < k; ++i) {
        m[i][k] = 1.0;
        m[k][i] = 1.0;
    }
    m[k][k + 1] = 1.0;
    // Gaussian elimination with partial pivoting
    const std::size_t dim = k + 1;
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        if (std::fabs(m[piv][col]) < 1e-12) return false;
        std::swap(m[col], m[piv]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (std::size_t c2 = col; c2 <= dim; ++c2) m[r][c2] -= f * m[col][c2];
        }
    }
    weights.resize(k);
    for (std::size_t i = 0; i < k; ++i) weights[i] = m[i][k + 1] / m[i][i];
    return true;
}

struct MinNormSolution {
    std::vector<double> point;             // the min-norm point itself
    std::vector<double> vertex_weights;    // convex weights over the vertex list
};

// away-step Frank-Wolfe fallback, iteration cap 1e5
MinNormSolution min_norm_point_fw(const std::vector<std::vector<double>>& vertices) {
    const std::size_t nv = vertices.size();
    const std::size_t dim = vertices[0].size();
    std::vector<double> w(nv, 0.0);
    // start from the shortest vertex
    std::size_t start = 0;
    double best = dot(vertices[0], vertices[0]);
    for (std::size_t v = 1; v < nv; ++v) {
        const double d2 = dot(vertices[v], vertices[v]);
        if (d2 < best) {
            best = d2;
            start = v;
        }
    }
    w[start] = 1.0;
    std::vector<double> x = vertices[start];
    for (int iter = 0; iter < 100000; ++iter) {
        // gradient is 2x; FW vertex minimizes <x, v>, away vertex maximizes over support
        std::size_t fw = 0, away = 0;
        double fw_val = std::numeric_limits<double>::infinity();
        double away_val = -std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < nv; ++v) {
            const double d = dot(x, vertices[v]);
            if (d < fw_val) {
                fw_val = d;
                fw = v;
            }
            if (w[v] > 1e-15 && d > away_val) {
                away_val = d;
                away = v;
            }
        }
        const double xx = dot(x, x);
        if (xx - fw_val <= 1e-12 * std::max(1.0, xx)) break;
        const bool use_fw = (xx - fw_val) >= (away_val - xx);
        std::vector<double> dir(dim);
        double gamma_max;
        if (use_fw) {
            for (std::size_t i = 0; i < dim; ++i) dir[i] = vertices[fw][i] - x[i];
            gamma_max = 1.0;
        } else {
            for (std::size_t i = 0; i < dim; ++i) dir[i] = x[i] - vertices[away][i];
            gamma_max = w[away] / (1.0 - w[away] + 1e-300);
        }
        const double dd = dot(dir, dir);
        if (dd <= 0.0) break;
        double gamma = -dot(x, dir) / dd;
        gamma = std::clamp(gamma, 0.0, gamma_max);
        if (gamma <= 0.0) break;
        if (use_fw) {
            for (std::size_t v = 0; v < nv; ++v) w[v] *= (1.0 - gamma);
            w[fw] += gamma;
        } else {
            for (std::size_t v = 0; v < nv; ++v) w[v] *= (1.0 + gamma);
            w[away] -= gamma;
            if (w[away] < 0.0) w[away] = 0.0;
        }
        for (std::size_t i = 0; i < dim; ++i) x[i] += gamma * dir[i];
        // refresh x from the weights occasionally to kill drift
        if (iter % 64 == 63) {
            std::fill(x.begin(), x.end(), 0.0);
            double tot = 0.0;
            for (std::size_t v = 0; v < nv; ++v) tot += w[v];
            for (std::size_t v = 0; v < nv; ++v) {
                if (w[v] <= 0.0) continue;
                w[v] /= tot;
                for (std::size_t i = 0; i < dim; ++i) x[i] += w[v] * vertices[v][i];
            }
        }
    }
    return {x, w};
}

// Wolfe's min-norm-point algorithm over the vertex list
MinNormSolution min_norm_point(const std::vector<std::vector<double>>& vertices) {
    const std::size_t nv = vertices.size();
    const std::size_t dim = vertices[0].size();

    std::size_t start = 0;
    double best = dot(vertices[0], vertices[0]);
    for (std::size_t v = 1; v < nv; ++v) {
        const double d2 = dot(vertices[v], vertices[v]);
        if (d2 < best) {
            best = d2;
            start = v;
        }
    }
    std::vector<std::size_t> corral{start};
    std::vector<double> w{1.0};
    std::vector<double> x = vertices[start];

    bool converged = false;
    for (int major = 0; major < 10000 && !converged; ++major) {
        // linear minimization over all vertices
        std::size_t q = 0;
        double qv = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < nv; ++v) {
            const double d = dot(x, vertices[v]);
            if (d < qv) {
                qv = d;
                q = v;
            }
        }
        const double xx = dot(x, x);
        if (xx - qv <= 1e-12 * std::max(1.0, xx)) {
            converged = true;
            break;
        }
        if (std::find(corral.begin(), corral.end(), q) != corral.end()) {
            converged = true;  // numerically stalled; gap already tiny
            break;
        }
        corral.push_back(q);
        w.push_back(0.0);

        // minor cycle: move to the affine minimizer, deleting until feasible
        for (int minor = 0; minor < 1000; ++minor) {
            std::vector<const std::vector<double>*> pts;
            pts.reserve(corral.size());
            for (std::size_t idx : corral) pts.push_back(&vertices[idx]);
            std::vector<double> y;
            if (!affine_min_norm(pts, y)) {
                // affinely dependent corral: hand the instance to the
                // away-step fallback instead of fighting the singular system
                return min_norm_point_fw(vertices);
            }
            const bool feasible =
                std::all_of(y.begin(), y.end(), [](double v) { return v >= -1e-12; });
            if (feasible) {
                w = y;
                break;
            }
            // line search toward y until the first weight hits zero
            double theta = 1.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (y[i] < 0.0) theta = std::min(theta, w[i] / (w[i] - y[i]));
            for (std::size_t i = 0; i < w.size(); ++i)
                w[i] = (1.0 - theta) * w[i] + theta * y[i];
            // delete zeroed vertices
            for (std::size_t i = w.size(); i-- > 0;) {
                if (w[i] <= 1e-12) {
                    corral.erase(corral.begin() + static_cast<long>(i));
                    w.erase(w.begin() + static_cast<long>(i));
                }
            }
            if (corral.empty()) break;
        }
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t i = 0; i < corral.size(); ++i)
            for (std::size_t d = 0; d < dim; ++d) x[d] += w[i] * vertices[corral[i]][d];
    }

    if (!converged) return min_norm_point_fw(vertices);

    std::vector<double> full(nv, 0.0);
    double tot = 0.0;
    for (double v : w) tot += v;
    for (std::size_t i = 0; i < corral.size(); ++i) full[corral[i]] = w[i] / std::max(tot, 1e-300);
    return {x, full};
}

}  // namespace

ConvexDistanceInstance ConvexDistanceInstance::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ConvexDistanceInstance inst;
    inst.x = j.at("x").get<std::vector<int>>();
    inst.n = static_cast<int>(inst.x.size());
    inst.S = j.at("S").get<std::vector<std::vector<int>>>();
    return inst;
}

std::string ConvexDistanceResult::to_csv() const {
    std::string out = "value\n";
    char line[64];
    std::snprintf(line, sizeof(line), "%.17g\n", value);
    out += line;
    out += "member,weight\n";
    for (std::size_t i = 0; i < weights.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%.17g\n", i, weights[i]);
        out += line;
    }
    out += "coordinate,direction\n";
    for (std::size_t i = 0; i < direction.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%.17g\n", i, direction[i]);
        out += line;
    }
    return out;
}

ConvexDistanceResult convex_distance(const ConvexDistanceInstance& inst) {
    if (inst.n > 10000 || static_cast<int>(inst.S.size()) > 10000)
        throw CapacityError("convex_distance: instance too large");
    const auto vertices = indicator_vertices(inst);
    const auto sol = min_norm_point(vertices);

    ConvexDistanceResult res;
    res.value = std::sqrt(std::max(0.0, dot(sol.point, sol.point)));

    // map deduplicated vertex weights back to the first matching member of S
    res.weights.assign(inst.S.size(), 0.0);
    std::map<std::vector<double>, std::size_t> first_member;
    for (std::size_t s = 0; s < inst.S.size(); ++s) {
        std::vector<double> v(static_cast<std::size_t>(inst.n), 0.0);
        for (int i = 0; i < inst.n; ++i)
            v[static_cast<std::size_t>(i)] =
                inst.x[static_cast<std::size_t>(i)] != inst.S[s][static_cast<std::size_t>(i)]
                    ? 1.0
                    : 0.0;
        first_member.emplace(std::move(v), s);
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        if (sol.vertex_weights[v] <= 0.0) continue;
        res.weights[first_member.at(vertices[v])] += sol.vertex_weights[v];
    }

    res.direction.assign(static_cast<std::size_t>(inst.n), 0.0);
    if (res.value > 1e-12) {
        for (int i = 0; i < inst.n; ++i)
            res.direction[static_cast<std::size_t>(i)] =
                std::max(0.0, sol.point[static_cast<std::size_t>(i)]) / res.value;
    } else {
        // any unit direction is optimal at distance zero
        const double u = 1.0 / std::sqrt(static_cast<double>(inst.n));
        std::fill(res.direction.begin(), res.direction.end(), u);
    }
    return res;
}

double convex_distance_oracle(const ConvexDistanceInstance& inst) {
    if (inst.S.size() > 6) throw CapacityError("convex_distance_oracle: |S| must be <= 6");
    const auto vertices = indicator_vertices(inst);
    const std::size_t nv = vertices.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask < (1u << nv); ++mask) {
        std::vector<const std::vector<double>*> pts;
        for (std::size_t v = 0; v < nv; ++v)
            if (mask & (1u << v)) pts.push_back(&vertices[v]);
        std::vector<double> wts;
        if (pts.size() == 1) {
            wts = {1.0};
        } else if (!affine_min_norm(pts, wts)) {
            continue;
        }
        if (!std::all_of(wts.begin(), wts.end(), [](double w) { return w >= -1e-10; })) continue;
        std::vector<double> point(vertices[0].size(), 0.0);
        for (std::size_t k = 0; k < pts.size(); ++k)
            for (std::size_t d = 0; d < point.size(); ++d) point[d] += wts[k] * (*pts[k])[d];
        best = std::min(best, std::sqrt(std::max(0.0, dot(point, point))));
    }
    return best;
}

double weighted_hamming_distance(const std::vector<int>& x,
                                 const std::vector<std::vector<int>>& S,
                                 const std::vector<double>& c) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : S) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] != y[i]) d += c[i];
        best = std::min(best, d);
    }
    return best;
}

LipschitzCheckReport dt_squared_lipschitz_check(const ProductSpace& space,
                                                const std::vector<std::vector<int>>& S) {
    if (space.size() > 10000) throw CapacityError("dt_squared_lipschitz_check: space too large");
    const auto points = space.enumerate();
    const int n = space.n();
    std::vector<double> d2(points.size());
    std::vector<std::vector<double>> alpha(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        ConvexDistanceInstance inst{n, points[p], S};
        const auto res = convex_distance(inst);
        d2[p] = res.value * res.value;
        alpha[p].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            alpha[p][static_cast<std::size_t>(i)] =
                2.0 * res.value * res.direction[static_cast<std::size_t>(i)];
    }

    LipschitzCheckReport rep;
    rep.worst_one_coord = 0.0;
    rep.worst_pair_margin = std::numeric_limits<double>::infinity();
    rep.worst_budget_margin = std::numeric_limits<double>::infinity();

    for (std::size_t p = 0; p < points.size(); ++p) {
        double a2 = 0.0;
        for (double a : alpha[p]) a2 += a * a;
        rep.worst_budget_margin = std::min(rep.worst_budget_margin, 4.0 * d2[p] - a2);
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t q = 0; q < points.size(); ++q) {
            if (p == q) continue;
            int diff = 0;
            double rhs = 0.0;
            for (int i = 0; i < n; ++i) {
                if (points[p][static_cast<std::size_t>(i)] != points[q][static_cast<std::size_t>(i)]) {
                    ++diff;
                    rhs += alpha[p][static_cast<std::size_t>(i)];
                }
            }
            if (diff == 1)
                rep.worst_one_coord = std::max(rep.worst_one_coord, std::fabs(d2[p] - d2[q]));
            rep.worst_pair_margin = std::min(rep.worst_pair_margin, rhs - (d2[p] - d2[q]));
        }
    }
    rep.one_coord_ok = rep.worst_one_coord <= 1.0 + 1e-9;
    rep.pair_ok = rep.worst_pair_margin >= -1e-7;
    rep.budget_ok = rep.worst_budget_margin >= -1e-9;
    return rep;
}

double exact_exp_moment(const std::vector<std::vector<int>>& points,
                        const std::vector<double>& probs,
                        const std::vector<std::vector<int>>& S, double rate) {
    if (points.size() != probs.size()) throw DimensionError("exact_exp_moment: size mismatch");
    double e = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (probs[p] <= 0.0) continue;
        ConvexDistanceInstance inst{static_cast<int>(points[p].size()), points[p], S};
        const auto res = convex_distance(inst);
        e += probs[p] * std::exp(rate * res.value * res.value);
    }
    return e;
}

std::string ConvexExperimentReport::to_csv() const {
    std::string out = "lhs,ci_low,ci_high,rhs,rate,replicas,satisfied\n";
    char line[200];
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", lhs, lhs_ci_low,
                  lhs_ci_high, rhs, rate, replicas, satisfied ? 1 : 0);
    out += line;
    return out;
}

ConvexExperimentReport convex_distance_experiment(
    const std::function<std::vector<int>(SplitRng&)>& sampler,
    const std::vector<std::vector<int>>& S, double mu_S, double rate, int replicas,
    std::uint64_t seed, int threads) {
    if (!(mu_S > 0.0)) throw DegenerateLawError("convex_distance_experiment: mu(S) must be > 0");
    if (replicas < 1) throw DomainError("convex_distance_experiment: replicas >= 1");
    std::vector<double> vals(static_cast<std::size_t>(replicas));
    parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t r) {
        SplitRng rng(seed, r);
        const auto x = sampler(rng);
        ConvexDistanceInstance inst{static_cast<int>(x.size()), x, S};
        const auto res = convex_distance(inst);
        vals[r] = std::exp(rate * res.value * res.value);
    });
    double m = 0.0;
    for (double v : vals) m += v;
    m /= replicas;
    double var = 0.0;
    for (double v : vals) var += (v - m) * (v - m);
    var /= std::max(1, replicas - 1);
    const double z = normal_quantile(0.995);
    const double half = z * std::sqrt(var / replicas);

    ConvexExperimentReport rep;
    rep.lhs = m;
    rep.lhs_ci_low = m - half;
    rep.lhs_ci_high = m + half;
    rep.rhs = 1.0 / mu_S;
    rep.rate = rate;
    rep.replicas = replicas;
    rep.satisfied = rep.lhs_ci_low <= rep.rhs;
    return rep;
}

}  // namespace conc
