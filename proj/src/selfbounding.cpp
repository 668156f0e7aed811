#include "conc/selfbounding.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "conc/errors.hpp"
#include "conc/parallel.hpp"

namespace conc {

namespace {

constexpr std::int64_t kPairBudget = 100'000'000;
constexpr double kTol = 1e-12;

struct BlockResult {
    double margin = std::numeric_limits<double>::infinity();
    std::int64_t x_idx = -1;
    std::int64_t y_idx = -1;
    std::int64_t pairs = 0;
};

}  // namespace

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["holds"] = holds;
    j["checked_pairs"] = checked_pairs;
    if (worst_pair) {
        j["worst_pair"] = {
            {"x", worst_pair->x}, {"y", worst_pair->y}, {"margin", worst_pair->margin}};
    } else {
        j["worst_pair"] = nullptr;
    }
    return j.dump();
}

VerificationReport verify_star(const WitnessedFunction& w, const ProductSpace& space,
                               int threads) {
    const std::uint64_t m = space.size();
    if (m * m > kPairBudget) throw CapacityError("verify_star: pair budget exceeded");
    const auto points = space.enumerate();
    const int n = space.n();

    std::vector<double> g(points.size());
    std::vector<std::vector<double>> alpha(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        g[p] = w.g(points[p]);
        alpha[p] = w.alpha(points[p]);
        if (static_cast<int>(alpha[p].size()) != n)
            throw DimensionError("verify_star: witness vector has wrong length");
    }

    const bool weak = w.variant == SelfBoundingVariant::WSTAR;

    // per-point conditions first: witness range and the budget (iii)/(iii')
    BlockResult point_worst;
    for (std::size_t p = 0; p < points.size(); ++p) {
        double sum = 0.0;
        double range_margin = std::numeric_limits<double>::infinity();
        for (double ai : alpha[p]) {
            sum += weak ? ai * ai : ai;
            range_margin = std::min(range_margin, ai);            // alpha_i >= 0
            if (!weak) range_margin = std::min(range_margin, 1.0 - ai);  // alpha_i <= 1
        }
        const double budget_margin = w.a * g[p] + w.b - sum;
        const double margin = std::min(range_margin, budget_margin);
        if (margin < point_worst.margin) {
            point_worst.margin = margin;
            point_worst.x_idx = static_cast<std::int64_t>(p);
            point_worst.y_idx = static_cast<std::int64_t>(p);
        }
    }

    // pairwise condition (ii) over all ordered pairs, parallel over x blocks
    std::vector<BlockResult> blocks(points.size());
    parallel_for(points.size(), threads, [&](std::size_t px) {
        BlockResult best;
        const auto& ax = alpha[px];
        const auto& x = points[px];
        for (std::size_t py = 0; py < points.size(); ++py) {
            if (px == py) continue;
            double rhs = 0.0;
            const auto& y = points[py];
            for (int i = 0; i < n; ++i)
                if (x[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)])
                    rhs += ax[static_cast<std::size_t>(i)];
            const double margin = rhs - (g[px] - g[py]);
            ++best.pairs;
            if (margin < best.margin) {
                best.margin = margin;
                best.x_idx = static_cast<std::int64_t>(px);
                best.y_idx = static_cast<std::int64_t>(py);
            }
        }
        blocks[px] = best;
    });

    BlockResult worst = point_worst;
    std::int64_t pairs = 0;
    for (const auto& b : blocks) {
        pairs += b.pairs;
        if (b.x_idx >= 0 && b.margin < worst.margin) worst = b;
    }

    VerificationReport report;
    report.checked_pairs = pairs;
    report.holds = worst.margin >= -kTol;
    if (worst.x_idx >= 0) {
        report.worst_pair = VerificationReport::WorstPair{
            points[static_cast<std::size_t>(worst.x_idx)],
            points[static_cast<std::size_t>(worst.y_idx)], worst.margin};
    }
    return report;
}

VerificationReport verify_sb(const std::function<double(const std::vector<int>&)>& g,
                             const ProductSpace& space, double a, double b, bool weak,
                             int threads) {
    const std::uint64_t m = space.size();
    if (m * m > kPairBudget) throw CapacityError("verify_sb: pair budget exceeded");
    const auto points = space.enumerate();
    const int n = space.n();

    std::vector<double> gv(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) gv[p] = g(points[p]);

    // strides of the lexicographic enumeration (last coordinate fastest)
    std::vector<std::int64_t> stride(static_cast<std::size_t>(n), 1);
    for (int i = n - 2; i >= 0; --i)
        stride[static_cast<std::size_t>(i)] =
            stride[static_cast<std::size_t>(i + 1)] * space.alphabet_sizes[static_cast<std::size_t>(i + 1)];

    std::vector<BlockResult> blocks(points.size());
    parallel_for(points.size(), threads, [&](std::size_t p) {
        BlockResult best;
        double sum = 0.0;
        double cond1_margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const int mi = space.alphabet_sizes[static_cast<std::size_t>(i)];
            const int xi = points[p][static_cast<std::size_t>(i)];
            const std::int64_t base =
                static_cast<std::int64_t>(p) - xi * stride[static_cast<std::size_t>(i)];
            double inf = std::numeric_limits<double>::infinity();
            for (int v = 0; v < mi; ++v)
                inf = std::min(inf, gv[static_cast<std::size_t>(
                                        base + v * stride[static_cast<std::size_t>(i)])]);
            const double diff = gv[p] - inf;  // g - g_i, nonnegative by construction
            sum += weak ? diff * diff : diff;
            if (!weak) cond1_margin = std::min(cond1_margin, 1.0 - diff);
            ++best.pairs;
        }
        const double budget_margin = a * gv[p] + b - sum;
        best.margin = std::min(budget_margin, cond1_margin);
        best.x_idx = static_cast<std::int64_t>(p);
        best.y_idx = static_cast<std::int64_t>(p);
        blocks[p] = best;
    });

    BlockResult worst;
    std::int64_t pairs = 0;
    for (const auto& blk : blocks) {
        pairs += blk.pairs;
        if (blk.x_idx >= 0 && blk.margin < worst.margin) worst = blk;
    }
    VerificationReport report;
    report.checked_pairs = pairs;
    report.holds = worst.margin >= -kTol;
    if (worst.x_idx >= 0) {
        report.worst_pair = VerificationReport::WorstPair{
            points[static_cast<std::size_t>(worst.x_idx)],
            points[static_cast<std::size_t>(worst.y_idx)], worst.margin};
    }
    return report;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

std::vector<double> subgraph_witness(const EdgeGraph& x, const GraphMotif& motif) {
    const auto counts = subgraph_edge_counts(x, motif);
    const double scale = binomial(x.n_vertices - 2, motif.n_vertices - 2);
    std::vector<double> alpha(counts.size());
    for (std::size_t s = 0; s < counts.size(); ++s)
        alpha[s] = static_cast<double>(counts[s]) / scale;
    return alpha;
}

}  // namespace conc
