#include "angclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "angclust/error.hpp"

namespace angclust {

// Shortest augmenting path Hungarian method with potentials, O(size^3).
std::vector<std::size_t> min_cost_assignment(std::span<const std::int64_t> cost, std::size_t size) {
    if (cost.size() != size * size) throw Error("assignment cost matrix must be square");
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    const std::size_t n = size;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = p[j0];
            std::int64_t delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

namespace {

std::vector<int> compact(std::span<const int> labels, std::size_t& k) {
    std::map<int, int> ids;
    for (const int l : labels) {
        if (l < 0) throw Error("labels must be non-negative");
        ids.emplace(l, 0);
    }
    int next = 0;
    for (auto& [label, id] : ids) id = next++;
    k = ids.size();
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
    return out;
}

double entropy(const std::vector<std::size_t>& counts, double n) {
    double h = 0.0;
    for (const std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h;
}

}  // namespace

LabelPair::LabelPair(std::span<const int> truth, std::span<const int> pred) {
    if (truth.size() != pred.size()) throw Error("truth and prediction differ in length");
    if (truth.empty()) throw Error("empty label vectors");
    truth_ = compact(truth, truth_k_);
    pred_ = compact(pred, pred_k_);
}

std::vector<std::vector<std::size_t>> LabelPair::confusion() const {
    std::vector<std::vector<std::size_t>> c(pred_k_, std::vector<std::size_t>(truth_k_, 0));
    for (std::size_t i = 0; i < truth_.size(); ++i) ++c[pred_[i]][truth_[i]];
    return c;
}

double clustering_error(const LabelPair& pair) {
    const auto conf = pair.confusion();
    const std::size_t m = std::max(pair.pred_clusters(), pair.truth_clusters());
    // Max-weight matching as min-cost on (max - weight); padded cells weigh zero.
    std::int64_t top = 0;
    for (const auto& row : conf) {
        for (const std::size_t c : row) top = std::max(top, static_cast<std::int64_t>(c));
    }
    std::vector<std::int64_t> cost(m * m, top);
    for (std::size_t p = 0; p < pair.pred_clusters(); ++p) {
        for (std::size_t t = 0; t < pair.truth_clusters(); ++t) cost[p * m + t] = top - static_cast<std::int64_t>(conf[p][t]);
    }
    const std::vector<std::size_t> match = min_cost_assignment(cost, m);
    std::size_t correct = 0;
    for (std::size_t p = 0; p < pair.pred_clusters(); ++p) {
        if (match[p] < pair.truth_clusters()) correct += conf[p][match[p]];
    }
    return 1.0 - static_cast<double>(correct) / static_cast<double>(pair.size());
}

double nmi(const LabelPair& pair) {
    const double n = static_cast<double>(pair.size());
    const auto conf = pair.confusion();
    std::vector<std::size_t> pred_counts(pair.pred_clusters(), 0), truth_counts(pair.truth_clusters(), 0);
    for (std::size_t p = 0; p < conf.size(); ++p) {
        for (std::size_t t = 0; t < conf[p].size(); ++t) {
            pred_counts[p] += conf[p][t];
            truth_counts[t] += conf[p][t];
        }
    }
    const double h_pred = entropy(pred_counts, n);
    const double h_truth = entropy(truth_counts, n);
    if (h_pred + h_truth == 0.0) return 1.0;

    double mi = 0.0;
    for (std::size_t p = 0; p < conf.size(); ++p) {
        for (std::size_t t = 0; t < conf[p].size(); ++t) {
            if (conf[p][t] == 0) continue;
            const double c = static_cast<double>(conf[p][t]);
            mi += c / n * std::log(c * n / (static_cast<double>(pred_counts[p]) * static_cast<double>(truth_counts[t])));
        }
    }
    return std::clamp(mi / (0.5 * (h_pred + h_truth)), 0.0, 1.0);
}

}  // namespace angclust
