#include "angclust/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "angclust/error.hpp"

namespace angclust {

Allies find_allies(const AngleCache& angles) {
    const std::size_t n = angles.size();
    if (n < 3) throw DegenerateInput("ally search needs at least 3 points");
    Allies allies;
    allies.first.resize(n);
    allies.second.resize(n);
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double best1 = inf, best2 = inf;
        std::size_t idx1 = n, idx2 = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double a = angles.acute(i, j);
            if (a < best1) {
                best2 = best1;
                idx2 = idx1;
                best1 = a;
                idx1 = j;
            } else if (a < best2) {
                best2 = a;
                idx2 = j;
            }
        }
        allies.first[i] = idx1;
        allies.second[i] = idx2;
    }
    return allies;
}

std::vector<int> initial_labels(const AngleCache& angles, std::uint64_t seed) {
    const std::size_t n = angles.size();
    if (n < 3) throw DegenerateInput("initial clustering needs at least 3 points, got " + std::to_string(n));
    const Allies allies = find_allies(angles);

    std::mt19937_64 rng(seed);
    const std::size_t start = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);

    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i = (start + s) % n;
        const std::size_t a1 = allies.first[i], a2 = allies.second[i];
        if (label[i] < 0 && label[a1] < 0 && label[a2] < 0) {
            label[i] = label[a1] = label[a2] = next++;
        }
    }

    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i = (start + s) % n;
        if (label[i] >= 0) continue;
        const std::size_t a1 = allies.first[i], a2 = allies.second[i];
        if (label[a1] >= 0) {
            label[i] = label[a1];
        } else if (label[a2] >= 0) {
            label[i] = label[a2];
        } else {
            // Both allies still unplaced: fall back to the nearest placed point.
            double best = std::numeric_limits<double>::infinity();
            std::size_t nearest = n;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || label[j] < 0) continue;
                const double a = angles.acute(i, j);
                if (a < best) {
                    best = a;
                    nearest = j;
                }
            }
            label[i] = label[nearest];
        }
    }
    return label;
}

Clustering initial_clustering(const AngleCache& angles, std::uint64_t seed) {
    const std::vector<int> labels = initial_labels(angles, seed);
    return Clustering::from_labels(labels, angles);
}

double threshold(std::size_t t) {
    if (t < 2) return std::numeric_limits<double>::infinity();
    return 1.0 / std::sqrt(static_cast<double>(t - 1));
}

std::vector<int> Dendrogram::labels_at(std::size_t k) const {
    if (k == 0 || k > initial_clusters || initial_clusters - k > merges.size()) {
        throw Error("dendrogram does not contain a clustering with K = " + std::to_string(k));
    }
    std::vector<std::size_t> parent(initial_clusters);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t s) {
        while (parent[s] != s) s = parent[s] = parent[parent[s]];
        return s;
    };
    for (std::size_t m = 0; m < initial_clusters - k; ++m) {
        const auto [a, b] = merges[m];
        parent[root(b)] = root(a);
    }
    std::vector<int> dense(initial_clusters, -1);
    int next = 0;
    for (std::size_t s = 0; s < initial_clusters; ++s) {
        if (root(s) == s) dense[s] = next++;
    }
    std::vector<int> out(initial_slot.size());
    for (std::size_t i = 0; i < initial_slot.size(); ++i) out[i] = dense[root(initial_slot[i])];
    return out;
}

MergeEngine::MergeEngine(Clustering initial, MergeOptions options)
    : clustering_(std::move(initial)), options_(options), slots_(clustering_.slot_count()) {
    if (clustering_.cluster_count() < 2) throw DegenerateInput("merging needs at least two clusters");
    for (const std::size_t s : clustering_.active_slots()) {
        if (clustering_.members(s).size() < 3) {
            throw TooFewAngles("initial cluster with " + std::to_string(clustering_.members(s).size()) +
                               " points; every cluster needs at least 3");
        }
    }

    dendrogram_.initial_clusters = slots_;
    dendrogram_.initial_slot.resize(clustering_.point_count());
    for (std::size_t i = 0; i < clustering_.point_count(); ++i) dendrogram_.initial_slot[i] = clustering_.slot_of(i);

    d_.assign(slots_ * slots_, std::numeric_limits<double>::quiet_NaN());
    eta_.assign(slots_, std::numeric_limits<double>::infinity());
    partner_.assign(slots_, 0);
    const std::vector<std::size_t> active = clustering_.active_slots();
    std::vector<MomentPair> within(slots_);
    for (const std::size_t a : active) within[a] = moments(clustering_.within(a));
    // Both directions share the between moments. Tiling keeps the transposed
    // writes in cache once P gets large.
    constexpr std::size_t tile = 64;
    const std::size_t m = active.size();
    for (std::size_t i0 = 0; i0 < m; i0 += tile) {
        for (std::size_t j0 = i0; j0 < m; j0 += tile) {
            for (std::size_t i = i0; i < std::min(i0 + tile, m); ++i) {
                const std::size_t a = active[i];
                for (std::size_t j = std::max(j0, i + 1); j < std::min(j0 + tile, m); ++j) {
                    const std::size_t b = active[j];
                    const MomentPair between = moments(clustering_.between(a, b));
                    d_[a * slots_ + b] = bhattacharyya_empirical(within[a], between);
                    d_[b * slots_ + a] = bhattacharyya_empirical(within[b], between);
                }
            }
        }
    }
    for (const std::size_t a : active) rescan(a);
}

void MergeEngine::rescan(std::size_t slot) {
    bool seen = false;
    for (std::size_t l = 0; l < slots_; ++l) {
        if (l == slot || !clustering_.active(l)) continue;
        const double v = dist(slot, l);
        if (!seen || v < eta_[slot]) {
            eta_[slot] = v;
            partner_[slot] = l;
            seen = true;
        }
    }
}

ScoreTable MergeEngine::scores() const {
    std::vector<std::size_t> dense(slots_, 0);
    std::size_t next = 0;
    for (std::size_t s = 0; s < slots_; ++s) {
        if (clustering_.active(s)) dense[s] = next++;
    }
    ScoreTable t;
    bool seen = false;
    for (std::size_t s = 0; s < slots_; ++s) {
        if (!clustering_.active(s)) continue;
        t.eta.push_back(eta_[s]);
        t.partner.push_back(dense[partner_[s]]);
        if (!seen || eta_[s] < t.gamma) {
            t.gamma = eta_[s];
            t.first = dense[s];
            t.second = dense[partner_[s]];
            seen = true;
        }
    }
    return t;
}

TraceEntry MergeEngine::step() {
    if (done()) throw Error("merge engine already reached a single cluster");

    std::size_t best = slots_;
    for (std::size_t s = 0; s < slots_; ++s) {
        if (clustering_.active(s) && (best == slots_ || eta_[s] < eta_[best])) best = s;
    }
    const std::size_t mate = partner_[best];

    TraceEntry e;
    e.K = clustering_.cluster_count();
    e.gamma = eta_[best];
    e.t = t_pair(clustering_.members(best).size(), clustering_.members(mate).size());
    e.zeta = threshold(e.t);
    {
        std::vector<std::size_t> dense(slots_, 0);
        std::size_t next = 0;
        for (std::size_t s = 0; s < slots_; ++s) {
            if (clustering_.active(s)) dense[s] = next++;
        }
        e.first = dense[best];
        e.second = dense[mate];
        if (options_.keep_scores) {
            for (std::size_t s = 0; s < slots_; ++s) {
                if (!clustering_.active(s)) continue;
                e.eta.push_back(eta_[s]);
                e.partner.push_back(dense[partner_[s]]);
            }
        }
    }

    const std::size_t kept = clustering_.merge(best, mate);
    const std::size_t gone = kept == best ? mate : best;
    dendrogram_.merges.emplace_back(kept, gone);
    if (done()) return e;

    const MomentPair kept_within = moments(clustering_.within(kept));
    for (std::size_t l = 0; l < slots_; ++l) {
        if (l == kept || !clustering_.active(l)) continue;
        const MomentPair between = moments(clustering_.between(kept, l));
        d_[kept * slots_ + l] = bhattacharyya_empirical(kept_within, between);
        d_[l * slots_ + kept] = bhattacharyya_empirical(moments(clustering_.within(l)), between);
    }
    rescan(kept);
    for (std::size_t l = 0; l < slots_; ++l) {
        if (l == kept || !clustering_.active(l)) continue;
        if (partner_[l] == kept || partner_[l] == gone) {
            rescan(l);
            continue;
        }
        const double v = dist(l, kept);
        if (v < eta_[l] || (v == eta_[l] && kept < partner_[l])) {
            eta_[l] = v;
            partner_[l] = kept;
        }
    }
    return e;
}

MergeResult run_merging(const Clustering& initial, MergeOptions options) {
    MergeEngine engine(initial, options);
    MergeResult result;
    result.trace.reserve(initial.cluster_count() - 1);
    while (!engine.done()) result.trace.push_back(engine.step());
    result.dendrogram = engine.dendrogram();
    return result;
}

SelectionResult select_clustering(const MergeTrace& trace, const Dendrogram& dendrogram) {
    SelectionResult r;
    for (const TraceEntry& e : trace) {
        if (e.gamma > e.zeta && (!r.crossed || e.K > r.L_hat)) {
            r.L_hat = e.K;
            r.crossed = true;
        }
    }
    if (r.crossed) {
        r.labels = dendrogram.labels_at(r.L_hat);
    } else {
        r.L_hat = 1;
        r.labels.assign(dendrogram.initial_slot.size(), 0);
    }
    return r;
}

}  // namespace angclust
