#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "angclust/clustering.hpp"
#include "angclust/geometry.hpp"

namespace angclust {

/// The two nearest points of every point under the acute angle acos(|x_i . x_j|).
/// Ties go to the smaller index.
struct Allies {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};

Allies find_allies(const AngleCache& angles);

/// Parameter-free initial clustering. Pass 1 walks the points from a seeded random
/// start and forms {point, ally1, ally2} whenever all three are unallocated. Pass 2
/// walks the same order and places each leftover point in the cluster of its first
/// ally, else of its second ally, else of its nearest allocated point. Every
/// cluster ends with at least three points. Labels are 0..P-1 in formation order.
std::vector<int> initial_labels(const AngleCache& angles, std::uint64_t seed);

Clustering initial_clustering(const AngleCache& angles, std::uint64_t seed);

/// zeta(t) = 1 / sqrt(t - 1), or +infinity when t < 2.
double threshold(std::size_t t);

struct TraceEntry {
    std::size_t K = 0;
    double gamma = 0.0;
    double zeta = 0.0;
    std::size_t t = 0;
    /// Mergeable pair as dense cluster ids of C_K (first attains gamma).
    std::size_t first = 0;
    std::size_t second = 0;
    /// Per-cluster scores and partners of C_K, dense ids. Empty unless requested.
    std::vector<double> eta;
    std::vector<std::size_t> partner;
};

using MergeTrace = std::vector<TraceEntry>;

/// Compact record of the whole merge sequence: the initial slot of every point and
/// the slot pair merged at each step (lower slot survives).
struct Dendrogram {
    std::vector<std::size_t> initial_slot;
    std::size_t initial_clusters = 0;
    std::vector<std::pair<std::size_t, std::size_t>> merges;

    /// Dense labels of C_K for any K in [P - merges.size(), P].
    std::vector<int> labels_at(std::size_t k) const;
};

struct MergeOptions {
    bool keep_scores = false;
};

/// Runs the merge loop one step at a time, maintaining the asymmetric distance
/// matrix, the scores and the partners incrementally. A merge touches only the
/// statistics of the merged pair, one row and one column of distances, and the
/// rows whose partner was consumed.
class MergeEngine {
public:
    explicit MergeEngine(Clustering initial, MergeOptions options = {});

    bool done() const { return clustering_.cluster_count() < 2; }
    TraceEntry step();

    const Clustering& clustering() const { return clustering_; }
    const Dendrogram& dendrogram() const { return dendrogram_; }

    /// Scores of the current clustering over dense ids, as maintained incrementally.
    ScoreTable scores() const;

private:
    double dist(std::size_t a, std::size_t b) const { return d_[a * slots_ + b]; }
    void rescan(std::size_t slot);

    Clustering clustering_;
    MergeOptions options_;
    Dendrogram dendrogram_;
    std::size_t slots_ = 0;
    std::vector<double> d_;
    std::vector<double> eta_;
    std::vector<std::size_t> partner_;
};

struct MergeResult {
    MergeTrace trace;
    Dendrogram dendrogram;
};

/// Merges from K = P down to K = 2 (trace has P - 1 entries) and then the final pair,
/// so the dendrogram covers every clustering C_P .. C_1.
MergeResult run_merging(const Clustering& initial, MergeOptions options = {});

struct SelectionResult {
    std::size_t L_hat = 1;
    bool crossed = false;
    std::vector<int> labels;
};

/// L_hat = max{K : gamma_K > zeta_K}. Without a crossing, L_hat = 1 and every point
/// lands in one cluster.
SelectionResult select_clustering(const MergeTrace& trace, const Dendrogram& dendrogram);

}  // namespace angclust
