#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "angclust/angle_stats.hpp"
#include "angclust/geometry.hpp"

namespace angclust {

/// A partition of the points into clusters together with the within-cluster and
/// between-cluster angle statistics of every cluster and cluster pair.
///
/// Clusters live in slots 0..P-1, where P is the cluster count at construction.
/// Merging keeps the lower slot and retires the higher one, so the relative
/// order of the surviving clusters never changes. The dense cluster id of a
/// slot is its rank among the active slots.
class Clustering {
public:
    Clustering() = default;

    /// Builds the partition induced by `labels` (any integers; equal labels share a
    /// cluster, slots follow ascending label value) and accumulates every PairStats
    /// in one pass over the angle triangle.
    static Clustering from_labels(std::span<const int> labels, const AngleCache& angles);

    std::size_t point_count() const { return assignment_.size(); }
    std::size_t slot_count() const { return members_.size(); }
    std::size_t cluster_count() const { return k_; }

    bool active(std::size_t slot) const { return active_[slot]; }
    std::vector<std::size_t> active_slots() const;
    std::size_t slot_of(std::size_t point) const { return assignment_[point]; }
    std::span<const std::size_t> members(std::size_t slot) const { return members_[slot]; }

    const PairStats& within(std::size_t slot) const { return within_[slot]; }
    const PairStats& between(std::size_t a, std::size_t b) const { return between_[pair_index(a, b)]; }

    /// Cluster id per point in 0..K-1, ordered by slot.
    std::vector<int> dense_labels() const;

    /// Merges slot `b` into slot `a` (or the reverse, whichever is lower survives)
    /// by pure addition of statistics. Returns the surviving slot.
    std::size_t merge(std::size_t a, std::size_t b);

private:
    std::size_t pair_index(std::size_t a, std::size_t b) const {
        return a < b ? triangular_index(a, b, members_.size()) : triangular_index(b, a, members_.size());
    }

    std::vector<std::size_t> assignment_;
    std::vector<std::vector<std::size_t>> members_;
    std::vector<bool> active_;
    std::vector<PairStats> within_;
    std::vector<PairStats> between_;
    std::size_t k_ = 0;
};

/// Copying variant of Clustering::merge.
Clustering merge_step(Clustering clustering, std::pair<std::size_t, std::size_t> slots);

/// d[k][l] over dense cluster ids; the diagonal is NaN. Not symmetric.
using DistanceMatrix = Eigen::MatrixXd;

/// All pairwise cluster distances of the active clusters.
DistanceMatrix distance_matrix(const Clustering& clustering);

struct ScoreTable {
    std::vector<double> eta;            ///< per-cluster score
    std::vector<std::size_t> partner;   ///< cluster attaining the score
    double gamma = std::numeric_limits<double>::infinity();
    std::size_t first = 0;              ///< i*, the cluster attaining gamma
    std::size_t second = 0;             ///< j*, its partner
};

/// Scores, partners, clustering score and mergeable pair. Ties go to the smallest
/// cluster index, then the smallest partner index.
ScoreTable compute_scores(const DistanceMatrix& d);

/// Same, starting from a clustering. Every cluster must have at least three points.
ScoreTable compute_scores(const Clustering& clustering);

}  // namespace angclust
