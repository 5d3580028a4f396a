#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "angclust/geometry.hpp"

namespace angclust {

/// Variance floor (rad^2). Keeps the distance finite for clusters of duplicated points.
inline constexpr double kVarFloor = 1e-12;

/// Additive sufficient statistics of a set of angles.
struct PairStats {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t count = 0;

    void add(double theta) {
        sum += theta;
        sumsq += theta * theta;
        ++count;
    }

    PairStats& operator+=(const PairStats& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        count += o.count;
        return *this;
    }
    friend PairStats operator+(PairStats a, const PairStats& b) { return a += b; }
};

struct MomentPair {
    double mean = 0.0;
    double var = kVarFloor;
    std::uint64_t count = 0;
};

/// Sample mean and (count - 1)-divisor sample variance, floored at kVarFloor.
/// Throws TooFewAngles when count < 2.
MomentPair moments(const PairStats& stats);

/// Gaussian-moment Bhattacharyya distance between a within-set and a between-set.
double bhattacharyya_empirical(const MomentPair& w, const MomentPair& b);

/// Number of independent angle samples for a cluster pair of sizes (omega_i, omega_j):
/// min(floor(omega_i / 2), omega_j).
std::size_t t_pair(std::size_t omega_i, std::size_t omega_j);

/// Statistics over all unordered within-cluster angles.
PairStats within_stats(std::span<const std::size_t> cluster, const AngleCache& angles);

/// Statistics over all |I_k| * |I_l| cross angles.
PairStats between_stats(std::span<const std::size_t> cluster_k, std::span<const std::size_t> cluster_l,
                        const AngleCache& angles);

/// d_kl from the within statistics of k and the between statistics of (k, l).
inline double cluster_distance(const PairStats& within_k, const PairStats& between_kl) {
    return bhattacharyya_empirical(moments(within_k), moments(between_kl));
}

}  // namespace angclust
