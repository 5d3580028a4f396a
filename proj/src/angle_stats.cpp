#include "angclust/angle_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "angclust/error.hpp"

namespace angclust {

MomentPair moments(const PairStats& stats) {
    if (stats.count < 2) {
        throw TooFewAngles("need at least 2 angles for a variance estimate, got " + std::to_string(stats.count));
    }
    const double n = static_cast<double>(stats.count);
    const double mean = stats.sum / n;
    const double var = (stats.sumsq - stats.sum * mean) / (n - 1.0);
    return {mean, std::max(var, kVarFloor), stats.count};
}

double bhattacharyya_empirical(const MomentPair& w, const MomentPair& b) {
    const double diff = w.mean - b.mean;
    const double ratio = w.var / b.var;
    // ln(1/4 (r + 1/r) + 1/2) = ln(1 + (r - 1)^2 / (4 r)); log1p keeps precision when r is near 1.
    return 0.25 * (diff * diff / (w.var + b.var) + std::log1p((ratio - 1.0) * (ratio - 1.0) / (4.0 * ratio)));
}

std::size_t t_pair(std::size_t omega_i, std::size_t omega_j) { return std::min(omega_i / 2, omega_j); }

PairStats within_stats(std::span<const std::size_t> cluster, const AngleCache& angles) {
    PairStats s;
    for (std::size_t a = 0; a < cluster.size(); ++a) {
        for (std::size_t b = a + 1; b < cluster.size(); ++b) s.add(angles.theta(cluster[a], cluster[b]));
    }
    return s;
}

PairStats between_stats(std::span<const std::size_t> cluster_k, std::span<const std::size_t> cluster_l,
                        const AngleCache& angles) {
    // Canonical loop order so that B_kl and B_lk accumulate identically.
    if (std::ranges::lexicographical_compare(cluster_l, cluster_k)) std::swap(cluster_k, cluster_l);
    PairStats s;
    for (const std::size_t i : cluster_k) {
        for (const std::size_t j : cluster_l) s.add(angles.theta(i, j));
    }
    return s;
}

}  // namespace angclust
