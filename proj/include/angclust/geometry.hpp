#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace angclust {

using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// N points in R^n, one per row, with optional ground-truth labels.
struct DataSet {
    PointMatrix points;
    std::optional<std::vector<int>> labels;

    std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
    std::size_t dim() const { return static_cast<std::size_t>(points.cols()); }
};

/// Scales every row to unit Euclidean norm. Throws ZeroRow for a zero row.
DataSet normalize_rows(DataSet data);

/// Index of the pair (i, j), i < j, in a row-major strict upper triangle of an N x N matrix.
inline std::size_t triangular_index(std::size_t i, std::size_t j, std::size_t n) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

/// Pairwise angles between unit-norm points, stored as a flat strict upper triangle.
///
/// `theta(i, j)` is symmetric in its arguments. The acute angle used by the ally
/// search is derived from the stored value as min(theta, pi - theta), which is
/// the same quantity as acos(|x_i . x_j|).
class AngleCache {
public:
    AngleCache() = default;
    AngleCache(std::size_t n, std::vector<double> upper);

    std::size_t size() const { return n_; }

    double theta(std::size_t i, std::size_t j) const {
#ifdef ANGCLUST_COUNT_READS
        ++reads_;
#endif
        return i < j ? upper_[triangular_index(i, j, n_)] : upper_[triangular_index(j, i, n_)];
    }

    double acute(std::size_t i, std::size_t j) const;

    /// Raw triangle in (0,1), (0,2), ..., (1,2), ... order. Counts as one read per element.
    const std::vector<double>& upper() const {
#ifdef ANGCLUST_COUNT_READS
        reads_ += upper_.size();
#endif
        return upper_;
    }

    /// Number of element reads through theta()/acute() since construction or the last reset.
    /// Always zero when built without ANGCLUST_COUNT_READS.
    std::uint64_t reads() const { return reads_; }
    void reset_reads() const { reads_ = 0; }
    static constexpr bool counting_enabled() {
#ifdef ANGCLUST_COUNT_READS
        return true;
#else
        return false;
#endif
    }

private:
    std::size_t n_ = 0;
    std::vector<double> upper_;
    mutable std::uint64_t reads_ = 0;
};

/// theta_ij = acos(clamp(x_i . x_j, -1, 1)) for all i < j. Rows must already be unit norm.
/// Work is split over fixed row blocks, so the result does not depend on the thread count.
AngleCache compute_angles(const DataSet& data, unsigned threads = 0);

}  // namespace angclust
