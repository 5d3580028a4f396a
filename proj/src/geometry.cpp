#include "angclust/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "angclust/error.hpp"

namespace angclust {

DataSet normalize_rows(DataSet data) {
    for (Eigen::Index i = 0; i < data.points.rows(); ++i) {
        const double norm = data.points.row(i).norm();
        if (!(norm >= 1e-300)) throw ZeroRow(static_cast<std::size_t>(i));
        data.points.row(i) /= norm;
    }
    return data;
}

AngleCache::AngleCache(std::size_t n, std::vector<double> upper) : n_(n), upper_(std::move(upper)) {
    if (upper_.size() != n_ * (n_ - 1) / 2) throw Error("angle triangle has the wrong size");
}

double AngleCache::acute(std::size_t i, std::size_t j) const {
    const double t = theta(i, j);
    return std::min(t, std::numbers::pi - t);
}

namespace {

constexpr Eigen::Index kBlockRows = 128;

void fill_block(const PointMatrix& x, Eigen::Index begin, std::vector<double>& out) {
    const Eigen::Index n = x.rows();
    const Eigen::Index end = std::min(begin + kBlockRows, n);
    // Gram block against every row from `begin` on; only the strict upper part is kept.
    const Eigen::MatrixXd gram = x.middleRows(begin, end - begin) * x.bottomRows(n - begin).transpose();
    for (Eigen::Index i = begin; i < end; ++i) {
        const auto un = static_cast<std::size_t>(n);
        std::size_t k = triangular_index(static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1, un);
        for (Eigen::Index j = i + 1; j < n; ++j, ++k) {
            const double c = std::clamp(gram(i - begin, j - begin), -1.0, 1.0);
            out[k] = std::acos(c);
        }
    }
}

}  // namespace

AngleCache compute_angles(const DataSet& data, unsigned threads) {
    const std::size_t n = data.size();
    std::vector<double> upper(n * (n - 1) / 2);
    const Eigen::Index blocks = (static_cast<Eigen::Index>(n) + kBlockRows - 1) / kBlockRows;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<Eigen::Index>(threads, std::max<Eigen::Index>(blocks, 1)));

    if (threads <= 1) {
        for (Eigen::Index b = 0; b < blocks; ++b) fill_block(data.points, b * kBlockRows, upper);
    } else {
        std::atomic<Eigen::Index> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (Eigen::Index b = next++; b < blocks; b = next++) fill_block(data.points, b * kBlockRows, upper);
            });
        }
    }
    return AngleCache(n, std::move(upper));
}

}  // namespace angclust
