#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace angclust {

/// Minimum-cost perfect assignment on a square cost matrix (row-major, size x size).
/// Returns the column assigned to every row.
std::vector<std::size_t> min_cost_assignment(std::span<const std::int64_t> cost, std::size_t size);

/// Ground truth and predicted labels for the same N points. Labels may be any
/// non-negative integers; they are compacted to 0..L-1 in ascending order.
class LabelPair {
public:
    LabelPair(std::span<const int> truth, std::span<const int> pred);

    std::size_t size() const { return truth_.size(); }
    std::size_t truth_clusters() const { return truth_k_; }
    std::size_t pred_clusters() const { return pred_k_; }
    const std::vector<int>& truth() const { return truth_; }
    const std::vector<int>& pred() const { return pred_; }

    /// Counts indexed [pred][truth].
    std::vector<std::vector<std::size_t>> confusion() const;

private:
    std::vector<int> truth_;
    std::vector<int> pred_;
    std::size_t truth_k_ = 0;
    std::size_t pred_k_ = 0;
};

/// Fraction of points misclassified under the best one-to-one relabeling of the
/// predicted clusters. Predicted clusters left without a partner count as errors.
double clustering_error(const LabelPair& pair);

/// I(C; C') / (0.5 (H(C) + H(C'))) with plug-in entropies; 1 when both partitions are trivial.
double nmi(const LabelPair& pair);

inline std::size_t abs_L_error(std::size_t L_true, std::size_t L_hat) {
    return L_true > L_hat ? L_true - L_hat : L_hat - L_true;
}

}  // namespace angclust
