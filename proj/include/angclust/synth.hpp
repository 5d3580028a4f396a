#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "angclust/geometry.hpp"

namespace angclust::synth {

struct SubspaceSpec {
    std::size_t n = 100;  ///< ambient dimension
    std::size_t r = 10;   ///< dimension of every subspace
    std::size_t L = 4;    ///< number of subspaces
    std::size_t N = 1000; ///< total points
    std::uint64_t seed = 0;

    /// 2 <= r < n, L >= 1, N >= 3 L. Throws DomainError otherwise.
    void validate() const;
};

struct DPSpec {
    std::size_t n = 100;
    std::size_t N = 500;
    double rho = 9.0;    ///< centroid spread
    double sigma = 1.0;  ///< within-cluster spread
    double alpha = 1.0;  ///< CRP concentration
    std::uint64_t seed = 0;

    void validate() const;
};

/// A labeled dataset plus the orthonormal basis (n x r) each subspace was drawn from.
struct SubspaceSample {
    DataSet data;
    std::vector<Eigen::MatrixXd> bases;
    /// For the dependent model: indices into the shared basis pool per subspace.
    std::vector<std::vector<std::size_t>> pool_indices;
};

/// Haar-distributed n x r matrix with orthonormal columns (QR of a Gaussian matrix
/// with the sign of R's diagonal folded back into Q).
Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t r, std::mt19937_64& rng);

/// Per-subspace point counts, as equal as possible; the first N mod L get one extra.
std::vector<std::size_t> balanced_counts(std::size_t total, std::size_t groups);

/// Random subspaces, standard normal coordinates, unit-norm points (uniform on each
/// subspace sphere). Point order is shuffled.
SubspaceSample gen_subspace_normal(const SubspaceSpec& spec);

/// Random subspaces, U[0, 1] coordinates, unit-norm points.
SubspaceSample gen_subspace_uniform(const SubspaceSpec& spec);

/// Subspaces spanned by r vectors drawn without replacement from one shared
/// randomly rotated orthonormal basis of R^n; U[0, 1] coordinates; unit-norm points.
SubspaceSample gen_subspace_dependent(const SubspaceSpec& spec);

/// Chinese-restaurant labels with concentration alpha, centroids ~ N(0, rho^2 I),
/// points ~ N(centroid, sigma^2 I). Points are not normalized. Labels are in order
/// of first appearance.
DataSet gen_dp(const DPSpec& spec);

/// Chinese-restaurant table sequence of length N.
std::vector<int> crp_labels(std::size_t N, double alpha, std::mt19937_64& rng);

}  // namespace angclust::synth
