#include "angclust/synth.hpp"

#include <algorithm>
#include <numeric>

#include "angclust/error.hpp"

namespace angclust::synth {

namespace {

Eigen::MatrixXd gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = normal(rng);
    }
    return m;
}

enum class Coords { Normal, Uniform };

Eigen::VectorXd draw_coords(std::size_t r, Coords kind, std::mt19937_64& rng) {
    Eigen::VectorXd c(r);
    if (kind == Coords::Normal) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
    } else {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = unif(rng);
    }
    return c;
}

SubspaceSample sample_points(const SubspaceSpec& spec, SubspaceSample sample, Coords kind, std::mt19937_64& rng) {
    const std::vector<std::size_t> counts = balanced_counts(spec.N, spec.L);
    std::vector<std::size_t> order(spec.N);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    sample.data.points.resize(static_cast<Eigen::Index>(spec.N), static_cast<Eigen::Index>(spec.n));
    std::vector<int> labels(spec.N);
    std::size_t next = 0;
    for (std::size_t k = 0; k < spec.L; ++k) {
        for (std::size_t c = 0; c < counts[k]; ++c, ++next) {
            Eigen::VectorXd x;
            do {
                x = sample.bases[k] * draw_coords(spec.r, kind, rng);
            } while (!(x.norm() > 1e-12));
            const auto row = static_cast<Eigen::Index>(order[next]);
            sample.data.points.row(row) = (x / x.norm()).transpose();
            labels[order[next]] = static_cast<int>(k);
        }
    }
    sample.data.labels = std::move(labels);
    return sample;
}

SubspaceSample independent_subspaces(const SubspaceSpec& spec, Coords kind) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    SubspaceSample s;
    for (std::size_t k = 0; k < spec.L; ++k) s.bases.push_back(random_orthonormal(spec.n, spec.r, rng));
    return sample_points(spec, std::move(s), kind, rng);
}

}  // namespace

void SubspaceSpec::validate() const {
    if (r < 2 || r >= n) throw DomainError("subspace dimension must satisfy 2 <= r < n");
    if (L < 1) throw DomainError("need at least one subspace");
    if (N < 3 * L) throw DomainError("need at least 3 points per subspace");
}

void DPSpec::validate() const {
    if (n < 2 || N < 3) throw DomainError("DP dataset needs n >= 2 and N >= 3");
    if (!(rho > 0.0) || !(sigma > 0.0) || !(alpha > 0.0)) throw DomainError("rho, sigma and alpha must be positive");
}

Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t r, std::mt19937_64& rng) {
    const Eigen::MatrixXd g = gaussian_matrix(n, r, rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
    const Eigen::MatrixXd& packed = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        if (packed(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return q;
}

std::vector<std::size_t> balanced_counts(std::size_t total, std::size_t groups) {
    std::vector<std::size_t> counts(groups, total / groups);
    for (std::size_t k = 0; k < total % groups; ++k) ++counts[k];
    return counts;
}

SubspaceSample gen_subspace_normal(const SubspaceSpec& spec) { return independent_subspaces(spec, Coords::Normal); }

SubspaceSample gen_subspace_uniform(const SubspaceSpec& spec) { return independent_subspaces(spec, Coords::Uniform); }

SubspaceSample gen_subspace_dependent(const SubspaceSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const Eigen::MatrixXd pool = random_orthonormal(spec.n, spec.n, rng);

    SubspaceSample s;
    std::vector<std::size_t> idx(spec.n);
    for (std::size_t k = 0; k < spec.L; ++k) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        // Partial Fisher-Yates: the first r entries are a uniform draw without replacement.
        for (std::size_t i = 0; i < spec.r; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, spec.n - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(spec.r));
        Eigen::MatrixXd basis(spec.n, spec.r);
        for (std::size_t c = 0; c < spec.r; ++c) basis.col(static_cast<Eigen::Index>(c)) = pool.col(static_cast<Eigen::Index>(chosen[c]));
        s.bases.push_back(std::move(basis));
        s.pool_indices.push_back(std::move(chosen));
    }
    return sample_points(spec, std::move(s), Coords::Uniform, rng);
}

std::vector<int> crp_labels(std::size_t N, double alpha, std::mt19937_64& rng) {
    std::vector<int> labels(N);
    std::vector<std::size_t> sizes;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < N; ++i) {
        const double u = unif(rng) * (static_cast<double>(i) + alpha);
        double acc = 0.0;
        std::size_t table = sizes.size();
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            acc += static_cast<double>(sizes[k]);
            if (u < acc) {
                table = k;
                break;
            }
        }
        if (table == sizes.size()) sizes.push_back(0);
        ++sizes[table];
        labels[i] = static_cast<int>(table);
    }
    return labels;
}

DataSet gen_dp(const DPSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::vector<int> labels = crp_labels(spec.N, spec.alpha, rng);
    const int tables = *std::max_element(labels.begin(), labels.end()) + 1;

    std::normal_distribution<double> normal(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(spec.n);
    Eigen::MatrixXd centroids(tables, n);
    for (Eigen::Index k = 0; k < tables; ++k) {
        for (Eigen::Index j = 0; j < n; ++j) centroids(k, j) = spec.rho * normal(rng);
    }

    DataSet data;
    data.points.resize(static_cast<Eigen::Index>(spec.N), n);
    for (std::size_t i = 0; i < spec.N; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        do {
            for (Eigen::Index j = 0; j < n; ++j) {
                data.points(row, j) = centroids(labels[i], j) + spec.sigma * normal(rng);
            }
        } while (!(data.points.row(row).norm() > 1e-12));
    }
    data.labels = std::move(labels);
    return data;
}

}  // namespace angclust::synth
