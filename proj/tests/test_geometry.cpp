#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "angclust/error.hpp"
#include "angclust/geometry.hpp"

using namespace angclust;

namespace {

DataSet rows(std::initializer_list<std::initializer_list<double>> values) {
    DataSet d;
    const auto n = static_cast<Eigen::Index>(values.size());
    const auto m = static_cast<Eigen::Index>(values.begin()->size());
    d.points.resize(n, m);
    Eigen::Index i = 0;
    for (const auto& r : values) {
        Eigen::Index j = 0;
        for (const double v : r) d.points(i, j++) = v;
        ++i;
    }
    return d;
}

}  // namespace

TEST_CASE("normalize_rows scales to unit length") {
    const DataSet d = normalize_rows(rows({{3, 4}, {1, 0}}));
    CHECK(d.points(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(d.points(0, 1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(d.points(1, 0) == 1.0);
    CHECK(d.points(1, 1) == 0.0);
}

TEST_CASE("normalize_rows keeps labels and rejects zero rows") {
    DataSet d = rows({{1, 2, 3}, {0, 0, 0}, {4, 5, 6}});
    try {
        normalize_rows(d);
        FAIL("expected ZeroRow");
    } catch (const ZeroRow& e) {
        CHECK(e.row() == 1);
    }

    DataSet ok = rows({{2, 0, 0}, {0, 0, 5}});
    ok.labels = std::vector<int>{7, 9};
    const DataSet n = normalize_rows(ok);
    REQUIRE(n.labels.has_value());
    CHECK(*n.labels == std::vector<int>{7, 9});
}

TEST_CASE("normalized rows have unit norm") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    DataSet d;
    d.points.resize(50, 17);
    for (Eigen::Index i = 0; i < d.points.size(); ++i) d.points.data()[i] = 1e3 * g(rng);
    const DataSet n = normalize_rows(d);
    for (Eigen::Index i = 0; i < n.points.rows(); ++i) CHECK(std::abs(n.points.row(i).norm() - 1.0) < 1e-12);
}

TEST_CASE("triangular index enumerates the upper triangle in order") {
    const std::size_t n = 7;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) CHECK(triangular_index(i, j, n) == k++);
    }
    CHECK(k == n * (n - 1) / 2);
}

TEST_CASE("angles of special configurations") {
    const DataSet d = normalize_rows(rows({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}}));
    const AngleCache a = compute_angles(d);
    CHECK(a.theta(0, 1) == 0.0);
    CHECK(a.acute(0, 1) == 0.0);
    CHECK(a.theta(0, 2) == doctest::Approx(std::numbers::pi / 2));
    CHECK(a.acute(0, 2) == doctest::Approx(std::numbers::pi / 2));
    CHECK(a.theta(0, 3) == doctest::Approx(std::numbers::pi));
    CHECK(a.acute(0, 3) == doctest::Approx(0.0));
    CHECK(a.theta(3, 0) == a.theta(0, 3));
}

TEST_CASE("dot products just outside [-1, 1] are clamped") {
    // Rounding can push the dot product of nearly parallel rows past 1.
    DataSet d = rows({{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, {-0.1, -0.2, -0.3}});
    d = normalize_rows(d);
    d.points.row(1) *= 1.0 + 1e-15;
    d.points.row(2) *= 1.0 + 1e-15;
    const AngleCache a = compute_angles(d);
    for (const double t : a.upper()) {
        CHECK(std::isfinite(t));
        CHECK(t >= 0.0);
        CHECK(t <= std::numbers::pi);
    }
}

TEST_CASE("angles match acos of dot products and do not depend on the thread count") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    DataSet d;
    d.points.resize(300, 20);
    for (Eigen::Index i = 0; i < d.points.size(); ++i) d.points.data()[i] = g(rng);
    d = normalize_rows(d);

    const AngleCache one = compute_angles(d, 1);
    const AngleCache four = compute_angles(d, 4);
    CHECK(one.upper() == four.upper());
    for (std::size_t i = 0; i < 300; i += 37) {
        for (std::size_t j = i + 1; j < 300; j += 41) {
            const double dot = std::clamp(d.points.row(static_cast<Eigen::Index>(i)).dot(d.points.row(static_cast<Eigen::Index>(j))), -1.0, 1.0);
            CHECK(one.theta(i, j) == doctest::Approx(std::acos(dot)).epsilon(1e-12));
        }
    }
}

TEST_CASE("uniform points on the sphere have angle mean pi/2 and variance near 1/(n-2)") {
    const std::size_t N = 2000, n = 100;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    DataSet d;
    d.points.resize(N, n);
    for (Eigen::Index i = 0; i < d.points.size(); ++i) d.points.data()[i] = g(rng);
    const AngleCache a = compute_angles(normalize_rows(d));

    double s = 0.0, ss = 0.0;
    for (const double t : a.upper()) {
        s += t;
        ss += t * t;
    }
    const double m = static_cast<double>(a.upper().size());
    const double mean = s / m;
    const double var = (ss - s * mean) / (m - 1.0);
    // Pairs are dependent, so the standard error uses the N/2 independent pairs.
    const double se = std::sqrt(var / (N / 2.0));
    CHECK(std::abs(mean - std::numbers::pi / 2) < 3.0 * se);
    CHECK(std::abs(var - 1.0 / (n - 2.0)) < 0.2 / (n - 2.0));
}

TEST_CASE("read counter tracks element access") {
    if (!AngleCache::counting_enabled()) return;
    const AngleCache a = compute_angles(normalize_rows(rows({{1, 0}, {0, 1}, {1, 1}})));
    a.reset_reads();
    (void)a.theta(0, 1);
    (void)a.acute(1, 2);
    CHECK(a.reads() == 2);
    (void)a.upper();
    CHECK(a.reads() == 5);
    a.reset_reads();
    CHECK(a.reads() == 0);
}
