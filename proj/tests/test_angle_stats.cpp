#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "angclust/angle_stats.hpp"
#include "angclust/error.hpp"

using namespace angclust;

namespace {

PairStats of(std::initializer_list<double> v) {
    PairStats s;
    for (const double x : v) s.add(x);
    return s;
}

// Angle cache over n points with explicit angles theta(i, j) = f(i, j).
template <class F>
AngleCache make_cache(std::size_t n, F f) {
    std::vector<double> upper;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) upper.push_back(f(i, j));
    }
    return AngleCache(n, std::move(upper));
}

}  // namespace

TEST_CASE("moments of a hand-computable sample") {
    const MomentPair m = moments(of({0.1, 0.2, 0.3}));
    CHECK(m.mean == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(m.var == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(m.count == 3);
}

TEST_CASE("zero spread is floored and a single angle is rejected") {
    const MomentPair m = moments(of({1.3, 1.3}));
    CHECK(m.mean == doctest::Approx(1.3));
    CHECK(m.var == kVarFloor);
    CHECK_THROWS_AS(moments(of({0.4})), TooFewAngles);
    CHECK_THROWS_AS(moments(PairStats{}), TooFewAngles);
}

TEST_CASE("pair statistics merge additively") {
    const PairStats a = of({0.1, 0.5}), b = of({0.7});
    const PairStats c = a + b;
    CHECK(c.count == 3);
    CHECK(c.sum == doctest::Approx(1.3));
    CHECK(c.sumsq == doctest::Approx(0.01 + 0.25 + 0.49));
}

TEST_CASE("bhattacharyya distance on known moment pairs") {
    CHECK(bhattacharyya_empirical({0.5, 0.01, 10}, {0.5, 0.01, 10}) == doctest::Approx(0.0));
    CHECK(bhattacharyya_empirical({0.0, 1.0, 10}, {0.0, 4.0, 10}) ==
          doctest::Approx(0.111571775657104877883).epsilon(1e-14));
    CHECK(bhattacharyya_empirical({1.0, 1.0, 10}, {0.0, 1.0, 10}) == doctest::Approx(0.125).epsilon(1e-14));
    const double pi2 = std::numbers::pi / 2;
    CHECK(bhattacharyya_empirical({pi2, 1.0 / 98, 10}, {pi2, 1.0 / 8, 10}) ==
          doctest::Approx(0.319043701688458955).epsilon(1e-13));
}

TEST_CASE("bhattacharyya distance is non-negative and symmetric in the variances") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 2.0), v(1e-4, 1.0);
    for (int i = 0; i < 200; ++i) {
        const MomentPair a{u(rng), v(rng), 5}, b{u(rng), v(rng), 5};
        const double d = bhattacharyya_empirical(a, b);
        CHECK(d >= 0.0);
        CHECK(d == doctest::Approx(bhattacharyya_empirical(b, a)).epsilon(1e-12));
    }
}

TEST_CASE("t_pair") {
    CHECK(t_pair(10, 7) == 5);
    CHECK(t_pair(4, 10) == 2);
    CHECK(t_pair(3, 3) == 1);
}

TEST_CASE("within statistics") {
    const AngleCache a = make_cache(3, [](std::size_t i, std::size_t j) { return 0.1 * static_cast<double>(i + j); });
    const std::vector<std::size_t> all{0, 1, 2};
    const PairStats s = within_stats(all, a);
    CHECK(s.sum == doctest::Approx(0.6));
    CHECK(s.sumsq == doctest::Approx(0.14));
    CHECK(s.count == 3);

    const std::vector<std::size_t> one{1};
    const PairStats e = within_stats(one, a);
    CHECK(e.count == 0);
    CHECK(e.sum == 0.0);
    CHECK(e.sumsq == 0.0);

    const AngleCache b = make_cache(6, [](std::size_t, std::size_t) { return 1.0; });
    const std::vector<std::size_t> four{0, 2, 3, 5};
    CHECK(within_stats(four, b).count == 6);
}

TEST_CASE("between statistics") {
    const AngleCache a = make_cache(5, [](std::size_t i, std::size_t j) { return 0.01 * static_cast<double>(7 * i + j); });
    const std::vector<std::size_t> k{0, 3}, l{1, 2, 4};
    const PairStats s = between_stats(k, l, a);
    CHECK(s.count == 6);
    const PairStats r = between_stats(l, k, a);
    CHECK(r.sum == s.sum);
    CHECK(r.sumsq == s.sumsq);
    CHECK(r.count == s.count);

    const AngleCache two = make_cache(2, [](std::size_t, std::size_t) { return 0.4; });
    const std::vector<std::size_t> p{0}, q{1};
    const PairStats t = between_stats(p, q, two);
    CHECK(t.sum == doctest::Approx(0.4));
    CHECK(t.sumsq == doctest::Approx(0.16));
    CHECK(t.count == 1);
}

TEST_CASE("cluster distance needs two within angles") {
    const PairStats b = of({1.0, 1.1, 1.2});
    CHECK_THROWS_AS(cluster_distance(of({0.2}), b), TooFewAngles);
    CHECK(cluster_distance(of({1.0, 1.1, 1.2}), b) == doctest::Approx(0.0));
}

TEST_CASE("identically drawn angle populations are close") {
    // 200 samples each from N(pi/2, 0.01); the 95th percentile over 1000 seeds stays below 0.05.
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g(std::numbers::pi / 2, 0.1);
        PairStats w, b;
        for (int i = 0; i < 200; ++i) w.add(g(rng));
        for (int i = 0; i < 200; ++i) b.add(g(rng));
        d.push_back(cluster_distance(w, b));
    }
    std::sort(d.begin(), d.end());
    CHECK(d[949] < 0.05);
}
