#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "angclust/angle_stats.hpp"
#include "angclust/clustering.hpp"
#include "angclust/engine.hpp"
#include "angclust/error.hpp"
#include "angclust/metrics.hpp"
#include "angclust/synth.hpp"

using namespace angclust;

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

// Three slightly perturbed copies of e0 followed by three of e1 (in R^4).
AngleCache six_points(std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1e-3);
    DataSet d;
    d.points.setZero(6, 4);
    for (Eigen::Index i = 0; i < 6; ++i) {
        d.points(i, i < 3 ? 0 : 1) = 1.0;
        for (Eigen::Index j = 0; j < 4; ++j) d.points(i, j) += g(rng);
    }
    return compute_angles(normalize_rows(d));
}

AngleCache from_sample(const synth::SubspaceSample& s) { return compute_angles(s.data); }

}  // namespace

TEST_CASE("allies agree with brute-force enumeration") {
    const AngleCache a = six_points();
    const Allies allies = find_allies(a);
    for (std::size_t i = 0; i < 6; ++i) {
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < 6; ++j) {
            if (j != i) others.push_back(j);
        }
        std::stable_sort(others.begin(), others.end(),
                         [&](std::size_t x, std::size_t y) { return a.acute(i, x) < a.acute(i, y); });
        CHECK(allies.first[i] == others[0]);
        CHECK(allies.second[i] == others[1]);
        CHECK((allies.first[i] < 3) == (i < 3));
        CHECK((allies.second[i] < 3) == (i < 3));
    }
}

TEST_CASE("initial clustering of two orthogonal triples") {
    const AngleCache a = six_points();
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::vector<int> l = initial_labels(a, seed);
        CHECK(l[0] == l[1]);
        CHECK(l[1] == l[2]);
        CHECK(l[3] == l[4]);
        CHECK(l[4] == l[5]);
        CHECK(l[0] != l[3]);
    }
}

TEST_CASE("initial clustering edge cases") {
    const AngleCache three(3, {0.3, 1.0, 2.0});
    CHECK(initial_labels(three, 9) == std::vector<int>{0, 0, 0});

    CHECK_THROWS_AS(initial_labels(AngleCache(2, {0.5}), 0), DegenerateInput);

    // Points on one line: all acute angles vanish and any partition is pure.
    DataSet line;
    line.points.resize(10, 3);
    for (Eigen::Index i = 0; i < 10; ++i) line.points.row(i) = (i % 2 ? -1.0 : 1.0) * (i + 1.0) * Eigen::RowVector3d(1.0, 2.0, 0.5);
    const std::vector<int> l = initial_labels(compute_angles(normalize_rows(line)), 4);
    std::vector<std::size_t> count(*std::max_element(l.begin(), l.end()) + 1, 0);
    for (const int x : l) ++count[static_cast<std::size_t>(x)];
    for (const std::size_t c : count) CHECK(c >= 3);
}

TEST_CASE("initial clusters hold at least three points and are pure on separated subspaces") {
    const auto s = synth::gen_subspace_normal({50, 5, 3, 150, 17});
    const AngleCache a = from_sample(s);
    const std::vector<int> l = initial_labels(a, 17);
    std::vector<std::size_t> count(*std::max_element(l.begin(), l.end()) + 1, 0);
    for (const int x : l) ++count[static_cast<std::size_t>(x)];
    for (const std::size_t c : count) CHECK(c >= 3);

    const Clustering c = Clustering::from_labels(l, a);
    for (const std::size_t slot : c.active_slots()) {
        const auto m = c.members(slot);
        for (const std::size_t i : m) CHECK((*s.data.labels)[i] == (*s.data.labels)[m[0]]);
    }
}

TEST_CASE("initial labels are deterministic per seed") {
    const auto s = synth::gen_subspace_normal({30, 4, 2, 60, 8});
    const AngleCache a = from_sample(s);
    CHECK(initial_labels(a, 5) == initial_labels(a, 5));
}

TEST_CASE("clustering statistics follow the counting identities") {
    const AngleCache a = six_points();
    const std::vector<int> labels{4, 4, 4, 9, 9, 9};
    Clustering c = Clustering::from_labels(labels, a);
    REQUIRE(c.cluster_count() == 2);
    CHECK(c.within(0).count == 3);
    CHECK(c.within(1).count == 3);
    CHECK(c.between(0, 1).count == 9);
    CHECK(c.dense_labels() == std::vector<int>{0, 0, 0, 1, 1, 1});

    const std::size_t kept = c.merge(1, 0);
    CHECK(kept == 0);
    CHECK(c.cluster_count() == 1);
    CHECK(c.within(0).count == 15);
    const std::vector<std::size_t> all{0, 1, 2, 3, 4, 5};
    CHECK(c.within(0).sum == doctest::Approx(within_stats(all, a).sum).epsilon(1e-12));
    CHECK_THROWS_AS(c.merge(0, 1), Error);
    CHECK_THROWS_AS(c.merge(0, 0), Error);
}

TEST_CASE("repeated merges keep counts consistent") {
    const auto s = synth::gen_subspace_normal({20, 3, 2, 40, 3});
    const AngleCache a = from_sample(s);
    std::vector<int> labels(40);
    for (std::size_t i = 0; i < 40; ++i) labels[i] = static_cast<int>(i / 4);
    Clustering c = Clustering::from_labels(labels, a);
    c = merge_step(c, {2, 5});
    c = merge_step(c, {7, 2});
    c.merge(0, 9);
    for (const std::size_t x : c.active_slots()) {
        const std::size_t nx = c.members(x).size();
        CHECK(c.within(x).count == nx * (nx - 1) / 2);
        const PairStats w = within_stats(c.members(x), a);
        CHECK(c.within(x).sum == doctest::Approx(w.sum).epsilon(1e-12));
        for (const std::size_t y : c.active_slots()) {
            if (y == x) continue;
            CHECK(c.between(x, y).count == nx * c.members(y).size());
            const PairStats b = between_stats(c.members(x), c.members(y), a);
            CHECK(c.between(x, y).sum == doctest::Approx(b.sum).epsilon(1e-12));
            CHECK(c.between(x, y).sumsq == doctest::Approx(b.sumsq).epsilon(1e-12));
        }
    }
}

TEST_CASE("scores from a distance matrix") {
    DistanceMatrix d(3, 3);
    d << kNaN, 0.1, 0.5, 0.2, kNaN, 0.9, 0.5, 0.8, kNaN;
    const ScoreTable s = compute_scores(d);
    CHECK(s.eta == std::vector<double>{0.1, 0.2, 0.5});
    CHECK(s.partner == std::vector<std::size_t>{1, 0, 0});
    CHECK(s.gamma == 0.1);
    CHECK(s.first == 0);
    CHECK(s.second == 1);
}

TEST_CASE("score ties go to the smallest index") {
    DistanceMatrix d(3, 3);
    d << kNaN, 0.3, 0.3, 0.3, kNaN, 0.7, 0.9, 0.3, kNaN;
    const ScoreTable s = compute_scores(d);
    CHECK(s.partner[0] == 1);
    CHECK(s.partner[2] == 1);
    CHECK(s.first == 0);
    CHECK(s.second == 1);
}

TEST_CASE("two clusters have a single candidate pair") {
    DistanceMatrix d(2, 2);
    d << kNaN, 0.4, 0.6, kNaN;
    const ScoreTable s = compute_scores(d);
    CHECK(s.gamma == 0.4);
    CHECK(s.first == 0);
    CHECK(s.second == 1);
    CHECK_THROWS_AS(compute_scores(DistanceMatrix(1, 1)), DegenerateInput);
}

TEST_CASE("threshold") {
    CHECK(threshold(2) == 1.0);
    CHECK(threshold(101) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(std::isinf(threshold(1)));
    CHECK(std::isinf(threshold(0)));
}

TEST_CASE("selection picks the largest crossing K") {
    MergeTrace trace;
    const double g[] = {0.001, 0.002, 0.5, 0.6};
    for (std::size_t i = 0; i < 4; ++i) {
        TraceEntry e;
        e.K = 5 - i;
        e.gamma = g[i];
        e.zeta = 0.1;
        trace.push_back(e);
    }
    Dendrogram den;
    den.initial_slot = {0, 1, 2, 3, 4};
    den.initial_clusters = 5;
    den.merges = {{0, 1}, {0, 2}, {3, 4}, {0, 3}};
    const SelectionResult r = select_clustering(trace, den);
    CHECK(r.crossed);
    CHECK(r.L_hat == 3);
    CHECK(r.labels == std::vector<int>{0, 0, 0, 1, 2});

    for (TraceEntry& e : trace) e.gamma = 0.05;
    const SelectionResult none = select_clustering(trace, den);
    CHECK_FALSE(none.crossed);
    CHECK(none.L_hat == 1);
    CHECK(none.labels == std::vector<int>(5, 0));
}

TEST_CASE("dendrogram replays every intermediate clustering") {
    const auto s = synth::gen_subspace_normal({40, 4, 3, 90, 21});
    const AngleCache a = from_sample(s);
    const Clustering init = initial_clustering(a, 21);
    MergeEngine engine(init);
    const std::size_t P = init.cluster_count();
    CHECK(engine.dendrogram().labels_at(P) == init.dense_labels());
    while (!engine.done()) {
        engine.step();
        const std::size_t K = engine.clustering().cluster_count();
        CHECK(engine.dendrogram().labels_at(K) == engine.clustering().dense_labels());
    }
    CHECK_THROWS_AS(engine.step(), Error);
    CHECK_THROWS_AS(engine.dendrogram().labels_at(P + 1), Error);
}

TEST_CASE("incremental scores equal a full recomputation after every merge") {
    const auto s = synth::gen_subspace_normal({60, 6, 4, 240, 5});
    const AngleCache a = from_sample(s);
    MergeEngine engine(initial_clustering(a, 5));
    while (engine.clustering().cluster_count() >= 2) {
        const ScoreTable inc = engine.scores();
        const ScoreTable full = compute_scores(engine.clustering());
        REQUIRE(inc.eta.size() == full.eta.size());
        for (std::size_t k = 0; k < inc.eta.size(); ++k) {
            CHECK(inc.eta[k] == doctest::Approx(full.eta[k]).epsilon(1e-12));
            CHECK(inc.partner[k] == full.partner[k]);
        }
        CHECK(inc.first == full.first);
        CHECK(inc.second == full.second);
        engine.step();
    }
}

TEST_CASE("merging never reads the angle cache") {
    if (!AngleCache::counting_enabled()) return;
    const auto s = synth::gen_subspace_normal({60, 6, 4, 200, 9});
    const AngleCache a = from_sample(s);
    const Clustering init = initial_clustering(a, 9);
    a.reset_reads();
    const MergeResult r = run_merging(init);
    CHECK(a.reads() == 0);
    CHECK(r.trace.size() == init.cluster_count() - 1);
}

TEST_CASE("trace entries") {
    const auto s = synth::gen_subspace_normal({40, 4, 2, 60, 13});
    const AngleCache a = from_sample(s);
    const Clustering init = initial_clustering(a, 13);
    const MergeResult r = run_merging(init, {true});
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        const TraceEntry& e = r.trace[i];
        CHECK(e.K == init.cluster_count() - i);
        CHECK(e.eta.size() == e.K);
        CHECK(e.zeta == threshold(e.t));
        CHECK(e.gamma == *std::min_element(e.eta.begin(), e.eta.end()));
        CHECK(e.partner[e.first] == e.second);
    }
}

TEST_CASE("two initial clusters give one trace entry") {
    const AngleCache a = six_points();
    const MergeResult r = run_merging(Clustering::from_labels(std::vector<int>{0, 0, 0, 1, 1, 1}, a));
    CHECK(r.trace.size() == 1);
    CHECK(r.trace[0].K == 2);
    CHECK(r.trace[0].t == 1);
}

TEST_CASE("the engine rejects clusters that are too small") {
    const AngleCache a = six_points();
    CHECK_THROWS_AS(MergeEngine(Clustering::from_labels(std::vector<int>{0, 0, 0, 0, 1, 1}, a)), TooFewAngles);
    CHECK_THROWS_AS(MergeEngine(Clustering::from_labels(std::vector<int>(6, 0), a)), DegenerateInput);
}

TEST_CASE("same-subspace clusters merge first") {
    const auto s = synth::gen_subspace_normal({60, 5, 2, 200, 31});
    const AngleCache a = from_sample(s);
    std::vector<int> init(200);
    for (std::size_t i = 0; i < 200; ++i) init[i] = 2 * (*s.data.labels)[i] + static_cast<int>(i % 2);
    const MergeResult r = run_merging(Clustering::from_labels(init, a));
    const std::vector<int> two = r.dendrogram.labels_at(2);
    CHECK(clustering_error(LabelPair(*s.data.labels, two)) == 0.0);
}

TEST_CASE("a union of six subspaces is cut at six clusters") {
    const auto s = synth::gen_subspace_normal({100, 7, 6, 600, 2});
    const AngleCache a = from_sample(s);
    const MergeResult r = run_merging(initial_clustering(a, 2));
    const SelectionResult sel = select_clustering(r.trace, r.dendrogram);
    CHECK(sel.crossed);
    CHECK(sel.L_hat == 6);
    for (const TraceEntry& e : r.trace) {
        if (e.K > 6) CHECK(e.gamma <= e.zeta);
        if (e.K == 6) CHECK(e.gamma > e.zeta);
    }
    CHECK(clustering_error(LabelPair(*s.data.labels, sel.labels)) == 0.0);
}
