#include "angclust/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "angclust/error.hpp"

namespace angclust {

Clustering Clustering::from_labels(std::span<const int> labels, const AngleCache& angles) {
    const std::size_t n = labels.size();
    if (n != angles.size()) throw Error("label count does not match the angle cache");
    if (n == 0) throw DegenerateInput("empty clustering");

    std::map<int, std::size_t> slot_of_label;
    for (const int l : labels) slot_of_label.emplace(l, 0);
    std::size_t next = 0;
    for (auto& [label, slot] : slot_of_label) slot = next++;

    Clustering c;
    const std::size_t p = slot_of_label.size();
    c.assignment_.resize(n);
    c.members_.resize(p);
    c.active_.assign(p, true);
    c.within_.resize(p);
    c.between_.resize(p * (p - 1) / 2);
    c.k_ = p;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t s = slot_of_label[labels[i]];
        c.assignment_[i] = s;
        c.members_[s].push_back(i);
    }

    const std::vector<double>& upper = angles.upper();
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t si = c.assignment_[i];
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            const std::size_t sj = c.assignment_[j];
            if (si == sj) {
                c.within_[si].add(upper[k]);
            } else {
                c.between_[c.pair_index(si, sj)].add(upper[k]);
            }
        }
    }
    return c;
}

std::vector<std::size_t> Clustering::active_slots() const {
    std::vector<std::size_t> out;
    out.reserve(k_);
    for (std::size_t s = 0; s < active_.size(); ++s) {
        if (active_[s]) out.push_back(s);
    }
    return out;
}

std::vector<int> Clustering::dense_labels() const {
    std::vector<int> dense(members_.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < active_.size(); ++s) {
        if (active_[s]) dense[s] = next++;
    }
    std::vector<int> out(assignment_.size());
    for (std::size_t i = 0; i < assignment_.size(); ++i) out[i] = dense[assignment_[i]];
    return out;
}

std::size_t Clustering::merge(std::size_t a, std::size_t b) {
    if (a == b || a >= members_.size() || b >= members_.size() || !active_[a] || !active_[b]) {
        throw Error("invalid merge of slots " + std::to_string(a) + " and " + std::to_string(b));
    }
    if (b < a) std::swap(a, b);

    within_[a] += within_[b];
    within_[a] += between_[pair_index(a, b)];
    for (std::size_t s = 0; s < members_.size(); ++s) {
        if (!active_[s] || s == a || s == b) continue;
        between_[pair_index(a, s)] += between_[pair_index(b, s)];
        between_[pair_index(b, s)] = PairStats{};
    }
    between_[pair_index(a, b)] = PairStats{};
    within_[b] = PairStats{};

    for (const std::size_t i : members_[b]) assignment_[i] = a;
    members_[a].insert(members_[a].end(), members_[b].begin(), members_[b].end());
    members_[b].clear();
    members_[b].shrink_to_fit();
    active_[b] = false;
    --k_;
    return a;
}

Clustering merge_step(Clustering clustering, std::pair<std::size_t, std::size_t> slots) {
    clustering.merge(slots.first, slots.second);
    return clustering;
}

DistanceMatrix distance_matrix(const Clustering& clustering) {
    const std::vector<std::size_t> slots = clustering.active_slots();
    const auto k = static_cast<Eigen::Index>(slots.size());
    DistanceMatrix d(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        const MomentPair w = moments(clustering.within(slots[a]));
        for (Eigen::Index b = 0; b < k; ++b) {
            d(a, b) = a == b ? std::nan("") : bhattacharyya_empirical(w, moments(clustering.between(slots[a], slots[b])));
        }
    }
    return d;
}

ScoreTable compute_scores(const DistanceMatrix& d) {
    const auto k = static_cast<std::size_t>(d.rows());
    if (k < 2 || d.cols() != d.rows()) throw DegenerateInput("scores need at least two clusters");
    ScoreTable s;
    s.eta.assign(k, std::numeric_limits<double>::infinity());
    s.partner.assign(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        bool seen = false;
        for (std::size_t l = 0; l < k; ++l) {
            if (l == j) continue;
            const double v = d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
            if (!seen || v < s.eta[j]) {
                s.eta[j] = v;
                s.partner[j] = l;
                seen = true;
            }
        }
        if (j == 0 || s.eta[j] < s.gamma) {
            s.gamma = s.eta[j];
            s.first = j;
        }
    }
    s.second = s.partner[s.first];
    return s;
}

ScoreTable compute_scores(const Clustering& clustering) {
    for (const std::size_t slot : clustering.active_slots()) {
        if (clustering.members(slot).size() < 3) {
            throw TooFewAngles("cluster with " + std::to_string(clustering.members(slot).size()) +
                               " points; scoring needs at least 3");
        }
    }
    return compute_scores(distance_matrix(clustering));
}

}  // namespace angclust
