// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "crisda/error.hpp"
#include "crisda/features.hpp"
#include "crisda/rng.hpp"

// Random forest over sparse binary feature vectors. Splits test feature
// presence (absent branch / present branch); split quality is Gini impurity
// decrease. All randomness is drawn from per-tree SplitMix64 streams seeded
// by mix_seed(config seed, tree index), so a forest is identical no matter
// how training is scheduled.

namespace crisda {

struct ForestConfig {
    std::uint32_t n_trees = 100;
    /// Candidate features per split; empty means floor(sqrt(M)).
    std::optional<std::uint32_t> max_features;
    /// Empty means unlimited depth.
    std::optional<std::uint32_t> max_depth;
    std::uint32_t min_samples_split = 2;
    std::uint64_t seed = 0;
    /// Draw n-with-replacement bootstrap per tree. Disabled, every tree
    /// trains on the full sample list.
    bool bootstrap = true;

    std::uint32_t effective_max_features(std::uint32_t feature_count) const {
        if (max_features) return std::min(*max_features, feature_count);
        auto m = static_cast<std::uint32_t>(
            std::floor(std::sqrt(static_cast<double>(feature_count))));
        return std::max<std::uint32_t>(1, std::min(m, feature_count));
    }

    void validate() const {
        if (n_trees < 1) throw ArgumentError("forest: n_trees must be >= 1");
        if (min_samples_split < 2) throw ArgumentError("forest: min_samples_split must be >= 2");
        if (max_features && *max_features < 1)
            throw ArgumentError("forest: max_features must be >= 1");
    }
};

/// Flat tree node: internal nodes test one feature, leaves carry the class
/// counts of the training samples that reached them.
struct TreeNode {
    std::int32_t feature = -1; // -1 marks a leaf
    std::uint32_t child_absent = 0;
    std::uint32_t child_present = 0;
    std::vector<std::uint32_t> class_counts; // leaves only

    bool is_leaf() const { return feature < 0; }
};

using Tree = std::vector<TreeNode>; // root at index 0

/// Test-only hook recording every split decision a tree makes.
struct SplitTrace {
    struct Node {
        std::vector<std::uint32_t> sample_rows; // rows (with bootstrap repeats)
        std::vector<std::uint32_t> candidates;
        std::int32_t chosen = -1; // -1 when the node became a leaf
        double decrease = 0.0;
    };
    std::vector<Node> nodes;
};

namespace detail {

/// Row-major presence bitmap; one row per training sample.
class BitMatrix {
public:
    BitMatrix(std::span<const FeatureVector> rows, std::uint32_t feature_count)
        : words_per_row_((feature_count + 63) / 64),
          bits_(words_per_row_ * rows.size(), 0) {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::uint32_t f : rows[r]) {
                if (f >= feature_count)
                    throw ArgumentError("forest: feature id out of range");
                bits_[r * words_per_row_ + (f >> 6)] |= std::uint64_t{1} << (f & 63);
            }
    }

    bool test(std::uint32_t row, std::uint32_t f) const {
        return (bits_[std::size_t(row) * words_per_row_ + (f >> 6)] >> (f & 63)) & 1;
    }

private:
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

struct TreeGrower {
    const BitMatrix& matrix;
    std::span<const std::uint32_t> labels;
    std::uint32_t label_count;
    std::uint32_t feature_count;
    const ForestConfig& cfg;
    SplitMix64& rng;
    SplitTrace* trace;
    Tree& tree;

    std::vector<std::uint32_t> pool_buf, cand_buf;
    std::vector<std::uint32_t> hist_node, hist_present;

    std::uint32_t grow(std::vector<std::uint32_t>& rows, std::uint32_t depth) {
        hist_node.assign(label_count, 0);
        for (std::uint32_t r : rows) ++hist_node[labels[r]];
        const auto n = static_cast<double>(rows.size());

        bool pure = std::count(hist_node.begin(), hist_node.end(), 0u) + 1 >=
                    static_cast<long>(label_count);
        bool depth_capped = cfg.max_depth && depth >= *cfg.max_depth;
        bool too_small = rows.size() < cfg.min_samples_split;

        std::int32_t best_feature = -1;
        double best_q = 0.0, q_node = 0.0;
        std::vector<std::uint32_t> best_hist_present;
        std::uint32_t best_n_present = 0;
        if (!pure && !depth_capped && !too_small) {
            for (std::uint32_t c : hist_node) q_node += static_cast<double>(c) * c;
            q_node /= n;
            best_q = q_node;

            sample_distinct(feature_count, cfg.effective_max_features(feature_count), rng,
                            pool_buf, cand_buf);
            for (std::uint32_t f : cand_buf) {
                hist_present.assign(label_count, 0);
                std::uint32_t n_present = 0;
                for (std::uint32_t r : rows)
                    if (matrix.test(r, f)) {
                        ++hist_present[labels[r]];
                        ++n_present;
                    }
                std::uint32_t n_absent = static_cast<std::uint32_t>(rows.size()) - n_present;
                if (n_present == 0 || n_absent == 0) continue; // does not split
                double qp = 0.0, qa = 0.0;
                for (std::uint32_t c = 0; c < label_count; ++c) {
                    double p = hist_present[c];
                    double a = hist_node[c] - hist_present[c];
                    qp += p * p;
                    qa += a * a;
                }
                double q = qp / n_present + qa / n_absent;
                if (q > best_q ||
                    (q == best_q && best_feature >= 0 &&
                     f < static_cast<std::uint32_t>(best_feature))) {
                    best_q = q;
                    best_feature = static_cast<std::int32_t>(f);
                    best_hist_present = hist_present;
                    best_n_present = n_present;
                }
            }
        }

        if (trace) {
            SplitTrace::Node rec;
            rec.sample_rows = rows;
            rec.candidates = cand_buf;
            rec.chosen = best_feature;
            rec.decrease = best_feature >= 0 ? (best_q - q_node) / n : 0.0;
            trace->nodes.push_back(std::move(rec));
        }

        if (best_feature < 0) {
            TreeNode leaf;
            leaf.class_counts = hist_node;
            tree.push_back(std::move(leaf));
            return static_cast<std::uint32_t>(tree.size() - 1);
        }

        std::vector<std::uint32_t> rows_absent, rows_present;
        rows_absent.reserve(rows.size() - best_n_present);
        rows_present.reserve(best_n_present);
        for (std::uint32_t r : rows)
            (matrix.test(r, static_cast<std::uint32_t>(best_feature)) ? rows_present
                                                                      : rows_absent)
                .push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        auto index = static_cast<std::uint32_t>(tree.size());
        tree.emplace_back();
        tree[index].feature = best_feature;
        std::uint32_t left = grow(rows_absent, depth + 1);
        std::uint32_t right = grow(rows_present, depth + 1);
        tree[index].child_absent = left;
        tree[index].child_present = right;
        return index;
    }
};

} // namespace detail

/// Grows one tree from a seeded bootstrap of the samples.
inline Tree train_tree(std::span<const FeatureVector> samples,
                       std::span<const std::uint32_t> labels, std::uint32_t label_count,
                       std::uint32_t feature_count, std::uint64_t rng_seed,
                       const ForestConfig& cfg, SplitTrace* trace = nullptr) {
    if (samples.empty() || samples.size() != labels.size())
        throw ArgumentError("train_tree: need equal, non-zero samples and labels");
    cfg.validate();

    detail::BitMatrix matrix(samples, feature_count);
    SplitMix64 rng(rng_seed);

    std::vector<std::uint32_t> rows(samples.size());
    if (cfg.bootstrap) {
        for (auto& r : rows)
            r = static_cast<std::uint32_t>(rng.bounded(samples.size()));
    } else {
        std::iota(rows.begin(), rows.end(), 0u);
    }

    Tree tree;
    detail::TreeGrower grower{matrix, labels, label_count, feature_count,
                              cfg,    rng,    trace,       tree};
    grower.grow(rows, 0);
    return tree;
}

struct RandomForest {
    std::vector<Tree> trees;
    ForestConfig config;
    std::uint32_t label_count = 0;
    std::uint32_t feature_count = 0;
};

inline RandomForest train_forest(std::span<const FeatureVector> train,
                                 std::span<const std::uint32_t> labels,
                                 std::uint32_t label_count, std::uint32_t feature_count,
                                 const ForestConfig& cfg) {
    cfg.validate();
    if (train.empty()) throw DataError("train_forest: empty training set");
    if (feature_count == 0) throw DataError("train_forest: empty feature space");

    RandomForest forest;
    forest.config = cfg;
    forest.label_count = label_count;
    forest.feature_count = feature_count;
    forest.trees.reserve(cfg.n_trees);
    for (std::uint32_t i = 0; i < cfg.n_trees; ++i)
        forest.trees.push_back(
            train_tree(train, labels, label_count, feature_count, mix_seed(cfg.seed, i), cfg));
    return forest;
}

namespace detail {

inline const TreeNode& descend(const Tree& tree, const FeatureVector& x) {
    const TreeNode* node = &tree[0];
    while (!node->is_leaf()) {
        bool present = std::binary_search(x.begin(), x.end(),
                                          static_cast<std::uint32_t>(node->feature));
        node = &tree[present ? node->child_present : node->child_absent];
    }
    return *node;
}

} // namespace detail

/// Mean over trees of each reached leaf's normalized class counts.
inline std::vector<double> predict_proba(const RandomForest& model, const FeatureVector& x) {
    std::vector<double> proba(model.label_count, 0.0);
    for (const Tree& tree : model.trees) {
        const TreeNode& leaf = detail::descend(tree, x);
        std::uint64_t sum = 0;
        for (std::uint32_t c : leaf.class_counts) sum += c;
        for (std::uint32_t c = 0; c < model.label_count; ++c)
            proba[c] += static_cast<double>(leaf.class_counts[c]) / static_cast<double>(sum);
    }
    for (double& p : proba) p /= static_cast<double>(model.trees.size());
    return proba;
}

/// Argmax of predict_proba; exact ties go to the smallest label id.
inline std::uint32_t predict_label(const RandomForest& model, const FeatureVector& x) {
    auto proba = predict_proba(model, x);
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < proba.size(); ++c)
        if (proba[c] > proba[best]) best = c;
    return best;
}

// --- JSON (de)serialization of trees: nested {f, a, p} / {counts} nodes ---

inline nlohmann::json tree_to_json(const Tree& tree, std::uint32_t index = 0) {
    const TreeNode& node = tree[index];
    if (node.is_leaf()) return nlohmann::json{{"counts", node.class_counts}};
    return nlohmann::json{{"f", node.feature},
                          {"a", tree_to_json(tree, node.child_absent)},
                          {"p", tree_to_json(tree, node.child_present)}};
}

inline std::uint32_t tree_from_json(const nlohmann::json& j, Tree& tree) {
    auto index = static_cast<std::uint32_t>(tree.size());
    tree.emplace_back();
    if (j.contains("counts")) {
        tree[index].class_counts = j.at("counts").get<std::vector<std::uint32_t>>();
        if (tree[index].class_counts.empty())
            throw DataError("model: leaf without class counts");
    } else {
        tree[index].feature = j.at("f").get<std::int32_t>();
        if (tree[index].feature < 0) throw DataError("model: negative split feature");
        std::uint32_t left = tree_from_json(j.at("a"), tree);
        std::uint32_t right = tree_from_json(j.at("p"), tree);
        tree[index].child_absent = left;
        tree[index].child_present = right;
    }
    return index;
}

} // namespace crisda
