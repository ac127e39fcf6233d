// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crisda/error.hpp"

namespace crisda {

/// Rows are gold labels, columns are predicted labels.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(std::uint32_t label_count)
        : label_count_(label_count),
          cells_(static_cast<std::size_t>(label_count) * label_count, 0) {}

    std::uint32_t label_count() const { return label_count_; }

    std::uint64_t& at(std::uint32_t gold, std::uint32_t pred) {
        return cells_[std::size_t(gold) * label_count_ + pred];
    }
    std::uint64_t at(std::uint32_t gold, std::uint32_t pred) const {
        return cells_[std::size_t(gold) * label_count_ + pred];
    }

    std::uint64_t gold_count(std::uint32_t gold) const {
        std::uint64_t n = 0;
        for (std::uint32_t p = 0; p < label_count_; ++p) n += at(gold, p);
        return n;
    }
    std::uint64_t pred_count(std::uint32_t pred) const {
        std::uint64_t n = 0;
        for (std::uint32_t g = 0; g < label_count_; ++g) n += at(g, pred);
        return n;
    }
    std::uint64_t total() const {
        return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
    }
    std::uint64_t trace() const {
        std::uint64_t n = 0;
        for (std::uint32_t c = 0; c < label_count_; ++c) n += at(c, c);
        return n;
    }

private:
    std::uint32_t label_count_;
    std::vector<std::uint64_t> cells_;
};

inline ConfusionMatrix confusion_matrix(std::span<const std::uint32_t> preds,
                                        std::span<const std::uint32_t> golds,
                                        std::uint32_t label_count) {
    if (preds.size() != golds.size())
        throw ArgumentError("confusion_matrix: preds/golds length mismatch");
    if (preds.empty()) throw ArgumentError("confusion_matrix: empty inputs");
    ConfusionMatrix cm(label_count);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (golds[i] >= label_count || preds[i] >= label_count)
            throw ArgumentError("confusion_matrix: label id out of range");
        ++cm.at(golds[i], preds[i]);
    }
    return cm;
}

struct ClassPrf {
    std::uint64_t support = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool precision_undefined = false; // no predictions for the class; reported as 0
};

struct PrfReport {
    std::vector<ClassPrf> per_class;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0; // equals accuracy
    double weighted_f1 = 0.0;
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double accuracy = 0.0;
};

/// Per-class and support-weighted precision/recall/F1. Undefined per-class
/// precision (a class never predicted) is reported as 0 and flagged.
/// Weighted and macro means run over classes with support > 0; weighted
/// recall is algebraically the accuracy.
inline PrfReport prf_weighted(const ConfusionMatrix& cm) {
    const std::uint64_t total = cm.total();
    if (total == 0) throw ArgumentError("prf_weighted: empty confusion matrix");

    PrfReport report;
    report.per_class.resize(cm.label_count());
    double wp = 0, wr = 0, wf = 0, mp = 0, mr = 0, mf = 0;
    std::uint64_t supported_classes = 0;
    for (std::uint32_t c = 0; c < cm.label_count(); ++c) {
        ClassPrf& k = report.per_class[c];
        const std::uint64_t tp = cm.at(c, c);
        const std::uint64_t predicted = cm.pred_count(c);
        k.support = cm.gold_count(c);
        k.precision_undefined = predicted == 0;
        k.precision = predicted == 0 ? 0.0
                                     : static_cast<double>(tp) / static_cast<double>(predicted);
        k.recall = k.support == 0 ? 0.0
                                  : static_cast<double>(tp) / static_cast<double>(k.support);
        k.f1 = (k.precision + k.recall) == 0.0
                   ? 0.0
                   : 2.0 * k.precision * k.recall / (k.precision + k.recall);
        if (k.support > 0) {
            double w = static_cast<double>(k.support);
            wp += w * k.precision;
            wr += w * k.recall;
            wf += w * k.f1;
            mp += k.precision;
            mr += k.recall;
            mf += k.f1;
            ++supported_classes;
        }
    }
    const double n = static_cast<double>(total);
    report.weighted_precision = wp / n;
    report.weighted_recall = wr / n;
    report.weighted_f1 = wf / n;
    if (supported_classes > 0) {
        report.macro_precision = mp / static_cast<double>(supported_classes);
        report.macro_recall = mr / static_cast<double>(supported_classes);
        report.macro_f1 = mf / static_cast<double>(supported_classes);
    }
    report.accuracy = static_cast<double>(cm.trace()) / n;
    return report;
}

struct AucReport {
    /// Per-class AUC; empty for classes lacking a positive or a negative.
    std::vector<std::optional<double>> per_class;
    double weighted_auc = 0.0; // support-weighted over computable classes
    double macro_auc = 0.0;
    std::vector<std::uint32_t> excluded_classes;
};

/// One-vs-rest AUC per the Mann-Whitney statistic: concordant pos/neg pairs
/// count 1, ties 0.5. Computed by average-rank summation, which is the same
/// statistic in O(n log n). Classes without both a positive and a negative
/// are excluded from the weighted mean and flagged.
inline AucReport auc_one_vs_rest(std::span<const std::vector<double>> scores,
                                 std::span<const std::uint32_t> golds,
                                 std::uint32_t label_count, bool check_normalized = true) {
    if (scores.size() != golds.size() || scores.empty())
        throw ArgumentError("auc_one_vs_rest: need equal, non-zero scores and golds");
    for (const auto& row : scores) {
        if (row.size() != label_count)
            throw ArgumentError("auc_one_vs_rest: score vector has wrong length");
        if (check_normalized) {
            double sum = std::accumulate(row.begin(), row.end(), 0.0);
            if (std::abs(sum - 1.0) > 1e-6)
                throw ArgumentError("auc_one_vs_rest: score vector does not sum to 1");
        }
    }

    const std::size_t n = scores.size();
    AucReport report;
    report.per_class.resize(label_count);

    std::vector<std::uint64_t> support(label_count, 0);
    for (std::uint32_t g : golds) ++support[g];

    std::vector<std::size_t> order(n);
    double weighted_num = 0.0, macro_sum = 0.0;
    std::uint64_t weighted_den = 0, computable = 0;
    for (std::uint32_t c = 0; c < label_count; ++c) {
        const std::uint64_t n_pos = support[c];
        const std::uint64_t n_neg = n - n_pos;
        if (n_pos == 0 || n_neg == 0) {
            report.excluded_classes.push_back(c);
            continue;
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return scores[a][c] < scores[b][c];
        });
        // Average ranks across tied score groups; sum positive ranks.
        double rank_pos_sum = 0.0;
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && scores[order[j + 1]][c] == scores[order[i]][c]) ++j;
            double avg_rank = static_cast<double>(i + 1 + j + 1) / 2.0; // 1-based
            for (std::size_t k = i; k <= j; ++k)
                if (golds[order[k]] == c) rank_pos_sum += avg_rank;
            i = j + 1;
        }
        double u = rank_pos_sum -
                   static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
        double auc = u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
        report.per_class[c] = auc;
        weighted_num += static_cast<double>(n_pos) * auc;
        weighted_den += n_pos;
        macro_sum += auc;
        ++computable;
    }
    if (computable == 0) throw DataError("AUC undefined for this test set");
    report.weighted_auc = weighted_num / static_cast<double>(weighted_den);
    report.macro_auc = macro_sum / static_cast<double>(computable);
    return report;
}

/// Everything the reports need for one evaluation.
struct EvalReport {
    ConfusionMatrix cm;
    PrfReport prf;
    AucReport auc;
    std::uint64_t count = 0;
};

inline EvalReport evaluate(std::span<const std::vector<double>> scores,
                           std::span<const std::uint32_t> preds,
                           std::span<const std::uint32_t> golds, std::uint32_t label_count) {
    EvalReport report{confusion_matrix(preds, golds, label_count), {}, {}, golds.size()};
    report.prf = prf_weighted(report.cm);
    report.auc = auc_one_vs_rest(scores, golds, label_count);
    return report;
}

} // namespace crisda
