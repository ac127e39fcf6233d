// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "crisda/csv.hpp"
#include "crisda/error.hpp"
#include "crisda/text.hpp"

namespace crisda {

/// Sorted set of active feature ids (binary presence).
using FeatureVector = std::vector<std::uint32_t>;

/// Uni- and bi-gram lexicon with dense ids in first-seen order. Bigrams are
/// stored as "tokA tokB".
class Vocabulary {
public:
    std::uint32_t size() const { return static_cast<std::uint32_t>(ngrams_.size()); }
    const std::string& ngram(std::uint32_t id) const { return ngrams_.at(id); }
    const std::vector<std::string>& ngrams() const { return ngrams_; }

    std::optional<std::uint32_t> find(const std::string& ngram) const {
        auto it = index_.find(ngram);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::uint32_t insert(const std::string& ngram) {
        auto [it, added] = index_.emplace(ngram, size());
        if (added) ngrams_.push_back(ngram);
        return it->second;
    }

    static Vocabulary from_ngrams(std::vector<std::string> ngrams) {
        Vocabulary v;
        for (auto& g : ngrams) {
            if (v.index_.emplace(g, v.size()).second) v.ngrams_.push_back(std::move(g));
            else throw DataError("vocabulary contains duplicate ngram '" + g + "'");
        }
        return v;
    }

private:
    std::vector<std::string> ngrams_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

namespace detail {

/// Visits each n-gram of a document in stream order: the unigram at every
/// position, then the bigram it closes.
template <typename Fn>
void for_each_ngram(const TokenList& tokens, Fn&& fn) {
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        fn(tokens[i]);
        if (i > 0) fn(tokens[i - 1] + ' ' + tokens[i]);
    }
}

} // namespace detail

/// Lexicon of every uni/bi-gram occurring in the training documents.
inline Vocabulary build_vocabulary(std::span<const TokenList> train_docs) {
    Vocabulary vocab;
    for (const auto& doc : train_docs)
        detail::for_each_ngram(doc, [&](const std::string& g) { vocab.insert(g); });
    return vocab;
}

/// IG-ranked top-K subset of a vocabulary, fit on training data only.
class SelectedFeatures {
public:
    SelectedFeatures(std::vector<std::pair<std::uint32_t, double>> ranked,
                     std::uint32_t k_requested)
        : ranked_(std::move(ranked)), k_requested_(k_requested) {
        sorted_ids_.reserve(ranked_.size());
        for (const auto& [id, score] : ranked_) sorted_ids_.push_back(id);
        std::sort(sorted_ids_.begin(), sorted_ids_.end());
        dense_.reserve(sorted_ids_.size());
        for (std::uint32_t d = 0; d < sorted_ids_.size(); ++d) dense_[sorted_ids_[d]] = d;
    }

    /// (feature id, ig bits), ig descending then id ascending.
    const std::vector<std::pair<std::uint32_t, double>>& ranked() const { return ranked_; }
    std::uint32_t k_requested() const { return k_requested_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(ranked_.size()); }

    bool contains(std::uint32_t vocab_id) const {
        return std::binary_search(sorted_ids_.begin(), sorted_ids_.end(), vocab_id);
    }

    /// Dense index in [0, size) of a selected vocab id.
    std::uint32_t dense_index(std::uint32_t vocab_id) const { return dense_.at(vocab_id); }

    /// Restricts a vocab-id FeatureVector to the selection, remapped to
    /// dense ids. This is the representation the forest trains on.
    FeatureVector to_dense(const FeatureVector& vocab_ids) const {
        FeatureVector dense;
        for (std::uint32_t id : vocab_ids)
            if (contains(id)) dense.push_back(dense_.at(id));
        std::sort(dense.begin(), dense.end());
        return dense;
    }

private:
    std::vector<std::pair<std::uint32_t, double>> ranked_;
    std::uint32_t k_requested_;
    std::vector<std::uint32_t> sorted_ids_;
    std::unordered_map<std::uint32_t, std::uint32_t> dense_;
};

/// Active vocab ids of a document; out-of-vocabulary n-grams are ignored
/// and repeats contribute one id. Restricted to `selected` when given.
inline FeatureVector vectorize(const TokenList& doc, const Vocabulary& vocab,
                               const SelectedFeatures* selected = nullptr) {
    FeatureVector ids;
    detail::for_each_ngram(doc, [&](const std::string& g) {
        if (auto id = vocab.find(g)) {
            if (!selected || selected->contains(*id)) ids.push_back(*id);
        }
    });
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

namespace detail {

/// Entropy in bits of class counts summing to n; 0 log 0 := 0.
inline double entropy_bits(std::span<const std::uint32_t> counts, std::uint64_t n) {
    if (n == 0) return 0.0;
    double acc = 0.0;
    for (std::uint32_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(n);
        acc -= p * std::log2(p);
    }
    return acc;
}

/// IG in bits from a feature/class contingency table: `present[c]` counts
/// documents of class c containing the feature, `total[c]` all documents
/// of class c.
inline double ig_from_contingency(std::span<const std::uint32_t> present,
                                  std::span<const std::uint32_t> total, std::uint64_t n) {
    std::uint64_t n1 = 0;
    std::vector<std::uint32_t> absent(total.size());
    for (std::size_t c = 0; c < total.size(); ++c) {
        n1 += present[c];
        absent[c] = total[c] - present[c];
    }
    std::uint64_t n0 = n - n1;
    double h = entropy_bits(total, n);
    double h1 = entropy_bits(present, n1);
    double h0 = entropy_bits(absent, n0);
    double p1 = static_cast<double>(n1) / static_cast<double>(n);
    double p0 = static_cast<double>(n0) / static_cast<double>(n);
    double ig = h - (p1 * h1 + p0 * h0);
    return ig > 0.0 ? ig : 0.0;
}

} // namespace detail

/// IG(feature; class) = H(C) - [p1 H(C|present) + p0 H(C|absent)], in bits.
inline double information_gain(std::uint32_t feature_id,
                               std::span<const FeatureVector> vectors,
                               std::span<const std::uint32_t> labels,
                               std::uint32_t label_count) {
    if (vectors.size() != labels.size() || vectors.empty())
        throw ArgumentError("information_gain needs equal, non-zero vectors and labels");
    std::vector<std::uint32_t> present(label_count, 0), total(label_count, 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        ++total[labels[i]];
        if (std::binary_search(vectors[i].begin(), vectors[i].end(), feature_id))
            ++present[labels[i]];
    }
    return detail::ig_from_contingency(present, total, vectors.size());
}

/// IG of every feature in [0, vocab_size) over the training vectors.
/// One pass over active ids; integer accumulation, so the result does not
/// depend on document order or parallel scheduling upstream.
inline std::vector<double> information_gain_all(std::span<const FeatureVector> vectors,
                                                std::span<const std::uint32_t> labels,
                                                std::uint32_t vocab_size,
                                                std::uint32_t label_count) {
    if (vectors.size() != labels.size())
        throw ArgumentError("information_gain_all: vectors/labels length mismatch");
    std::vector<std::uint32_t> present(static_cast<std::size_t>(vocab_size) * label_count, 0);
    std::vector<std::uint32_t> total(label_count, 0);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        ++total[labels[i]];
        for (std::uint32_t id : vectors[i]) present[std::size_t(id) * label_count + labels[i]]++;
    }
    std::vector<double> scores(vocab_size, 0.0);
    for (std::uint32_t f = 0; f < vocab_size; ++f) {
        std::span<const std::uint32_t> row(present.data() + std::size_t(f) * label_count,
                                           label_count);
        scores[f] = detail::ig_from_contingency(row, total, vectors.size());
    }
    return scores;
}

/// Scores every vocabulary feature and keeps the top min(k, V), ordered by
/// ig descending then feature id ascending.
inline SelectedFeatures select_top_k(const Vocabulary& vocab,
                                     std::span<const FeatureVector> vectors,
                                     std::span<const std::uint32_t> labels,
                                     std::uint32_t label_count, std::uint32_t k) {
    if (k < 1) throw ArgumentError("select_top_k: k must be >= 1");
    auto scores = information_gain_all(vectors, labels, vocab.size(), label_count);

    std::vector<std::pair<std::uint32_t, double>> ranked;
    ranked.reserve(vocab.size());
    for (std::uint32_t f = 0; f < vocab.size(); ++f) ranked.emplace_back(f, scores[f]);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);
    return SelectedFeatures(std::move(ranked), k);
}

/// Diagnostic dump: CSV `rank,ngram,ig_bits`.
inline void dump_selected_features(const Vocabulary& vocab, const SelectedFeatures& selected,
                                   std::ostream& out) {
    out << "rank,ngram,ig_bits\n";
    std::uint32_t rank = 1;
    for (const auto& [id, score] : selected.ranked()) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.12g", score);
        out << csv::join_record({std::to_string(rank++), vocab.ngram(id), buf});
    }
}

} // namespace crisda
