// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "crisda/error.hpp"
#include "crisda/text.hpp"

namespace crisda {

/// Frequency-ranked character-3-gram profile of one language.
class LanguageProfile {
public:
    static constexpr std::size_t kCapacity = 300;

    LanguageProfile(std::string tag, std::vector<std::string> ranked_trigrams)
        : tag_(std::move(tag)), trigrams_(std::move(ranked_trigrams)) {
        if (trigrams_.empty()) throw ArgumentError("language profile must be non-empty");
        if (trigrams_.size() > kCapacity) trigrams_.resize(kCapacity);
        for (std::size_t i = 0; i < trigrams_.size(); ++i) rank_[trigrams_[i]] = i;
    }

    /// Builds a profile from reference text in the given language.
    static LanguageProfile from_text(std::string tag, std::string_view reference);

    const std::string& tag() const { return tag_; }
    const std::vector<std::string>& trigrams() const { return trigrams_; }

    /// Rank of a trigram, or kCapacity when absent (the out-of-place penalty).
    std::size_t rank_of(const std::string& trigram) const {
        auto it = rank_.find(trigram);
        return it == rank_.end() ? kCapacity : it->second;
    }

private:
    std::string tag_;
    std::vector<std::string> trigrams_;
    std::unordered_map<std::string, std::size_t> rank_;
};

struct LanguageGuess {
    std::string tag;   // "und" when no profile scores confidently
    double confidence; // in [0, 1]
};

namespace detail {

/// Canonical character stream for trigram extraction: folded text with
/// non-letters mapped to single spaces, padded with one space on each side.
inline std::u32string trigram_stream(std::string_view text) {
    std::u32string folded = uni::normalize_fold(text);
    std::u32string stream;
    stream.reserve(folded.size() + 2);
    stream.push_back(' ');
    for (char32_t c : folded) {
        if (uni::is_letter(c)) {
            stream.push_back(c);
        } else if (stream.back() != ' ') {
            stream.push_back(' ');
        }
    }
    if (stream.back() != ' ') stream.push_back(' ');
    return stream;
}

/// Trigrams of `text` ranked by descending frequency (ties lexicographic).
inline std::vector<std::string> ranked_trigrams(std::string_view text, std::size_t limit) {
    std::u32string stream = trigram_stream(text);
    std::unordered_map<std::string, std::uint32_t> counts;
    if (stream.size() >= 3) {
        for (std::size_t i = 0; i + 3 <= stream.size(); ++i) {
            std::string gram;
            for (std::size_t k = 0; k < 3; ++k) uni::encode(stream[i + k], gram);
            ++counts[gram];
        }
    }
    std::vector<std::pair<std::string, std::uint32_t>> order(counts.begin(), counts.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (order.size() > limit) order.resize(limit);
    std::vector<std::string> ranked;
    ranked.reserve(order.size());
    for (auto& [gram, n] : order) ranked.push_back(std::move(gram));
    return ranked;
}

} // namespace detail

inline LanguageProfile LanguageProfile::from_text(std::string tag, std::string_view reference) {
    auto ranked = detail::ranked_trigrams(reference, kCapacity);
    if (ranked.empty()) throw ArgumentError("reference text produced no trigrams");
    return LanguageProfile(std::move(tag), std::move(ranked));
}

/// Out-of-place rank distance between the text's trigram profile and each
/// language profile; the closest tag wins with confidence 1 - dist/maxdist.
/// Returns "und" below 0.2 confidence or for texts under 12 characters.
inline LanguageGuess identify_language(std::string_view text,
                                       const std::vector<LanguageProfile>& profiles) {
    if (profiles.empty()) throw ConfigError("no language profiles loaded");

    std::u32string stream = detail::trigram_stream(text);
    // stream carries one pad space on each side.
    if (stream.size() < 12 + 2) return {"und", 0.0};

    auto text_profile = detail::ranked_trigrams(text, LanguageProfile::kCapacity);
    if (text_profile.empty()) return {"und", 0.0};

    const double maxdist =
        static_cast<double>(text_profile.size()) * LanguageProfile::kCapacity;
    std::string best_tag;
    double best_conf = -1.0;
    for (const auto& profile : profiles) {
        double dist = 0.0;
        for (std::size_t i = 0; i < text_profile.size(); ++i) {
            std::size_t r = profile.rank_of(text_profile[i]);
            dist += r == LanguageProfile::kCapacity
                        ? static_cast<double>(LanguageProfile::kCapacity)
                        : static_cast<double>(i > r ? i - r : r - i);
        }
        double conf = 1.0 - dist / maxdist;
        if (conf > best_conf || (conf == best_conf && profile.tag() < best_tag)) {
            best_conf = conf;
            best_tag = profile.tag();
        }
    }
    if (best_conf < 0.2) return {"und", best_conf < 0 ? 0.0 : best_conf};
    return {best_tag, best_conf};
}

/// Profile file: JSON {"tag": ..., "trigrams": [ordered strings]}.
inline LanguageProfile load_language_profile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open language profile: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed language profile " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("tag") || !j.contains("trigrams"))
        throw DataError("language profile " + path + " must have {tag, trigrams}");
    return LanguageProfile(j.at("tag").get<std::string>(),
                           j.at("trigrams").get<std::vector<std::string>>());
}

inline void save_language_profile(const LanguageProfile& profile, const std::string& path) {
    nlohmann::json j{{"tag", profile.tag()}, {"trigrams", profile.trigrams()}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write language profile: " + path);
    out << j.dump(2) << '\n';
}

std::vector<LanguageProfile> builtin_language_profiles(); // lang_ref_builtin.hpp

} // namespace crisda

#include "crisda/lang_ref_builtin.hpp"
