// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "crisda/unicode.hpp"

namespace crisda {

/// Ordered lowercase tokens of one document.
using TokenList = std::vector<std::string>;

namespace detail {

inline bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

inline bool is_word_byte(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_';
}

inline bool ci_starts_with(std::string_view s, std::size_t pos, std::string_view prefix) {
    if (pos + prefix.size() > s.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        char a = s[pos + i];
        if (a >= 'A' && a <= 'Z') a += 0x20;
        if (a != prefix[i]) return false;
    }
    return true;
}

/// Length of the noise run starting at `pos`, or 0 if none starts there.
/// Noise is a URL (http://, https://, www. up to whitespace) or a user
/// mention (@ followed by at least one word character).
inline std::size_t noise_run(std::string_view s, std::size_t pos) {
    if (ci_starts_with(s, pos, "http://") || ci_starts_with(s, pos, "https://") ||
        ci_starts_with(s, pos, "www.")) {
        std::size_t end = pos;
        while (end < s.size() && !is_space_byte(s[end])) ++end;
        return end - pos;
    }
    if (s[pos] == '@' && pos + 1 < s.size() && is_word_byte(s[pos + 1])) {
        std::size_t end = pos + 1;
        while (end < s.size() && is_word_byte(s[end])) ++end;
        return end - pos;
    }
    return 0;
}

} // namespace detail

/// Removes URLs and user mentions, collapses whitespace runs to a single
/// space, and trims. The output never contains a substring matching either
/// noise pattern.
inline std::string strip_noise(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t run = detail::noise_run(text, i);
        if (run > 0) {
            i += run;
            continue;
        }
        cleaned.push_back(text[i]);
        ++i;
    }

    std::string out;
    out.reserve(cleaned.size());
    bool pending_space = false;
    for (char c : cleaned) {
        if (detail::is_space_byte(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

/// Unicode-folded lowercase tokens: maximal runs of letters, digits, and
/// apostrophes. `#` and all other punctuation delimit, so hashtags become
/// plain word tokens.
inline TokenList tokenize(std::string_view text) {
    std::u32string folded = uni::normalize_fold(text);
    TokenList tokens;
    std::string current;
    for (char32_t c : folded) {
        if (uni::is_letter(c) || uni::is_digit(c) || c == '\'') {
            uni::encode(c, current);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

/// Per-language stopword sets. Lookups for unknown tags yield no stopwords.
class StopwordTable {
public:
    void set_language(const std::string& tag, std::unordered_set<std::string> words) {
        lists_[tag] = std::move(words);
    }

    const std::unordered_set<std::string>* find(const std::string& tag) const {
        auto it = lists_.find(tag);
        return it == lists_.end() ? nullptr : &it->second;
    }

    bool is_stopword(const std::string& token, const std::set<std::string>& langs) const {
        for (const auto& tag : langs) {
            const auto* words = find(tag);
            if (words && words->count(token)) return true;
        }
        return false;
    }

    std::vector<std::string> languages() const {
        std::vector<std::string> tags;
        tags.reserve(lists_.size());
        for (const auto& [tag, words] : lists_) tags.push_back(tag);
        return tags;
    }

private:
    std::unordered_map<std::string, std::unordered_set<std::string>> lists_;
};

/// Drops tokens found in the union of the stoplists for `langs`,
/// preserving the order of survivors.
inline TokenList remove_stopwords(const TokenList& tokens, const std::set<std::string>& langs,
                                  const StopwordTable& table) {
    TokenList kept;
    kept.reserve(tokens.size());
    for (const auto& token : tokens)
        if (!table.is_stopword(token, langs)) kept.push_back(token);
    return kept;
}

/// strip_noise + tokenize + remove_stopwords in pipeline order.
inline TokenList preprocess(std::string_view text, const std::set<std::string>& langs,
                            const StopwordTable& table) {
    return remove_stopwords(tokenize(strip_noise(text)), langs, table);
}

/// Parses stopword-list content: one lowercase word per line, UTF-8,
/// '#'-prefixed comment lines and blank lines ignored.
inline std::unordered_set<std::string> parse_stopword_list(std::string_view content) {
    std::unordered_set<std::string> words;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        std::size_t eol = content.find('\n', pos);
        std::string_view line =
            content.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                              : eol - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        if (!line.empty() && line.front() != '#') words.emplace(line);
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return words;
}

StopwordTable builtin_stopwords(); // defined in stopwords_builtin.hpp

} // namespace crisda

#include "crisda/stopwords_builtin.hpp"
