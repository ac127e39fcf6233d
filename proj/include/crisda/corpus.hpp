// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "crisda/csv.hpp"
#include "crisda/error.hpp"
#include "crisda/lang_id.hpp"
#include "crisda/rational.hpp"
#include "crisda/rng.hpp"
#include "crisda/text.hpp"

namespace crisda {

/// Label names with dense ids 0..L-1 in declaration order.
class Taxonomy {
public:
    Taxonomy() = default;
    explicit Taxonomy(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw ArgumentError("taxonomy must declare at least one label");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!ids_.emplace(names_[i], static_cast<std::uint32_t>(i)).second)
                throw ArgumentError("duplicate label name in taxonomy: " + names_[i]);
        }
    }

    static Taxonomy default_six() {
        return Taxonomy({"affected_individuals", "infrastructure_utilities",
                         "donations_volunteering", "caution_advice", "sympathy_support",
                         "other_useful"});
    }

    std::uint32_t size() const { return static_cast<std::uint32_t>(names_.size()); }
    const std::string& name(std::uint32_t id) const { return names_.at(id); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::uint32_t> find(const std::string& name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

struct Message {
    std::string id;
    std::string text;
    std::uint32_t label = 0;
    std::optional<std::string> lang; // lowercase ISO-639-1-style tag
};

struct Date {
    int year = 0, month = 0, day = 0;

    static Date parse_iso(const std::string& s) {
        Date d;
        char dash1 = 0, dash2 = 0;
        std::istringstream in(s);
        in >> d.year >> dash1 >> d.month >> dash2 >> d.day;
        if (!in || dash1 != '-' || dash2 != '-' || d.month < 1 || d.month > 12 ||
            d.day < 1 || d.day > 31)
            throw DataError("invalid ISO-8601 date: '" + s + "'");
        return d;
    }

    std::string to_iso() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
        return buf;
    }

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// One named crisis event and its labeled messages.
struct Dataset {
    std::string short_name;
    std::string event_type;
    Date date;
    std::optional<std::string> default_lang;
    std::vector<Message> messages;
    std::optional<std::size_t> expected_count;

    /// Effective language tag of a message: its own column wins over the
    /// dataset default.
    std::optional<std::string> lang_of(const Message& m) const {
        return m.lang ? m.lang : default_lang;
    }

    std::set<std::string> langs_of(const Message& m) const {
        std::set<std::string> tags;
        if (auto tag = lang_of(m)) tags.insert(*tag);
        return tags;
    }
};

/// Manifest entry describing where a dataset lives and what to expect of it.
struct ManifestEntry {
    std::string short_name;
    std::string path; // resolved against the manifest's directory
    std::string event_type;
    Date date;
    std::optional<std::string> default_lang;
    std::optional<std::size_t> expected_count;
};

struct Manifest {
    Taxonomy taxonomy;
    std::vector<ManifestEntry> entries;

    const ManifestEntry* find(const std::string& short_name) const {
        for (const auto& e : entries)
            if (e.short_name == short_name) return &e;
        return nullptr;
    }
};

/// Manifest JSON: either a bare array of entries, or an object
/// {"labels": [...], "datasets": [...]} overriding the default taxonomy.
inline Manifest parse_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open manifest: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed manifest " + path + ": " + e.what());
    }

    Manifest manifest;
    const nlohmann::json* entries = nullptr;
    if (j.is_array()) {
        manifest.taxonomy = Taxonomy::default_six();
        entries = &j;
    } else if (j.is_object() && j.contains("datasets")) {
        manifest.taxonomy = j.contains("labels")
                                ? Taxonomy(j.at("labels").get<std::vector<std::string>>())
                                : Taxonomy::default_six();
        entries = &j.at("datasets");
    } else {
        throw DataError("manifest " + path +
                        " must be an array of datasets or {labels?, datasets}");
    }

    std::filesystem::path base = std::filesystem::path(path).parent_path();
    std::unordered_set<std::string> seen;
    for (const auto& e : *entries) {
        ManifestEntry entry;
        try {
            entry.short_name = e.at("short_name").get<std::string>();
            entry.event_type = e.at("event_type").get<std::string>();
            entry.date = Date::parse_iso(e.at("date").get<std::string>());
            std::filesystem::path p = e.at("path").get<std::string>();
            entry.path = p.is_absolute() ? p.string() : (base / p).string();
            if (e.contains("default_lang"))
                entry.default_lang = e.at("default_lang").get<std::string>();
            if (e.contains("expected_count"))
                entry.expected_count = e.at("expected_count").get<std::size_t>();
        } catch (const nlohmann::json::exception& ex) {
            throw DataError("manifest " + path + ": bad entry: " + ex.what());
        }
        if (!seen.insert(entry.short_name).second)
            throw DataError("manifest " + path + ": duplicate short_name '" +
                            entry.short_name + "'");
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

namespace detail {

inline std::string trimmed(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n'))
        --e;
    return std::string(s.substr(b, e - b));
}

} // namespace detail

/// Loads a dataset CSV (`id,text,label[,lang]`, RFC-4180) against its
/// manifest entry. Row numbers in diagnostics count the header as row 1.
inline Dataset load_dataset(const ManifestEntry& entry, const Taxonomy& taxonomy) {
    auto records = csv::parse_file(entry.path);
    if (records.empty()) throw DataError(entry.path + ": missing CSV header");

    const auto& header = records.front();
    auto column = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (detail::trimmed(header[i]) == name) return i;
        return std::nullopt;
    };
    auto id_col = column("id");
    auto text_col = column("text");
    auto label_col = column("label");
    auto lang_col = column("lang");
    if (!id_col || !text_col || !label_col)
        throw DataError(entry.path + ": header must contain id,text,label columns");

    Dataset ds;
    ds.short_name = entry.short_name;
    ds.event_type = entry.event_type;
    ds.date = entry.date;
    ds.default_lang = entry.default_lang;
    ds.expected_count = entry.expected_count;

    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::string row = std::to_string(r + 1);
        std::size_t needed = std::max({*id_col, *text_col, *label_col}) + 1;
        if (rec.size() < needed)
            throw DataError(entry.path + ": row " + row + " has " +
                            std::to_string(rec.size()) + " fields, expected at least " +
                            std::to_string(needed));

        Message m;
        m.id = detail::trimmed(rec[*id_col]);
        m.text = rec[*text_col];
        if (m.id.empty()) throw DataError(entry.path + ": row " + row + " has empty id");
        if (detail::trimmed(m.text).empty())
            throw DataError(entry.path + ": row " + row + " has empty text");
        if (!seen_ids.insert(m.id).second)
            throw DataError(entry.path + ": row " + row + " duplicates message id '" +
                            m.id + "'");

        std::string label_name = detail::trimmed(rec[*label_col]);
        if (label_name.empty())
            throw DataError(entry.path + ": row " + row + " has empty label");
        auto label_id = taxonomy.find(label_name);
        if (!label_id)
            throw DataError(entry.path + ": row " + row + " has unknown label '" +
                            label_name + "'");
        m.label = *label_id;

        if (lang_col && *lang_col < rec.size()) {
            std::string tag = detail::trimmed(rec[*lang_col]);
            if (!tag.empty()) m.lang = tag;
        }
        ds.messages.push_back(std::move(m));
    }

    if (ds.expected_count && ds.messages.size() != *ds.expected_count)
        throw DataError(entry.path + ": expected " + std::to_string(*ds.expected_count) +
                        " messages, loaded " + std::to_string(ds.messages.size()));
    return ds;
}

/// Deterministic stratified holdout of one dataset.
struct DatasetSplit {
    std::string dataset;
    std::uint64_t seed = 0;
    Fraction test_fraction;
    std::vector<std::string> train_ids; // dataset order
    std::vector<std::string> test_ids;  // dataset order
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;

    bool is_test_index(std::size_t i) const { return test_mask_.at(i); }
    const std::vector<bool>& test_mask() const { return test_mask_; }
    void set_test_mask(std::vector<bool> mask) { test_mask_ = std::move(mask); }

private:
    std::vector<bool> test_mask_;
};

/// Splits per label class: |test_c| = round-half-up(test_fraction * n_c),
/// membership decided by a seeded shuffle of each class. Fully determined
/// by (dataset content, seed, test_fraction).
inline DatasetSplit make_split(const Dataset& ds, Fraction test_fraction, std::uint64_t seed,
                               std::uint32_t label_count) {
    if (!test_fraction.in_open_unit_interval())
        throw ArgumentError("test_fraction must lie strictly between 0 and 1");
    for (const auto& m : ds.messages)
        if (m.label >= label_count)
            throw ArgumentError("message label id out of range in dataset " + ds.short_name);

    std::vector<std::vector<std::uint32_t>> by_class(label_count);
    for (std::size_t i = 0; i < ds.messages.size(); ++i)
        by_class[ds.messages[i].label].push_back(static_cast<std::uint32_t>(i));

    std::vector<bool> test_mask(ds.messages.size(), false);
    SplitMix64 rng(mix_seed(seed, fnv1a(ds.short_name)));
    for (std::uint32_t c = 0; c < label_count; ++c) {
        auto& indices = by_class[c];
        if (indices.empty()) continue;
        shuffle(indices, rng);
        auto n_test = static_cast<std::size_t>(
            test_fraction.round_half_up_times(static_cast<std::int64_t>(indices.size())));
        for (std::size_t k = 0; k < n_test; ++k) test_mask[indices[k]] = true;
    }

    DatasetSplit split;
    split.dataset = ds.short_name;
    split.seed = seed;
    split.test_fraction = test_fraction;
    for (std::size_t i = 0; i < ds.messages.size(); ++i) {
        if (test_mask[i]) {
            split.test_ids.push_back(ds.messages[i].id);
            split.test_indices.push_back(i);
        } else {
            split.train_ids.push_back(ds.messages[i].id);
            split.train_indices.push_back(i);
        }
    }
    split.set_test_mask(std::move(test_mask));
    return split;
}

/// Ascending by date; equal dates keep their declaration order.
inline std::vector<Dataset> order_chronologically(std::vector<Dataset> datasets) {
    std::stable_sort(datasets.begin(), datasets.end(),
                     [](const Dataset& a, const Dataset& b) { return a.date < b.date; });
    return datasets;
}

namespace detail {

inline std::string upper_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'a' && c <= 'z') c -= 0x20;
    return out;
}

} // namespace detail

/// Messages of `ds` carrying the given language tag, as a new dataset named
/// "<short_name>-<LANG>". Every message must be tagged (own tag or dataset
/// default); untagged messages are an error, not silently dropped.
inline Dataset filter_language(const Dataset& ds, const std::string& tag) {
    for (const auto& m : ds.messages)
        if (!ds.lang_of(m))
            throw DataError("dataset " + ds.short_name + ": message '" + m.id +
                            "' has no language tag; run tag_languages or set default_lang");

    Dataset out;
    out.short_name = ds.short_name + "-" + detail::upper_ascii(tag);
    out.event_type = ds.event_type;
    out.date = ds.date;
    out.default_lang = tag;
    for (const auto& m : ds.messages)
        if (*ds.lang_of(m) == tag) out.messages.push_back(m);
    return out;
}

/// Fills missing language tags with identify_language guesses ("und" when
/// the guess is not confident). Tagged messages are left untouched.
inline Dataset tag_languages(Dataset ds, const std::vector<LanguageProfile>& profiles) {
    for (auto& m : ds.messages) {
        if (m.lang || ds.default_lang) continue;
        m.lang = identify_language(strip_noise(m.text), profiles).tag;
    }
    return ds;
}

/// Jaccard coefficient of two datasets' post-preprocessing unigram sets.
inline double lexical_overlap(const Dataset& a, const Dataset& b, const StopwordTable& table) {
    if (a.messages.empty() || b.messages.empty())
        throw ArgumentError("lexical_overlap requires non-empty datasets");

    auto unigrams = [&](const Dataset& ds) {
        std::unordered_set<std::string> vocab;
        for (const auto& m : ds.messages)
            for (auto& token : preprocess(m.text, ds.langs_of(m), table))
                vocab.insert(std::move(token));
        return vocab;
    };
    auto va = unigrams(a);
    auto vb = unigrams(b);
    if (va.empty() || vb.empty())
        throw DataError("lexical_overlap: empty post-preprocessing vocabulary in dataset " +
                        (va.empty() ? a.short_name : b.short_name));

    std::size_t intersection = 0;
    for (const auto& token : va)
        if (vb.count(token)) ++intersection;
    std::size_t unions = va.size() + vb.size() - intersection;
    return static_cast<double>(intersection) / static_cast<double>(unions);
}

} // namespace crisda
