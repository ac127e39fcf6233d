// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "crisda/corpus.hpp"
#include "crisda/error.hpp"
#include "crisda/forest.hpp"
#include "crisda/rational.hpp"
#include "crisda/rng.hpp"

namespace crisda {

enum class Portion { Full, TrainSplit };

inline std::string to_string(Portion p) {
    return p == Portion::Full ? "full" : "train_split";
}

/// One training-set ingredient: a dataset, how much of it, and an optional
/// language restriction applied first.
struct SourcePortion {
    std::string dataset;
    Portion portion = Portion::Full;
    std::optional<std::string> language_filter;

    /// Human-readable form used in reports, e.g. "ITEQ-EN (100%)".
    std::string describe(const Fraction& test_fraction) const {
        std::string name = dataset;
        if (language_filter) name += "-" + detail::upper_ascii(*language_filter);
        if (portion == Portion::Full) return name + " (100%)";
        Fraction train(test_fraction.den - test_fraction.num, test_fraction.den);
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%g", train.to_double() * 100.0);
        return name + " (" + buf + "%)";
    }
};

enum class ExpType { SS, MS, MSWT, SC };

inline std::string to_string(ExpType t) {
    switch (t) {
    case ExpType::SS: return "SS";
    case ExpType::MS: return "MS";
    case ExpType::MSWT: return "MSWT";
    case ExpType::SC: return "SC";
    }
    return "?";
}

inline ExpType exp_type_from_string(const std::string& s) {
    if (s == "SS") return ExpType::SS;
    if (s == "MS") return ExpType::MS;
    if (s == "MSWT") return ExpType::MSWT;
    if (s == "SC") return ExpType::SC;
    throw ConfigError("unknown exp_type '" + s + "' (expected SS, MS, MSWT, or SC)");
}

/// One declarative experiment: train on `sources`, evaluate on the fixed
/// test split of `target`.
struct ExperimentSpec {
    std::string name;
    ExpType exp_type = ExpType::SS;
    std::vector<SourcePortion> sources;
    std::string target;
    std::string notes;
};

struct GateConfig {
    bool enabled = false;
    double epsilon = 0.005;
    Fraction validation_fraction{1, 5};
};

struct RunConfig {
    std::uint64_t master_seed = 42;
    Fraction test_fraction{3, 10};
    std::uint32_t feature_k = 1000;
    ForestConfig forest; // seed field is a base; effective seeds are derived
    std::string manifest_path;
    std::vector<ExperimentSpec> experiments;
    GateConfig gate;
};

/// Seed stream for one experiment; independent of every other experiment.
inline std::uint64_t experiment_seed(std::uint64_t master_seed, const std::string& name) {
    return mix_seed(master_seed, fnv1a(name));
}

namespace detail {

inline std::string json_line_of(const std::string& content, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < content.size(); ++i)
        if (content[i] == '\n') ++line;
    return std::to_string(line);
}

inline Fraction fraction_field(const nlohmann::json& j, const char* key, Fraction fallback) {
    if (!j.contains(key)) return fallback;
    return Fraction::from_double(j.at(key).get<double>());
}

} // namespace detail

/// Parses and schema-checks an experiment config. Violations of the
/// ExperimentSpec invariants are reported here, before any data loads.
inline RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path + " line " + detail::json_line_of(content, e.byte) + ": " +
                          e.what());
    }
    if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");

    RunConfig cfg;
    try {
        cfg.master_seed = j.value("master_seed", std::uint64_t{42});
        cfg.test_fraction = detail::fraction_field(j, "test_fraction", Fraction{3, 10});
        cfg.feature_k = j.value("feature_k", std::uint32_t{1000});

        if (j.contains("forest")) {
            const auto& f = j.at("forest");
            cfg.forest.n_trees = f.value("n_trees", std::uint32_t{100});
            cfg.forest.min_samples_split = f.value("min_samples_split", std::uint32_t{2});
            cfg.forest.seed = f.value("seed", std::uint64_t{0});
            cfg.forest.bootstrap = f.value("bootstrap", true);
            if (f.contains("max_features") && !f.at("max_features").is_null()) {
                if (f.at("max_features").is_string()) {
                    if (f.at("max_features").get<std::string>() != "sqrt")
                        throw ConfigError("forest.max_features must be \"sqrt\" or an integer");
                } else {
                    cfg.forest.max_features = f.at("max_features").get<std::uint32_t>();
                }
            }
            if (f.contains("max_depth") && !f.at("max_depth").is_null())
                cfg.forest.max_depth = f.at("max_depth").get<std::uint32_t>();
        }

        if (!j.contains("manifest_path"))
            throw ConfigError(path + ": missing required key 'manifest_path'");
        std::filesystem::path mp = j.at("manifest_path").get<std::string>();
        std::filesystem::path base = std::filesystem::path(path).parent_path();
        cfg.manifest_path = mp.is_absolute() ? mp.string() : (base / mp).string();

        for (const auto& e : j.value("experiments", nlohmann::json::array())) {
            ExperimentSpec spec;
            spec.name = e.at("name").get<std::string>();
            spec.exp_type = exp_type_from_string(e.at("exp_type").get<std::string>());
            spec.target = e.at("target").get<std::string>();
            spec.notes = e.value("notes", std::string{});
            for (const auto& s : e.at("sources")) {
                SourcePortion portion;
                portion.dataset = s.at("dataset").get<std::string>();
                std::string p = s.value("portion", std::string{"full"});
                if (p == "full") portion.portion = Portion::Full;
                else if (p == "train_split") portion.portion = Portion::TrainSplit;
                else throw ConfigError("experiment '" + spec.name + "': unknown portion '" +
                                       p + "' (expected full or train_split)");
                if (s.contains("language_filter"))
                    portion.language_filter = s.at("language_filter").get<std::string>();
                spec.sources.push_back(std::move(portion));
            }
            cfg.experiments.push_back(std::move(spec));
        }

        if (j.contains("gate")) {
            const auto& g = j.at("gate");
            cfg.gate.enabled = g.value("enabled", false);
            cfg.gate.epsilon = g.value("epsilon", 0.005);
            cfg.gate.validation_fraction =
                detail::fraction_field(g, "validation_fraction", Fraction{1, 5});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }

    // Invariants checkable without the manifest.
    if (!cfg.test_fraction.in_open_unit_interval())
        throw ConfigError(path + ": test_fraction must lie strictly between 0 and 1");
    if (!cfg.gate.validation_fraction.in_open_unit_interval())
        throw ConfigError(path + ": gate.validation_fraction must lie strictly between 0 and 1");
    if (cfg.gate.epsilon < 0) throw ConfigError(path + ": gate.epsilon must be >= 0");
    if (cfg.feature_k < 1) throw ConfigError(path + ": feature_k must be >= 1");
    cfg.forest.validate();

    std::unordered_set<std::string> names;
    for (const auto& spec : cfg.experiments) {
        const std::string where = path + ": experiment '" + spec.name + "': ";
        if (!names.insert(spec.name).second)
            throw ConfigError(path + ": duplicate experiment name '" + spec.name + "'");
        if (spec.sources.empty()) throw ConfigError(where + "needs at least one source");

        std::unordered_set<std::string> source_names;
        bool has_target_train = false;
        for (const auto& s : spec.sources) {
            if (!source_names.insert(s.dataset).second)
                throw ConfigError(where + "dataset '" + s.dataset +
                                  "' appears twice in sources");
            if (s.portion == Portion::TrainSplit) {
                if (s.dataset != spec.target)
                    throw ConfigError(where + "portion train_split is only valid for the "
                                              "target dataset (got '" + s.dataset + "')");
                has_target_train = true;
            } else if (s.dataset == spec.target) {
                throw ConfigError(where + "the target may never appear with portion full");
            }
        }
        switch (spec.exp_type) {
        case ExpType::SS:
            if (spec.sources.size() != 1)
                throw ConfigError(where + "SS requires exactly one source");
            break;
        case ExpType::MS:
            if (spec.sources.size() < 2)
                throw ConfigError(where + "MS requires at least two sources");
            if (has_target_train)
                throw ConfigError(where + "MS sources must not include the target");
            break;
        case ExpType::MSWT:
            if (!has_target_train)
                throw ConfigError(where +
                                  "MSWT must include the target with portion train_split");
            break;
        case ExpType::SC:
            break; // special cases are free-form source compositions
        }
    }
    return cfg;
}

/// Cross-checks experiments against the manifest. Returns chronology
/// warnings (a source dated after its target); unknown dataset references
/// throw ConfigError.
inline std::vector<std::string> validate_against_manifest(const RunConfig& cfg,
                                                          const Manifest& manifest) {
    std::vector<std::string> warnings;
    for (const auto& spec : cfg.experiments) {
        const ManifestEntry* target = manifest.find(spec.target);
        if (!target)
            throw ConfigError("experiment '" + spec.name + "': target '" + spec.target +
                              "' is not in the manifest");
        for (const auto& s : spec.sources) {
            const ManifestEntry* src = manifest.find(s.dataset);
            if (!src)
                throw ConfigError("experiment '" + spec.name + "': source '" + s.dataset +
                                  "' is not in the manifest");
            if (s.dataset != spec.target && target->date < src->date)
                warnings.push_back("experiment '" + spec.name + "': source '" + s.dataset +
                                   "' (" + src->date.to_iso() + ") postdates target '" +
                                   spec.target + "' (" + target->date.to_iso() + ")");
        }
    }
    return warnings;
}

} // namespace crisda
