// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crisda/corpus.hpp"
#include "crisda/forest.hpp"

namespace crisda {

inline constexpr int kModelFormatVersion = 1;

/// Everything needed to classify raw text: taxonomy, vocabulary, selected
/// features, preprocessing languages, and the trained forest. Tree split
/// ids index into the selected feature list (dense space).
struct ModelBundle {
    Taxonomy taxonomy;
    std::vector<std::string> vocabulary;
    std::vector<std::pair<std::uint32_t, double>> selected; // (vocab id, ig bits)
    std::uint32_t k_requested = 0;
    std::set<std::string> stopword_langs;
    RandomForest forest;
};

struct Prediction {
    std::uint32_t label = 0;
    std::string label_name;
    double confidence = 0.0; // max component of predict_proba
    std::vector<double> proba;
};

/// Preprocess -> vectorize -> selected-dense -> forest.
inline Prediction classify_text(const ModelBundle& model, const Vocabulary& vocab,
                                const SelectedFeatures& selected, const std::string& text,
                                const StopwordTable& table) {
    TokenList tokens = preprocess(text, model.stopword_langs, table);
    FeatureVector dense = selected.to_dense(vectorize(tokens, vocab));
    Prediction pred;
    pred.proba = predict_proba(model.forest, dense);
    pred.label = 0;
    for (std::uint32_t c = 1; c < pred.proba.size(); ++c)
        if (pred.proba[c] > pred.proba[pred.label]) pred.label = c;
    pred.label_name = model.taxonomy.name(pred.label);
    pred.confidence = pred.proba[pred.label];
    return pred;
}

/// Rebuilds the lookup structures a loaded bundle needs for prediction.
struct LoadedModel {
    ModelBundle bundle;
    Vocabulary vocab;
    SelectedFeatures selected;

    LoadedModel(ModelBundle b)
        : bundle(std::move(b)),
          vocab(Vocabulary::from_ngrams(bundle.vocabulary)),
          selected(bundle.selected, bundle.k_requested) {}

    Prediction classify(const std::string& text, const StopwordTable& table) const {
        return classify_text(bundle, vocab, selected, text, table);
    }
};

inline nlohmann::json model_to_json(const ModelBundle& model) {
    nlohmann::json forest_json = nlohmann::json::array();
    for (const Tree& tree : model.forest.trees) forest_json.push_back(tree_to_json(tree));

    nlohmann::json selected_json = nlohmann::json::array();
    for (const auto& [id, score] : model.selected)
        selected_json.push_back(nlohmann::json::array({id, score}));

    nlohmann::json cfg{{"n_trees", model.forest.config.n_trees},
                       {"min_samples_split", model.forest.config.min_samples_split},
                       {"seed", model.forest.config.seed},
                       {"bootstrap", model.forest.config.bootstrap}};
    if (model.forest.config.max_features) cfg["max_features"] = *model.forest.config.max_features;
    if (model.forest.config.max_depth) cfg["max_depth"] = *model.forest.config.max_depth;

    return nlohmann::json{{"format_version", kModelFormatVersion},
                          {"taxonomy", model.taxonomy.names()},
                          {"vocabulary", model.vocabulary},
                          {"selected", selected_json},
                          {"k_requested", model.k_requested},
                          {"stopword_langs", model.stopword_langs},
                          {"label_count", model.forest.label_count},
                          {"config", cfg},
                          {"trees", forest_json}};
}

inline ModelBundle model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("format_version"))
        throw DataError("model file is not a crisda model");
    int version = j.at("format_version").get<int>();
    if (version != kModelFormatVersion)
        throw DataError("model format_version " + std::to_string(version) +
                        " is not supported (expected " +
                        std::to_string(kModelFormatVersion) + ")");

    ModelBundle model;
    try {
        model.taxonomy = Taxonomy(j.at("taxonomy").get<std::vector<std::string>>());
        model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
        for (const auto& pair : j.at("selected"))
            model.selected.emplace_back(pair.at(0).get<std::uint32_t>(),
                                        pair.at(1).get<double>());
        model.k_requested = j.at("k_requested").get<std::uint32_t>();
        for (const auto& tag : j.at("stopword_langs"))
            model.stopword_langs.insert(tag.get<std::string>());

        const auto& cfg = j.at("config");
        model.forest.config.n_trees = cfg.at("n_trees").get<std::uint32_t>();
        model.forest.config.min_samples_split = cfg.at("min_samples_split").get<std::uint32_t>();
        model.forest.config.seed = cfg.at("seed").get<std::uint64_t>();
        model.forest.config.bootstrap = cfg.value("bootstrap", true);
        if (cfg.contains("max_features"))
            model.forest.config.max_features = cfg.at("max_features").get<std::uint32_t>();
        if (cfg.contains("max_depth"))
            model.forest.config.max_depth = cfg.at("max_depth").get<std::uint32_t>();

        model.forest.label_count = j.at("label_count").get<std::uint32_t>();
        model.forest.feature_count = static_cast<std::uint32_t>(model.selected.size());
        for (const auto& tree_json : j.at("trees")) {
            Tree tree;
            tree_from_json(tree_json, tree);
            model.forest.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed model file: ") + e.what());
    }
    if (model.forest.trees.empty()) throw DataError("model file contains no trees");
    for (const auto& [id, score] : model.selected)
        if (id >= model.vocabulary.size())
            throw DataError("model: selected feature id exceeds vocabulary");
    return model;
}

inline void save_model(const ModelBundle& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path);
    out << model_to_json(model).dump() << '\n';
}

inline LoadedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed model file " + path + ": " + e.what());
    }
    return LoadedModel(model_from_json(j));
}

} // namespace crisda
