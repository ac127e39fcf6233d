// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <atomic>
#include <charconv>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "crisda/config.hpp"
#include "crisda/corpus.hpp"
#include "crisda/features.hpp"
#include "crisda/forest.hpp"
#include "crisda/metrics.hpp"
#include "crisda/model.hpp"
#include "crisda/text.hpp"

namespace crisda {

/// All loaded datasets plus the one fixed split per dataset per run.
/// Immutable once built; experiments share it read-only.
class CorpusStore {
public:
    CorpusStore(Taxonomy taxonomy, std::vector<Dataset> datasets)
        : taxonomy_(std::move(taxonomy)), datasets_(std::move(datasets)) {
        for (std::size_t i = 0; i < datasets_.size(); ++i)
            index_.emplace(datasets_[i].short_name, i);
    }

    static CorpusStore load(const Manifest& manifest) {
        std::vector<Dataset> datasets;
        datasets.reserve(manifest.entries.size());
        for (const auto& entry : manifest.entries)
            datasets.push_back(load_dataset(entry, manifest.taxonomy));
        return CorpusStore(manifest.taxonomy, std::move(datasets));
    }

    /// One stratified split per dataset, derived from the master seed.
    void compute_splits(Fraction test_fraction, std::uint64_t master_seed) {
        splits_.clear();
        for (const auto& ds : datasets_)
            splits_.emplace(ds.short_name,
                            make_split(ds, test_fraction, master_seed, taxonomy_.size()));
    }

    const Taxonomy& taxonomy() const { return taxonomy_; }
    const std::vector<Dataset>& datasets() const { return datasets_; }

    bool has(const std::string& name) const { return index_.count(name) > 0; }

    const Dataset& dataset(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw DataError("unknown dataset '" + name + "'");
        return datasets_[it->second];
    }

    const DatasetSplit& split(const std::string& name) const {
        auto it = splits_.find(name);
        if (it == splits_.end())
            throw DataError("no split computed for dataset '" + name + "'");
        return it->second;
    }

private:
    Taxonomy taxonomy_;
    std::vector<Dataset> datasets_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, DatasetSplit> splits_;
};

/// One training instance with its origin dataset (for language resolution).
struct TrainItem {
    const Message* message;
    const Dataset* origin;
};

namespace detail {

/// Indices of `ds` excluded per portion/language rules, in dataset order.
inline void append_portion(const SourcePortion& s, const Dataset& ds,
                           const DatasetSplit* target_split, std::vector<TrainItem>& out) {
    if (s.language_filter) {
        for (const auto& m : ds.messages)
            if (!ds.lang_of(m))
                throw DataError("dataset " + ds.short_name + ": message '" + m.id +
                                "' has no language tag; run tag_languages or set "
                                "default_lang before filtering by language");
    }
    for (std::size_t i = 0; i < ds.messages.size(); ++i) {
        const Message& m = ds.messages[i];
        if (s.language_filter && *ds.lang_of(m) != *s.language_filter) continue;
        if (s.portion == Portion::TrainSplit && target_split->is_test_index(i)) continue;
        out.push_back({&m, &ds});
    }
}

} // namespace detail

/// Concatenates the sources' message portions in declared order. The target
/// only ever contributes its train split, so the result is disjoint from
/// the target's test ids by construction.
inline std::vector<TrainItem> assemble_training_set(const ExperimentSpec& spec,
                                                    const CorpusStore& store) {
    std::set<std::string> seen;
    for (const auto& s : spec.sources)
        if (!seen.insert(s.dataset).second)
            throw ConfigError("experiment '" + spec.name + "': dataset '" + s.dataset +
                              "' appears twice in sources");

    std::vector<TrainItem> items;
    for (const auto& s : spec.sources) {
        if (s.portion == Portion::Full && s.dataset == spec.target)
            throw ConfigError("experiment '" + spec.name +
                              "': the target may never appear with portion full");
        const Dataset& ds = store.dataset(s.dataset);
        const DatasetSplit* split =
            s.portion == Portion::TrainSplit ? &store.split(s.dataset) : nullptr;
        detail::append_portion(s, ds, split, items);
    }
    if (items.empty())
        throw DataError("experiment '" + spec.name + "': assembled training set is empty");
    return items;
}

struct PerClassRow {
    std::string experiment;
    std::string class_name;
    std::uint64_t support = 0;
    double precision = 0, recall = 0, f1 = 0;
    std::optional<double> auc;
    std::string flags;
};

struct ExperimentRow {
    std::string name;
    std::string exp_type;
    std::string train_spec;
    std::string target_test;
    double precision = 0, recall = 0, f1 = 0, auc = 0;
    std::size_t train_size = 0, test_size = 0;
    std::string target; // dataset short_name, used for report grouping
    std::string test_set_digest;
    std::string error; // non-empty marks an error row
};

struct GateAuditRow {
    std::string experiment;
    std::uint32_t trial = 0;
    std::string candidate; // "(base)" for the baseline row
    double auc = 0;
    double delta = 0;
    std::string decision; // baseline | accepted | rejected
};

struct MatrixReport {
    std::vector<ExperimentRow> rows;
    std::vector<PerClassRow> per_class;
    std::vector<GateAuditRow> gate_audit;
};

inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string test_set_digest(const std::string& target, const DatasetSplit& split) {
    std::string blob = target;
    for (const auto& id : split.test_ids) {
        blob.push_back('\n');
        blob += id;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(fnv1a(blob)));
    return hex;
}

namespace detail {

struct TrainedPipeline {
    Vocabulary vocab;
    SelectedFeatures selected;
    RandomForest forest;
    std::set<std::string> stopword_langs;
};

/// preprocess -> vocabulary -> IG top-K -> forest, on training items only.
inline TrainedPipeline train_pipeline(const std::vector<TrainItem>& items,
                                      const RunConfig& cfg, const StopwordTable& table,
                                      std::uint32_t label_count, std::uint64_t forest_seed,
                                      const std::string& context) {
    std::set<std::uint32_t> classes;
    for (const auto& item : items) classes.insert(item.message->label);
    if (classes.size() < 2)
        throw DataError(context + ": degenerate training set (fewer than 2 classes)");

    std::vector<TokenList> docs;
    std::vector<std::uint32_t> labels;
    std::set<std::string> langs;
    docs.reserve(items.size());
    labels.reserve(items.size());
    for (const auto& item : items) {
        auto item_langs = item.origin->langs_of(*item.message);
        langs.insert(item_langs.begin(), item_langs.end());
        docs.push_back(preprocess(item.message->text, item_langs, table));
        labels.push_back(item.message->label);
    }

    Vocabulary vocab = build_vocabulary(docs);
    std::vector<FeatureVector> vectors;
    vectors.reserve(docs.size());
    for (const auto& doc : docs) vectors.push_back(vectorize(doc, vocab));

    SelectedFeatures selected =
        select_top_k(vocab, vectors, labels, label_count, cfg.feature_k);

    std::vector<FeatureVector> dense;
    dense.reserve(vectors.size());
    for (const auto& v : vectors) dense.push_back(selected.to_dense(v));

    ForestConfig fcfg = cfg.forest;
    fcfg.seed = forest_seed;
    RandomForest forest =
        train_forest(dense, labels, label_count, selected.size(), fcfg);
    return {std::move(vocab), std::move(selected), std::move(forest), std::move(langs)};
}

inline EvalReport evaluate_pipeline(const TrainedPipeline& pipe,
                                    const std::vector<TrainItem>& eval_items,
                                    const StopwordTable& table, std::uint32_t label_count) {
    std::vector<std::vector<double>> scores;
    std::vector<std::uint32_t> preds, golds;
    scores.reserve(eval_items.size());
    for (const auto& item : eval_items) {
        TokenList tokens =
            preprocess(item.message->text, item.origin->langs_of(*item.message), table);
        FeatureVector dense = pipe.selected.to_dense(vectorize(tokens, pipe.vocab));
        auto proba = predict_proba(pipe.forest, dense);
        std::uint32_t best = 0;
        for (std::uint32_t c = 1; c < proba.size(); ++c)
            if (proba[c] > proba[best]) best = c;
        preds.push_back(best);
        golds.push_back(item.message->label);
        scores.push_back(std::move(proba));
    }
    return evaluate(scores, preds, golds, label_count);
}

inline std::vector<TrainItem> test_items_of(const CorpusStore& store,
                                            const std::string& target) {
    const Dataset& ds = store.dataset(target);
    const DatasetSplit& split = store.split(target);
    std::vector<TrainItem> items;
    items.reserve(split.test_indices.size());
    for (std::size_t i : split.test_indices) items.push_back({&ds.messages[i], &ds});
    return items;
}

} // namespace detail

struct ExperimentOutcome {
    ExperimentRow row;
    std::vector<PerClassRow> per_class;
    std::optional<ModelBundle> model;
};

/// Runs one experiment: fixed pipeline order, evaluation on the target's
/// frozen test split. Test data never reaches vocabulary, selection, or
/// training.
inline ExperimentOutcome run_experiment(const ExperimentSpec& spec, const CorpusStore& store,
                                        const RunConfig& cfg, const StopwordTable& table,
                                        bool want_model = false) {
    const std::uint32_t label_count = store.taxonomy().size();
    const DatasetSplit& target_split = store.split(spec.target);

    ExperimentRow row;
    row.name = spec.name;
    row.exp_type = to_string(spec.exp_type);
    row.target = spec.target;
    {
        std::string train_spec;
        for (std::size_t i = 0; i < spec.sources.size(); ++i) {
            if (i > 0) train_spec += " + ";
            train_spec += spec.sources[i].describe(cfg.test_fraction);
        }
        row.train_spec = train_spec;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%g", cfg.test_fraction.to_double() * 100.0);
        row.target_test = spec.target + " (" + std::string(buf) + "%)";
    }
    row.test_set_digest = test_set_digest(spec.target, target_split);

    auto items = assemble_training_set(spec, store);
    const std::uint64_t seed = experiment_seed(cfg.master_seed, spec.name);
    auto pipe = detail::train_pipeline(items, cfg, table, label_count,
                                       mix_seed(seed, cfg.forest.seed),
                                       "experiment '" + spec.name + "'");

    auto test_items = detail::test_items_of(store, spec.target);
    EvalReport eval = detail::evaluate_pipeline(pipe, test_items, table, label_count);

    row.precision = eval.prf.weighted_precision;
    row.recall = eval.prf.weighted_recall;
    row.f1 = eval.prf.weighted_f1;
    row.auc = eval.auc.weighted_auc;
    row.train_size = items.size();
    row.test_size = test_items.size();

    ExperimentOutcome outcome;
    outcome.row = std::move(row);
    for (std::uint32_t c = 0; c < label_count; ++c) {
        PerClassRow pc;
        pc.experiment = spec.name;
        pc.class_name = store.taxonomy().name(c);
        pc.support = eval.prf.per_class[c].support;
        pc.precision = eval.prf.per_class[c].precision;
        pc.recall = eval.prf.per_class[c].recall;
        pc.f1 = eval.prf.per_class[c].f1;
        pc.auc = eval.auc.per_class[c];
        std::vector<std::string> flags;
        if (eval.prf.per_class[c].precision_undefined) flags.push_back("precision_undefined_as_zero");
        if (!eval.auc.per_class[c]) flags.push_back("auc_not_computable");
        for (std::size_t i = 0; i < flags.size(); ++i)
            pc.flags += (i ? ";" : "") + flags[i];
        outcome.per_class.push_back(std::move(pc));
    }
    {
        PerClassRow macro;
        macro.experiment = spec.name;
        macro.class_name = "macro_avg";
        macro.support = eval.count;
        macro.precision = eval.prf.macro_precision;
        macro.recall = eval.prf.macro_recall;
        macro.f1 = eval.prf.macro_f1;
        macro.auc = eval.auc.macro_auc;
        outcome.per_class.push_back(std::move(macro));
    }

    if (want_model) {
        ModelBundle bundle;
        bundle.taxonomy = store.taxonomy();
        bundle.vocabulary = pipe.vocab.ngrams();
        bundle.selected = pipe.selected.ranked();
        bundle.k_requested = pipe.selected.k_requested();
        bundle.stopword_langs = pipe.stopword_langs;
        bundle.forest = std::move(pipe.forest);
        outcome.model = std::move(bundle);
    }
    return outcome;
}

struct GateResult {
    std::vector<SourcePortion> accepted; // base plus accepted candidates
    std::vector<GateAuditRow> audit;
};

/// Greedy forward selection over candidate sources, validated on a
/// stratified slice of the target's train split (the test split is never
/// touched). A candidate joins the training set only when it lifts the
/// validation weighted AUC by at least epsilon.
inline GateResult gate_sources(const std::vector<SourcePortion>& candidates,
                               const std::string& target,
                               const std::vector<SourcePortion>& base,
                               const CorpusStore& store, const RunConfig& cfg,
                               const StopwordTable& table, std::uint64_t seed,
                               const std::string& experiment_name = "") {
    const Dataset& target_ds = store.dataset(target);
    const DatasetSplit& split = store.split(target);
    const std::uint32_t label_count = store.taxonomy().size();

    // Stratified validation slice carved out of the target's train indices.
    std::vector<std::vector<std::uint32_t>> by_class(label_count);
    for (std::size_t i : split.train_indices)
        by_class[target_ds.messages[i].label].push_back(static_cast<std::uint32_t>(i));

    std::vector<bool> in_validation(target_ds.messages.size(), false);
    SplitMix64 rng(mix_seed(seed, fnv1a("gate-validation")));
    std::vector<TrainItem> validation_items;
    for (std::uint32_t c = 0; c < label_count; ++c) {
        auto& indices = by_class[c];
        if (indices.empty()) continue;
        shuffle(indices, rng);
        auto n_val = static_cast<std::size_t>(cfg.gate.validation_fraction.round_half_up_times(
            static_cast<std::int64_t>(indices.size())));
        if (n_val == 0)
            throw DataError("gate: validation slice for class '" + store.taxonomy().name(c) +
                            "' of target '" + target +
                            "' is empty; raise gate.validation_fraction");
        for (std::size_t k = 0; k < n_val; ++k) in_validation[indices[k]] = true;
    }
    for (std::size_t i = 0; i < target_ds.messages.size(); ++i)
        if (in_validation[i]) validation_items.push_back({&target_ds.messages[i], &target_ds});

    // Training set for a trial: the current sources, with validation
    // messages excluded from any target train_split portion.
    auto trial_auc = [&](const std::vector<SourcePortion>& sources) {
        std::vector<TrainItem> items;
        for (const auto& s : sources) {
            const Dataset& ds = store.dataset(s.dataset);
            const DatasetSplit* ds_split =
                s.portion == Portion::TrainSplit ? &store.split(s.dataset) : nullptr;
            std::vector<TrainItem> portion_items;
            detail::append_portion(s, ds, ds_split, portion_items);
            for (const auto& item : portion_items) {
                if (s.dataset == target) {
                    auto idx = static_cast<std::size_t>(item.message - ds.messages.data());
                    if (in_validation[idx]) continue;
                }
                items.push_back(item);
            }
        }
        if (items.empty()) return 0.5; // nothing to train on: chance-level baseline
        auto pipe = detail::train_pipeline(items, cfg, table, label_count,
                                           mix_seed(seed, fnv1a("gate-forest")),
                                           "gate trial for '" + target + "'");
        EvalReport eval = detail::evaluate_pipeline(pipe, validation_items, table, label_count);
        return eval.auc.weighted_auc;
    };

    GateResult result;
    result.accepted = base;
    double current_auc = trial_auc(base);
    std::uint32_t trial = 0;
    result.audit.push_back({experiment_name, trial++, "(base)", current_auc, 0.0, "baseline"});

    for (const auto& candidate : candidates) {
        auto with = result.accepted;
        with.push_back(candidate);
        double auc = trial_auc(with);
        double delta = auc - current_auc;
        bool accept = delta >= cfg.gate.epsilon;
        result.audit.push_back({experiment_name, trial++,
                                candidate.describe(cfg.test_fraction), auc, delta,
                                accept ? "accepted" : "rejected"});
        if (accept) {
            result.accepted = std::move(with);
            current_auc = auc;
        }
    }
    return result;
}

/// Runs the whole experiment matrix in declared order. Per-experiment
/// failures become error rows; the matrix itself keeps going.
inline MatrixReport run_matrix(const RunConfig& cfg, const CorpusStore& store,
                               const StopwordTable& table, unsigned jobs = 1) {
    MatrixReport report;
    const std::size_t n = cfg.experiments.size();
    std::vector<ExperimentOutcome> outcomes(n);
    std::vector<std::vector<GateAuditRow>> audits(n);

    auto run_one = [&](std::size_t i) {
        const ExperimentSpec& spec = cfg.experiments[i];
        try {
            ExperimentSpec effective = spec;
            if (cfg.gate.enabled) {
                std::vector<SourcePortion> base, candidates;
                for (const auto& s : spec.sources)
                    (s.dataset == spec.target ? base : candidates).push_back(s);
                auto gate = gate_sources(candidates, spec.target, base, store, cfg, table,
                                         experiment_seed(cfg.master_seed, spec.name),
                                         spec.name);
                audits[i] = std::move(gate.audit);
                std::set<std::string> kept;
                for (const auto& s : gate.accepted) kept.insert(s.dataset);
                effective.sources.clear();
                for (const auto& s : spec.sources)
                    if (kept.count(s.dataset)) effective.sources.push_back(s);
            }
            outcomes[i] = run_experiment(effective, store, cfg, table);
        } catch (const std::exception& e) {
            ExperimentRow row;
            row.name = spec.name;
            row.exp_type = to_string(spec.exp_type);
            row.target = spec.target;
            row.error = e.what();
            try {
                row.test_set_digest = test_set_digest(spec.target, store.split(spec.target));
            } catch (const std::exception&) {
                // target split unavailable; leave the digest empty
            }
            outcomes[i] = ExperimentOutcome{std::move(row), {}, std::nullopt};
        }
    };

    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) run_one(i);
        };
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
            threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (std::size_t i = 0; i < n; ++i) {
        report.rows.push_back(std::move(outcomes[i].row));
        for (auto& pc : outcomes[i].per_class) report.per_class.push_back(std::move(pc));
        for (auto& ga : audits[i]) report.gate_audit.push_back(std::move(ga));
    }
    return report;
}

} // namespace crisda
