// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crisda/config.hpp"
#include "crisda/corpus.hpp"
#include "crisda/csv.hpp"
#include "crisda/harness.hpp"
#include "crisda/model.hpp"
#include "crisda/report_io.hpp"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

crisda::StopwordTable load_stopwords() {
    crisda::StopwordTable table = crisda::builtin_stopwords();
    const char* dir = std::getenv("CRISDA_STOPWORDS_DIR");
    if (!dir || !*dir) return table;
    if (!fs::is_directory(dir))
        throw crisda::DataError(std::string("CRISDA_STOPWORDS_DIR is not a directory: ") + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw crisda::DataError("cannot open stopword file: " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        table.set_language(path.stem().string(), crisda::parse_stopword_list(buf.str()));
    }
    return table;
}

std::string safe_filename(const std::string& name) {
    std::string out;
    for (char c : name)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_');
    return out;
}

struct RunArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    bool save_models = false;
    bool dump_features = false;
};

int cmd_run(const RunArgs& args) {
    crisda::RunConfig cfg = crisda::parse_run_config(args.config_path);
    if (args.seed) cfg.master_seed = *args.seed;

    crisda::StopwordTable table = load_stopwords();
    crisda::Manifest manifest = crisda::parse_manifest(cfg.manifest_path);
    for (const auto& warning : crisda::validate_against_manifest(cfg, manifest))
        std::cerr << "warning: " << warning << "\n";

    crisda::CorpusStore store = crisda::CorpusStore::load(manifest);
    store.compute_splits(cfg.test_fraction, cfg.master_seed);

    crisda::MatrixReport report = crisda::run_matrix(cfg, store, table, args.jobs);

    fs::create_directories(args.out_dir);
    const fs::path out(args.out_dir);
    crisda::write_file((out / "report.csv").string(), crisda::report_csv(report.rows));
    crisda::write_file((out / "report.md").string(), crisda::report_markdown(report.rows));
    crisda::write_file((out / "per_class.csv").string(),
                       crisda::per_class_csv(report.per_class));
    crisda::write_file((out / "gate_audit.csv").string(),
                       crisda::gate_audit_csv(report.gate_audit));
    crisda::write_file((out / "splits.json").string(),
                       crisda::splits_json(store, cfg.test_fraction, cfg.master_seed));

    if (args.save_models || args.dump_features) {
        for (const auto& spec : cfg.experiments) {
            crisda::ExperimentOutcome outcome;
            try {
                outcome = crisda::run_experiment(spec, store, cfg, table, true);
            } catch (const std::exception&) {
                continue; // already reported as an error row
            }
            const std::string stem = safe_filename(spec.name);
            if (args.save_models)
                crisda::save_model(*outcome.model, (out / ("model_" + stem + ".json")).string());
            if (args.dump_features) {
                auto vocab = crisda::Vocabulary::from_ngrams(outcome.model->vocabulary);
                crisda::SelectedFeatures selected(outcome.model->selected,
                                                  outcome.model->k_requested);
                std::ofstream fout(out / ("features_" + stem + ".csv"), std::ios::binary);
                crisda::dump_selected_features(vocab, selected, fout);
            }
        }
    }

    std::size_t failed = 0;
    for (const auto& row : report.rows)
        if (!row.error.empty()) ++failed;
    std::cerr << "ran " << report.rows.size() << " experiment(s), " << failed
              << " error row(s); outputs in " << args.out_dir << "\n";
    return kExitOk;
}

int cmd_classify(const std::string& model_path, const std::string& input_path,
                 const std::string& out_path) {
    crisda::LoadedModel model = crisda::load_model(model_path);
    crisda::StopwordTable table = load_stopwords();

    auto records = crisda::csv::parse_file(input_path);
    if (records.empty()) throw crisda::DataError(input_path + ": missing CSV header");
    const auto& header = records.front();
    std::optional<std::size_t> id_col, text_col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "id") id_col = i;
        if (header[i] == "text") text_col = i;
    }
    if (!id_col || !text_col)
        throw crisda::DataError(input_path + ": header must contain id,text columns");

    std::string out = "id,predicted_label,confidence\n";
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        std::size_t needed = std::max(*id_col, *text_col) + 1;
        if (rec.size() < needed)
            throw crisda::DataError(input_path + ": row " + std::to_string(r + 1) +
                                    " has " + std::to_string(rec.size()) +
                                    " fields, expected at least " + std::to_string(needed));
        auto pred = model.classify(rec[*text_col], table);
        out += crisda::csv::join_record(
            {rec[*id_col], pred.label_name, crisda::format_double(pred.confidence)});
    }
    crisda::write_file(out_path, out);
    std::cerr << "classified " << records.size() - 1 << " row(s) into " << out_path << "\n";
    return kExitOk;
}

int cmd_split(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed) {
    crisda::RunConfig cfg = crisda::parse_run_config(config_path);
    if (seed) cfg.master_seed = *seed;
    crisda::Manifest manifest = crisda::parse_manifest(cfg.manifest_path);
    crisda::CorpusStore store = crisda::CorpusStore::load(manifest);
    store.compute_splits(cfg.test_fraction, cfg.master_seed);
    fs::create_directories(out_dir);
    crisda::write_file((fs::path(out_dir) / "splits.json").string(),
                       crisda::splits_json(store, cfg.test_fraction, cfg.master_seed));
    std::cerr << "wrote splits for " << store.datasets().size() << " dataset(s)\n";
    return kExitOk;
}

int cmd_report(const std::string& csv_path, const std::string& out_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw crisda::DataError("cannot open report CSV: " + csv_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto rows = crisda::rows_from_report_csv(buf.str());
    crisda::write_file(out_path, crisda::report_markdown(rows));
    std::cerr << "rendered " << rows.size() << " row(s) into " << out_path << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"crisda: cross-event crisis-message classification harness"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "run the experiment matrix from a config");
    run->add_option("--config", run_args.config_path, "experiment config JSON")->required();
    run->add_option("--out", run_args.out_dir, "output directory")->required();
    std::uint64_t run_seed = 0;
    auto* run_seed_opt = run->add_option("--seed", run_seed, "override master_seed");
    run->add_option("--jobs", run_args.jobs, "parallel experiment workers")
        ->check(CLI::Range(1u, 256u));
    run->add_flag("--save-models", run_args.save_models, "write model_<name>.json per experiment");
    run->add_flag("--dump-features", run_args.dump_features,
                  "write features_<name>.csv per experiment");

    std::string model_path, input_path, classify_out;
    auto* classify = app.add_subcommand("classify", "batch-classify a CSV of messages");
    classify->add_option("--model", model_path, "model JSON from run --save-models")->required();
    classify->add_option("--input", input_path, "input CSV with id,text columns")->required();
    classify->add_option("--out", classify_out, "output CSV path")->required();

    std::string split_config, split_out;
    std::uint64_t split_seed = 0;
    auto* split = app.add_subcommand("split", "compute and persist dataset splits only");
    split->add_option("--config", split_config, "experiment config JSON")->required();
    split->add_option("--out", split_out, "output directory")->required();
    auto* split_seed_opt = split->add_option("--seed", split_seed, "override master_seed");

    std::string report_csv_path, report_out;
    auto* report = app.add_subcommand("report", "re-render report.md from report.csv");
    report->add_option("--csv", report_csv_path, "existing report.csv")->required();
    report->add_option("--out", report_out, "markdown output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            if (run_seed_opt->count() > 0) run_args.seed = run_seed;
            return cmd_run(run_args);
        }
        if (*classify) return cmd_classify(model_path, input_path, classify_out);
        if (*split)
            return cmd_split(split_config, split_out,
                             split_seed_opt->count() > 0
                                 ? std::optional<std::uint64_t>(split_seed)
                                 : std::nullopt);
        if (*report) return cmd_report(report_csv_path, report_out);
    } catch (const crisda::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const crisda::ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitConfig;
}
