// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "crisda/csv.hpp"
#include "crisda/harness.hpp"

namespace crisda {

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
    if (!out) throw DataError("failed writing file: " + path);
}

/// Machine-readable matrix report. Metric columns keep full precision;
/// error rows leave them empty.
inline std::string report_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "experiment,exp_type,train_spec,target_test,precision,recall,f1,auc,"
                      "train_size,test_size,test_set_digest,error\n";
    for (const auto& r : rows) {
        csv::Record rec{r.name, r.exp_type, r.train_spec, r.target_test};
        if (r.error.empty()) {
            rec.push_back(format_double(r.precision));
            rec.push_back(format_double(r.recall));
            rec.push_back(format_double(r.f1));
            rec.push_back(format_double(r.auc));
            rec.push_back(std::to_string(r.train_size));
            rec.push_back(std::to_string(r.test_size));
        } else {
            for (int i = 0; i < 6; ++i) rec.push_back("");
        }
        rec.push_back(r.test_set_digest);
        rec.push_back(r.error);
        out += csv::join_record(rec);
    }
    return out;
}

namespace detail {

inline std::string two_decimals(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace detail

/// One markdown table per target, rows in report order, metrics rounded to
/// two decimals.
inline std::string report_markdown(const std::vector<ExperimentRow>& rows) {
    std::vector<std::string> targets;
    for (const auto& r : rows) {
        bool known = false;
        for (const auto& t : targets) known = known || t == r.target;
        if (!known) targets.push_back(r.target);
    }

    std::string out = "# Experiment matrix\n";
    for (const auto& target : targets) {
        std::string test_desc;
        for (const auto& r : rows)
            if (r.target == target && !r.target_test.empty()) {
                test_desc = r.target_test;
                break;
            }
        out += "\n## Target: " + (test_desc.empty() ? target : test_desc) + "\n\n";
        out += "| Experiment | Type | Train set | Test set | Precision | Recall | "
               "F-measure | AUC |\n";
        out += "|---|---|---|---|---|---|---|---|\n";
        std::vector<const ExperimentRow*> errors;
        for (const auto& r : rows) {
            if (r.target != target) continue;
            if (!r.error.empty()) {
                errors.push_back(&r);
                out += "| " + r.name + " | " + r.exp_type + " | " + r.train_spec + " | " +
                       r.target_test + " | - | - | - | - |\n";
                continue;
            }
            out += "| " + r.name + " | " + r.exp_type + " | " + r.train_spec + " | " +
                   r.target_test + " | " + detail::two_decimals(r.precision) + " | " +
                   detail::two_decimals(r.recall) + " | " + detail::two_decimals(r.f1) +
                   " | " + detail::two_decimals(r.auc) + " |\n";
        }
        for (const auto* r : errors)
            out += "\nError in `" + r->name + "`: " + r->error + "\n";
    }
    return out;
}

inline std::string per_class_csv(const std::vector<PerClassRow>& rows) {
    std::string out = "experiment,class,support,precision,recall,f1,auc,flags\n";
    for (const auto& r : rows) {
        csv::Record rec{r.experiment,
                        r.class_name,
                        std::to_string(r.support),
                        format_double(r.precision),
                        format_double(r.recall),
                        format_double(r.f1),
                        r.auc ? format_double(*r.auc) : "",
                        r.flags};
        out += csv::join_record(rec);
    }
    return out;
}

inline std::string gate_audit_csv(const std::vector<GateAuditRow>& rows) {
    std::string out = "experiment,trial,candidate,auc,delta,decision\n";
    for (const auto& r : rows) {
        csv::Record rec{r.experiment,        std::to_string(r.trial), r.candidate,
                        format_double(r.auc), format_double(r.delta),  r.decision};
        out += csv::join_record(rec);
    }
    return out;
}

/// Persisted split ids: reruns with the same seed must reproduce these
/// exactly.
inline std::string splits_json(const CorpusStore& store, Fraction test_fraction,
                               std::uint64_t master_seed) {
    nlohmann::json j;
    j["master_seed"] = master_seed;
    j["test_fraction"] = test_fraction.to_double();
    nlohmann::json per_dataset = nlohmann::json::object();
    for (const auto& ds : store.datasets()) {
        const DatasetSplit& split = store.split(ds.short_name);
        per_dataset[ds.short_name] = {
            {"train_ids", split.train_ids},
            {"test_ids", split.test_ids},
            {"test_set_digest", test_set_digest(ds.short_name, split)},
        };
    }
    j["datasets"] = per_dataset;
    return j.dump(2) + "\n";
}

/// Reads report.csv back into rows (for re-rendering markdown).
inline std::vector<ExperimentRow> rows_from_report_csv(const std::string& content) {
    auto records = csv::parse(content);
    if (records.empty()) throw DataError("report CSV is empty");
    const auto& header = records.front();
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw DataError("report CSV is missing column '" + name + "'");
    };
    const std::size_t c_name = col("experiment"), c_type = col("exp_type"),
                      c_train = col("train_spec"), c_test = col("target_test"),
                      c_p = col("precision"), c_r = col("recall"), c_f = col("f1"),
                      c_a = col("auc"), c_tr = col("train_size"), c_te = col("test_size"),
                      c_d = col("test_set_digest"), c_e = col("error");

    std::vector<ExperimentRow> rows;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.size() <= c_e)
            throw DataError("report CSV row " + std::to_string(i + 1) + " is truncated");
        ExperimentRow row;
        row.name = rec[c_name];
        row.exp_type = rec[c_type];
        row.train_spec = rec[c_train];
        row.target_test = rec[c_test];
        row.error = rec[c_e];
        row.test_set_digest = rec[c_d];
        // Recover the grouping key from "NAME (30%)".
        auto paren = row.target_test.find(" (");
        row.target = paren == std::string::npos ? row.target_test
                                                : row.target_test.substr(0, paren);
        if (row.error.empty()) {
            row.precision = std::stod(rec[c_p]);
            row.recall = std::stod(rec[c_r]);
            row.f1 = std::stod(rec[c_f]);
            row.auc = std::stod(rec[c_a]);
            row.train_size = std::stoul(rec[c_tr]);
            row.test_size = std::stoul(rec[c_te]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace crisda
