// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "crisda/corpus.hpp"
#include "crisda/rng.hpp"
#include "crisda/text.hpp"

namespace testutil {

namespace fs = std::filesystem;

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& label) {
        static std::atomic<unsigned> counter{0};
        path_ = fs::temp_directory_path() /
                ("crisda_" + label + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }
    std::string str(const std::string& child = "") const {
        return child.empty() ? path_.string() : (path_ / child).string();
    }

private:
    fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

/// Runs a shell command, capturing exit code, stdout, and stderr.
inline CommandResult run_command(const std::string& command) {
    TempDir capture("cmd");
    std::string full = command + " >" + capture.str("out") + " 2>" + capture.str("err");
    int status = std::system(full.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = read_file(capture.str("out"));
    result.err = read_file(capture.str("err"));
    return result;
}

// ---------------------------------------------------------------------------
// Synthetic corpora. Each "event" draws most tokens from class-conditional
// signal vocabularies shared across events, plus event-specific noise.
// ---------------------------------------------------------------------------

struct EventParams {
    std::string name;
    std::string event_type = "earthquake";
    crisda::Date date{2013, 1, 1};
    std::size_t n_docs = 500;
    std::uint32_t n_classes = 4;
    double noise_prob = 0.3;           // fraction of tokens that are event noise
    std::size_t signal_tokens_per_class = 40;
    std::size_t active_signal_per_class = 0; // 0 = all; else per-event subset
    std::size_t noise_vocab = 200;
    std::size_t doc_len_min = 8, doc_len_max = 16;
    std::uint64_t seed = 1;
    /// Index into the shared signal namespace; events with the same
    /// signal_space share class vocabularies.
    std::string signal_space = "common";
    bool random_labels = false; // pure-noise source: labels carry no signal
};

inline crisda::Dataset make_event(const EventParams& p) {
    crisda::SplitMix64 rng(crisda::mix_seed(p.seed, crisda::fnv1a(p.name)));
    crisda::Dataset ds;
    ds.short_name = p.name;
    ds.event_type = p.event_type;
    ds.date = p.date;

    // Per-event active subset of each class's shared signal vocabulary.
    std::vector<std::vector<std::string>> signal(p.n_classes);
    for (std::uint32_t c = 0; c < p.n_classes; ++c) {
        std::vector<std::uint32_t> ids(p.signal_tokens_per_class);
        std::iota(ids.begin(), ids.end(), 0u);
        if (p.active_signal_per_class > 0 && p.active_signal_per_class < ids.size()) {
            crisda::shuffle(ids, rng);
            ids.resize(p.active_signal_per_class);
        }
        for (std::uint32_t id : ids)
            signal[c].push_back("sig" + p.signal_space + "c" + std::to_string(c) + "t" +
                                std::to_string(id));
    }

    for (std::size_t d = 0; d < p.n_docs; ++d) {
        crisda::Message m;
        m.id = p.name + "-" + std::to_string(d);
        std::uint32_t cls = static_cast<std::uint32_t>(rng.bounded(p.n_classes));
        std::uint32_t content_cls =
            p.random_labels ? static_cast<std::uint32_t>(rng.bounded(p.n_classes)) : cls;
        m.label = cls;
        std::size_t len =
            p.doc_len_min + static_cast<std::size_t>(rng.bounded(p.doc_len_max - p.doc_len_min + 1));
        std::string text;
        for (std::size_t t = 0; t < len; ++t) {
            if (!text.empty()) text += ' ';
            if (rng.uniform() < p.noise_prob || p.random_labels) {
                text += "nz" + p.name + "w" + std::to_string(rng.bounded(p.noise_vocab));
            } else {
                const auto& pool = signal[content_cls];
                text += pool[rng.bounded(pool.size())];
            }
        }
        m.text = text;
        ds.messages.push_back(std::move(m));
    }
    return ds;
}

/// Writes a dataset as a loadable CSV file.
inline void write_dataset_csv(const crisda::Dataset& ds, const crisda::Taxonomy& taxonomy,
                              const fs::path& path) {
    std::ostringstream out;
    out << "id,text,label,lang\n";
    for (const auto& m : ds.messages) {
        out << m.id << "," << m.text << "," << taxonomy.name(m.label) << ","
            << (m.lang ? *m.lang : "") << "\n";
    }
    write_file(path, out.str());
}

/// Taxonomy "c0".."c<n-1>" used by synthetic corpora.
inline crisda::Taxonomy synthetic_taxonomy(std::uint32_t n_classes) {
    std::vector<std::string> names;
    for (std::uint32_t c = 0; c < n_classes; ++c) names.push_back("c" + std::to_string(c));
    return crisda::Taxonomy(names);
}

} // namespace testutil
