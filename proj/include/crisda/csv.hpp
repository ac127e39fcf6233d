// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 crisda contributors

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "crisda/error.hpp"

// RFC 4180 CSV: quoted fields may contain commas, newlines and doubled
// quotes. Reader accepts LF and CRLF line ends and strips a UTF-8 BOM.

namespace crisda::csv {

using Record = std::vector<std::string>;

/// Parses a whole CSV document into records. Empty trailing line is not a
/// record. Throws DataError on an unterminated quoted field.
inline std::vector<Record> parse(std::string_view content) {
    if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

    std::vector<Record> records;
    Record record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    while (i < content.size()) {
        char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field.push_back(c);
                ++i;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            field_started = true;
            ++i;
            break;
        case ',':
            end_field();
            field_started = true; // next field exists even if empty
            ++i;
            break;
        case '\r':
            if (i + 1 < content.size() && content[i + 1] == '\n') ++i;
            [[fallthrough]];
        case '\n':
            if (record.empty() && field.empty() && !field_started) {
                ++i; // blank line, not a record
                break;
            }
            end_record();
            ++i;
            break;
        default:
            field.push_back(c);
            field_started = true;
            ++i;
            break;
        }
    }
    if (in_quotes)
        throw DataError("CSV: unterminated quoted field at record " +
                        std::to_string(records.size() + 1));
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

inline std::vector<Record> parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open CSV file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

/// Quotes a field when it contains a comma, quote, or newline.
inline std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string join_record(const Record& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) line.push_back(',');
        line += escape(fields[i]);
    }
    line.push_back('\n');
    return line;
}

} // namespace crisda::csv
