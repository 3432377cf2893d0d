// Copyright 2026 The qrcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qrc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qrc/error.hpp"

namespace qrc {

int CsvTable::column(std::string_view name) const {
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

size_t CsvTable::require_column(std::string_view name) const {
    int c = column(name);
    if (c < 0) {
        throw Error(ErrorCode::SchemaMismatch, "missing column '" + std::string(name) + "'");
    }
    return static_cast<size_t>(c);
}

namespace {

// Splits one record; handles quoted fields spanning newlines.
bool read_record(std::istream &in, std::vector<std::string> &fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char ch;
    while (in.get(ch)) {
        any = true;
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get(ch);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            break;
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (!any) {
        return false;
    }
    fields.push_back(std::move(field));
    return true;
}

void write_field(std::ostream &out, const std::string &f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
        out << f;
        return;
    }
    out << '"';
    for (char c : f) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

}  // namespace

CsvTable read_csv(std::istream &in) {
    CsvTable table;
    if (!read_record(in, table.header)) {
        throw Error(ErrorCode::SchemaMismatch, "empty CSV: header row is mandatory");
    }
    std::vector<std::string> fields;
    size_t line = 1;
    while (read_record(in, fields)) {
        ++line;
        if (fields.size() == 1 && fields[0].empty()) {
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw Error(ErrorCode::SchemaMismatch, "record " + std::to_string(line) + " has " +
                                                       std::to_string(fields.size()) + " fields, header has " +
                                                       std::to_string(table.header.size()));
        }
        table.rows.push_back(fields);
    }
    return table;
}

CsvTable read_csv_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open " + path);
    }
    return read_csv(in);
}

void write_csv(std::ostream &out, const CsvTable &table) {
    auto write_row = [&out](const std::vector<std::string> &row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out << ',';
            }
            write_field(out, row[i]);
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto &r : table.rows) {
        write_row(r);
    }
}

void write_csv_file(const std::string &path, const CsvTable &table) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write " + path);
    }
    write_csv(out, table);
    if (!out) {
        throw Error(ErrorCode::Io, "write failed for " + path);
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    if (s.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (s == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return v;
}

}  // namespace qrc
