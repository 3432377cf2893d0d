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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qrc {

/// Header plus string cells. RFC 4180 quoting on output; UTF-8 passthrough.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column, or -1.
    int column(std::string_view name) const;
    /// Throws SchemaMismatch if the column is absent.
    size_t require_column(std::string_view name) const;
};

CsvTable read_csv(std::istream &in);
CsvTable read_csv_file(const std::string &path);
void write_csv(std::ostream &out, const CsvTable &table);
void write_csv_file(const std::string &path, const CsvTable &table);

/// Shortest round-trip decimal form, '.' separator, "nan"/"inf" for non-finite.
std::string format_double(double v);
/// Parses a cell; empty or unparsable cells give NaN.
double parse_double(std::string_view s);

}  // namespace qrc
