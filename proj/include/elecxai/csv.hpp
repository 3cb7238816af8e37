/*
 * Copyright 2026 The elecxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal CSV reading and writing for the pipeline's unquoted tables.

#ifndef ELECXAI_CSV_HPP_
#define ELECXAI_CSV_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace elecxai::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header; throws DataError when absent.
  std::size_t Column(std::string_view name) const;
};

std::vector<std::string> SplitLine(std::string_view line);

// Parses a header line plus rows. Blank lines are skipped; every row must
// have as many fields as the header.
Table Parse(std::string_view text, std::string_view source = "<memory>");
Table Read(const std::filesystem::path& path);

double ToDouble(std::string_view field, std::string_view context);
long long ToInt(std::string_view field, std::string_view context);

std::string JoinRow(const std::vector<std::string>& fields);

// Reads a whole file; throws DataError naming the path on failure.
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace elecxai::csv

#endif  // ELECXAI_CSV_HPP_
