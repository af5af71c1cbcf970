/*
 * Copyright 2026 latentview contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace lv::tsv {

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

double parse_double(std::string_view s, const std::string& file, size_t line);
long long parse_int(std::string_view s, const std::string& file, size_t line);

// Splits on tabs. Empty fields are preserved.
std::vector<std::string_view> split_tabs(std::string_view line);

// Reads a whole TSV file; hands each non-empty line (1-based number, tab
// fields) to the callback. Lines starting with '#' are skipped.
void for_each_row(const std::string& path,
                  const std::function<void(size_t, const std::vector<std::string_view>&)>& fn);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lv::tsv
