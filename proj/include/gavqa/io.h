// Copyright 2026 The gavqa Authors
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

#ifndef GAVQA_IO_H_
#define GAVQA_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace gavqa {

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);
// Strict: the whole token must be a finite number.
double parse_double(std::string_view token);

// printf "%.12e".
std::string format_fixed12(double x);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace gavqa

#endif  // GAVQA_IO_H_
