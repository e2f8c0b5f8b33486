// Copyright 2026 The twinsieve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Deterministic text output shared by the report writers.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace twinsieve::report {

// "%.17g" rendering; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

// Two-space indented JSON with a trailing newline.
std::string render_json(const nlohmann::json& j);

// Writes via a temporary file and rename so readers never see a partial
// file. Throws ResourceError on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace twinsieve::report
