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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "twinsieve/errors.hpp"
#include "twinsieve/report.hpp"

namespace rp = twinsieve::report;

TEST(Report, FormatDouble) {
  EXPECT_EQ(rp::format_double(0.5), "0.5");
  EXPECT_EQ(rp::format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(rp::format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(rp::format_double(std::nan("")), "nan");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(rp::format_double(x)), x);
}

TEST(Report, RenderJsonIsStable) {
  const nlohmann::json j = {{"b", 1}, {"a", {1, 2}}};
  const std::string s = rp::render_json(j);
  EXPECT_EQ(s, rp::render_json(nlohmann::json::parse(s)));
  EXPECT_EQ(s.back(), '\n');
  EXPECT_LT(s.find("\"a\""), s.find("\"b\""));
}

TEST(Report, WriteTextFile) {
  const auto dir = std::filesystem::temp_directory_path() / "twinsieve_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.txt";
  rp::write_text_file(path, "hello\n");
  rp::write_text_file(path, "again\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "again\n");
  EXPECT_THROW(rp::write_text_file(dir / "missing" / "x.txt", "x"), twinsieve::ResourceError);
  std::filesystem::remove_all(dir);
}
