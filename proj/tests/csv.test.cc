// Copyright 2026 The simopo Authors
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

#include "simopo/csv.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

using namespace simopo;

TEST(format_double, shortest_round_trip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(1e-20), "1e-20");
  EXPECT_EQ(format_double(-0.0), "0");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::pow(10.0, u(rng)) * (i % 2 ? -1.0 : 1.0);
    const std::string s = format_double(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, x) << s;
  }
}

TEST(format_double, non_finite) {
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(csv_table, header_rows_and_lf_endings) {
  CsvTable t({"a", "b", "status"});
  t.add_row({0.5, 3LL, std::string("stable")});
  t.add_row({std::monostate{}, -1LL, std::string("unstable")});
  EXPECT_EQ(t.str(), "a,b,status\n0.5,3,stable\n,-1,unstable\n");
  EXPECT_EQ(t.column_index("status"), 2u);
  EXPECT_EQ(t.str().find('\r'), std::string::npos);
}

TEST(csv_table, quotes_text_when_needed) {
  CsvTable t({"text"});
  t.add_row({std::string("a,b")});
  t.add_row({std::string("say \"hi\"")});
  EXPECT_EQ(t.str(), "text\n\"a,b\"\n\"say \"\"hi\"\"\"\n");
}

TEST(csv_table, rejects_ragged_rows) {
  CsvTable t({"a", "b"});
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
  EXPECT_THROW(t.column_index("c"), std::invalid_argument);
}
