// Copyright 2026 The gtgd Authors.
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

#ifndef GTGD_TESTS_UNIT_HELPERS_HPP_
#define GTGD_TESTS_UNIT_HELPERS_HPP_

#include <string>
#include <string_view>

#include "gtgd/error.hpp"
#include "gtgd/model.hpp"
#include "gtgd/text_io.hpp"

namespace gtgd::testing {

inline Instance db(std::string_view text) { return parse_database(text); }
inline TgdSet tgds(std::string_view text) { return parse_tgds(text); }
inline UCQ ucq(std::string_view text) { return parse_query(text); }
inline CQ cq(std::string_view text) { return parse_query(text).disjuncts().at(0); }
inline Term c(std::string_view name) { return Term::constant(name); }
inline Term v(std::string_view name) { return Term::variable(name); }

inline const char* kExampleQuery =
    "q() :- P(x2,x1), P(x4,x1), P(x2,x3), P(x4,x3), R1(x1), R2(x2), R3(x3), R4(x4)";
inline const char* kExampleQueryPrime = "q() :- P(x2,x1), P(x2,x3), R1(x1), R2(x2), R3(x3)";
inline const char* kExampleD1 = "R1(a)\nR2(b)\nR3(c)\nP(b,a)\nP(b,c)\n";

// Boolean rows x cols grid with a distinct unary label per vertex; a core.
inline CQ labelled_grid_cq(int rows, int cols) {
  std::string text = "q() :- ";
  auto var = [](int r, int c) { return "x" + std::to_string(r) + std::to_string(c); };
  bool first = true;
  auto add = [&](const std::string& a) {
    text += (first ? "" : ", ") + a;
    first = false;
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      add("L" + std::to_string(r) + std::to_string(c) + "(" + var(r, c) + ")");
      if (c + 1 < cols) add("E(" + var(r, c) + "," + var(r, c + 1) + ")");
      if (r + 1 < rows) add("E(" + var(r, c) + "," + var(r + 1, c) + ")");
    }
  }
  return cq(text);
}

inline OMQ example_q1() {
  return parse_omq(std::string("@data-schema: R1/1, R2/1, R3/1, R4/1, P/2\n@tgds:\n"
                               "R2(x) -> R4(x)\n@query:\n") +
                   kExampleQuery + "\n");
}

inline OMQ example_q2(bool with_r1) {
  return parse_omq(std::string("@data-schema: S/1, ") + (with_r1 ? "R1/1, " : "") +
                   "R2/1, R3/1, R4/1, P/2\n@tgds:\nS(x) -> R1(x)\nS(x) -> R3(x)\n@query:\n" +
                   kExampleQuery + "\n");
}

}  // namespace gtgd::testing

#define EXPECT_ERRC(stmt, errc)                        \
  do {                                                 \
    try {                                              \
      stmt;                                            \
      ADD_FAILURE() << "no error from " #stmt;         \
    } catch (const ::gtgd::Error& e) {                 \
      EXPECT_EQ(e.code(), errc) << e.what();           \
    }                                                  \
  } while (false)

#endif  // GTGD_TESTS_UNIT_HELPERS_HPP_
