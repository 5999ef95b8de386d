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

#ifndef GTGD_CLASSIFY_HPP_
#define GTGD_CLASSIFY_HPP_

#include <optional>
#include <string>

#include "gtgd/model.hpp"

namespace gtgd {

struct Classification {
  bool guarded = false;
  bool frontier_guarded = false;
  bool linear = false;
  bool full = false;
  int head_atoms = 0;
  // First body atom holding every body variable.
  std::optional<Atom> guard;
  // First body atom holding every frontier variable.
  std::optional<Atom> frontier_guard;
};

// Empty bodies count as guarded but not linear.
Classification classify(const TGD& t);

struct SetClassification {
  bool guarded = true;
  bool frontier_guarded = true;
  bool linear = true;
  bool full = true;
  int m = 0;
  int r = 0;

  // Most specific of L, G, FG, TGD.
  std::string label() const;
};

SetClassification classify_set(const TgdSet& sigma);

bool is_guarded(const TgdSet& sigma);
bool is_linear(const TgdSet& sigma);
bool is_full(const TgdSet& sigma);
bool is_frontier_guarded(const TgdSet& sigma);

std::string to_string(const Classification& c);
std::string to_string(const SetClassification& c);

}  // namespace gtgd

#endif  // GTGD_CLASSIFY_HPP_
