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

#include "gtgd/classify.hpp"

#include <algorithm>

namespace gtgd {
namespace {

bool holds_all(const Atom& a, const std::vector<Term>& vars) {
  return std::all_of(vars.begin(), vars.end(), [&](const Term& v) {
    return std::find(a.args.begin(), a.args.end(), v) != a.args.end();
  });
}

}  // namespace

Classification classify(const TGD& t) {
  Classification c;
  c.full = t.is_full();
  c.head_atoms = static_cast<int>(t.head().size());
  c.linear = t.body().size() == 1;
  if (t.body().empty()) {
    c.guarded = true;
    c.frontier_guarded = true;
    return c;
  }
  for (const Atom& a : t.body()) {
    if (!c.guard && holds_all(a, t.body_vars())) c.guard = a;
    if (!c.frontier_guard && holds_all(a, t.frontier())) c.frontier_guard = a;
  }
  c.guarded = c.guard.has_value();
  c.frontier_guarded = c.frontier_guard.has_value();
  return c;
}

std::string SetClassification::label() const {
  if (linear) return "L";
  if (guarded) return "G";
  if (frontier_guarded) return "FG";
  return "TGD";
}

SetClassification classify_set(const TgdSet& sigma) {
  SetClassification s;
  for (const TGD& t : sigma) {
    Classification c = classify(t);
    s.guarded = s.guarded && c.guarded;
    s.frontier_guarded = s.frontier_guarded && c.frontier_guarded;
    s.linear = s.linear && c.linear;
    s.full = s.full && c.full;
    s.m = std::max(s.m, c.head_atoms);
  }
  s.r = schema_of(sigma).max_arity();
  return s;
}

bool is_guarded(const TgdSet& sigma) { return classify_set(sigma).guarded; }
bool is_linear(const TgdSet& sigma) { return classify_set(sigma).linear; }
bool is_full(const TgdSet& sigma) { return classify_set(sigma).full; }
bool is_frontier_guarded(const TgdSet& sigma) {
  return classify_set(sigma).frontier_guarded;
}

namespace {
const char* yn(bool b) { return b ? "yes" : "no"; }
}  // namespace

std::string to_string(const Classification& c) {
  std::string out = "guarded=" + std::string(yn(c.guarded)) +
                    " frontier-guarded=" + yn(c.frontier_guarded) +
                    " linear=" + yn(c.linear) + " full=" + yn(c.full) +
                    " head-atoms=" + std::to_string(c.head_atoms);
  if (c.guard) out += " guard=" + to_string(*c.guard);
  return out;
}

std::string to_string(const SetClassification& c) {
  return "class=" + c.label() + " guarded=" + yn(c.guarded) +
         " frontier-guarded=" + yn(c.frontier_guarded) + " linear=" +
         yn(c.linear) + " full=" + yn(c.full) + " m=" + std::to_string(c.m) +
         " r=" + std::to_string(c.r);
}

}  // namespace gtgd
