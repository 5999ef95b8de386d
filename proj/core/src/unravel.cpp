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

#include "gtgd/unravel.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>

#include "gtgd/error.hpp"

namespace gtgd {

bool is_guarded_set(const Instance& d, const std::vector<Term>& set) {
  for (const Atom& a : d) {
    bool all = std::all_of(set.begin(), set.end(), [&](const Term& t) {
      return std::find(a.args.begin(), a.args.end(), t) != a.args.end();
    });
    if (all) return true;
  }
  return false;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

Unraveling guarded_unravel(const Instance& d, const Tuple& root, int depth) {
  std::vector<Term> start(root.begin(), root.end());
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  if (!is_guarded_set(d, start)) {
    throw Error(Errc::not_guarded, "tuple is not guarded in the instance");
  }
  if (depth < 0) throw Error(Errc::precondition_violated, "negative depth");

  std::set<std::vector<Term>> guarded;
  for (const Atom& a : d) {
    std::vector<Term> ts = terms_of(a);
    std::size_t n = ts.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Term> s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(ts[i]);
      }
      guarded.insert(std::move(s));
    }
  }

  std::vector<Atom> atoms;
  Unraveling out;
  // `copy` maps each constant of the current guarded set to its node copy.
  auto emit = [&](const std::vector<Term>& set, const TermMap& copy) {
    std::set<Term> keep(set.begin(), set.end());
    for (const Atom& a : restrict(d, keep)) atoms.push_back(substitute(copy, a));
    for (const auto& [orig, c] : copy) out.up[c] = orig;
  };

  std::function<void(const std::vector<Term>&, const TermMap&, const std::string&,
                     int)>
      grow = [&](const std::vector<Term>& set, const TermMap& copy,
                 const std::string& path, int left) {
        emit(set, copy);
        if (left == 0) return;
        for (const auto& next : guarded) {
          if (next == set) continue;
          std::vector<Term> shared;
          std::set_intersection(set.begin(), set.end(), next.begin(), next.end(),
                                std::back_inserter(shared));
          if (shared.empty()) continue;
          std::string child_path = path + "|";
          for (const Term& t : next) child_path += std::string(t.name()) + ",";
          std::string tag = hex(fnv1a(child_path));
          TermMap child;
          for (const Term& t : next) {
            if (std::binary_search(shared.begin(), shared.end(), t)) {
              child[t] = copy.at(t);
            } else {
              child[t] = Term::constant(std::string(t.name()) + "@" + tag);
            }
          }
          grow(next, child, child_path, left - 1);
        }
      };

  TermMap identity;
  std::string root_path;
  for (const Term& t : start) {
    identity[t] = t;
    root_path += std::string(t.name()) + ",";
  }
  grow(start, identity, root_path, depth);
  out.instance = Instance(std::move(atoms));
  return out;
}

}  // namespace gtgd
