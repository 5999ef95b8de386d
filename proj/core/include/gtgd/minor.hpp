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

#ifndef GTGD_MINOR_HPP_
#define GTGD_MINOR_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gtgd/graph.hpp"

namespace gtgd {

// Branch sets of a rows x cols grid, indexed by r * cols + c.
struct MinorMap {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> images;
  bool onto = false;

  const std::vector<int>& at(int r, int c) const { return images[r * cols + c]; }
};

// Nonempty connected disjoint images, a crossing edge per grid edge, and full
// coverage when the map claims to be onto.
bool is_valid_minor_map(const Graph& g, const MinorMap& m,
                        std::string* why = nullptr);

// Searches for the rows x cols grid as a minor. With `onto` and a connected
// graph the images cover every vertex. Requires rows * cols <= 9 and
// components of at most 14 vertices; throws Error(size_limit_exceeded).
std::optional<MinorMap> grid_minor(const Graph& g, int rows, int cols,
                                   bool onto = true);

std::string to_string(const MinorMap& m, const Graph& g);

}  // namespace gtgd

#endif  // GTGD_MINOR_HPP_
