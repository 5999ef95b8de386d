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

#ifndef GTGD_VALIDATE_HPP_
#define GTGD_VALIDATE_HPP_

#include <string>
#include <vector>

#include "gtgd/model.hpp"

namespace gtgd {

struct Violation {
  std::string location;
  std::string message;
};

using ViolationReport = std::vector<Violation>;

// Each overload lists every invariant violation; an empty report means ok.
// A non-empty schema also constrains predicate membership and arity.
ViolationReport validate(const Instance& inst, const Schema& schema = {});
ViolationReport validate(const CQ& q, const Schema& schema = {});
ViolationReport validate(const UCQ& q, const Schema& schema = {});
ViolationReport validate(const TGD& t, const Schema& schema = {});
ViolationReport validate(const TgdSet& sigma, const Schema& schema = {});
ViolationReport validate(const OMQ& q);
ViolationReport validate(const CQS& s);

std::string to_string(const ViolationReport& report);

}  // namespace gtgd

#endif  // GTGD_VALIDATE_HPP_
