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

#ifndef GTGD_ERROR_HPP_
#define GTGD_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtgd {

enum class Errc {
  syntax_error,
  arity_conflict,
  unknown_section,
  arity_mismatch,
  precondition_violated,
  trigger_not_a_homomorphism,
  not_full,
  not_guarded,
  not_linear,
  not_frontier_guarded,
  saturation_cap_exceeded,
  type_space_cap_exceeded,
  rewriting_cap_exceeded,
  enumeration_cap_exceeded,
  budget_exceeded,
  size_limit_exceeded,
  width_exceeded,
  k_below_arity_threshold,
  k_below_threshold,
  differing_sigma,
  schema_mismatch,
  invalid_minor_map,
  a_not_subset,
  no_grid_minor_found,
  lemma_precondition_failed,
  finite_witness_not_found,
  flag_on_instance,
  io_error,
};

// Stable kebab-case tag, used in CLI diagnostics.
std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gtgd

#endif  // GTGD_ERROR_HPP_
