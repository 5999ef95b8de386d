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

#include "gtgd/error.hpp"

namespace gtgd {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::syntax_error: return "syntax-error";
    case Errc::arity_conflict: return "arity-conflict";
    case Errc::unknown_section: return "unknown-section";
    case Errc::arity_mismatch: return "arity-mismatch";
    case Errc::precondition_violated: return "precondition-violated";
    case Errc::trigger_not_a_homomorphism: return "trigger-not-a-homomorphism";
    case Errc::not_full: return "not-full";
    case Errc::not_guarded: return "not-guarded";
    case Errc::not_linear: return "not-linear";
    case Errc::not_frontier_guarded: return "not-frontier-guarded";
    case Errc::saturation_cap_exceeded: return "saturation-cap-exceeded";
    case Errc::type_space_cap_exceeded: return "type-space-cap-exceeded";
    case Errc::rewriting_cap_exceeded: return "rewriting-cap-exceeded";
    case Errc::enumeration_cap_exceeded: return "enumeration-cap-exceeded";
    case Errc::budget_exceeded: return "budget-exceeded";
    case Errc::size_limit_exceeded: return "size-limit-exceeded";
    case Errc::width_exceeded: return "width-exceeded";
    case Errc::k_below_arity_threshold: return "k-below-arity-threshold";
    case Errc::k_below_threshold: return "k-below-threshold";
    case Errc::differing_sigma: return "differing-sigma";
    case Errc::schema_mismatch: return "schema-mismatch";
    case Errc::invalid_minor_map: return "invalid-minor-map";
    case Errc::a_not_subset: return "a-not-subset";
    case Errc::no_grid_minor_found: return "no-grid-minor-found";
    case Errc::lemma_precondition_failed: return "lemma-precondition-failed";
    case Errc::finite_witness_not_found: return "finite-witness-not-found-at-cap";
    case Errc::flag_on_instance: return "flag-on-instance";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

SyntaxError::SyntaxError(int line, int column, const std::string& message)
    : Error(Errc::syntax_error, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace gtgd
