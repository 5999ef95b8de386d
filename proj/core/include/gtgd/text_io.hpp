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

#ifndef GTGD_TEXT_IO_HPP_
#define GTGD_TEXT_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gtgd/graph.hpp"
#include "gtgd/model.hpp"

namespace gtgd {

enum class DocumentKind { tgds, database, query, omq, cqs, graph };

using Document = std::variant<TgdSet, Instance, UCQ, OMQ, CQS, Graph>;

// All parsers throw SyntaxError, or Error with arity_conflict or
// unknown_section.
Document parse(std::string_view text, DocumentKind kind);
TgdSet parse_tgds(std::string_view text);
Instance parse_database(std::string_view text);
UCQ parse_query(std::string_view text);
OMQ parse_omq(std::string_view text);
CQS parse_cqs(std::string_view text);
Graph parse_graph(std::string_view text);

std::string serialize(const Document& doc);
std::string serialize(const TgdSet& sigma);
// Levels, when present, are emitted as trailing comments.
std::string serialize(const Instance& inst, bool with_levels = false);
std::string serialize(const UCQ& q);
std::string serialize(const OMQ& q);
std::string serialize(const CQS& s);
std::string serialize(const Graph& g);

// Maps `.tgd .db .cq .omq .cqs .edges`; throws Error(io_error) otherwise.
DocumentKind kind_for_path(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
Document read_document(const std::filesystem::path& path);

}  // namespace gtgd

#endif  // GTGD_TEXT_IO_HPP_
