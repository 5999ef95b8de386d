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

#include "gtgd/text_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gtgd/error.hpp"

namespace gtgd {
namespace {

enum class Tok { ident, number, lparen, rparen, comma, dot, arrow, turnstile,
                 slash, colon, end };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

std::vector<Token> tokenize(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::ident, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::number, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", col});
      i += 2;
    } else if (c == ':' && i + 1 < line.size() && line[i + 1] == '-') {
      out.push_back({Tok::turnstile, ":-", col});
      i += 2;
    } else {
      Tok kind;
      switch (c) {
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case ',': kind = Tok::comma; break;
        case '.': kind = Tok::dot; break;
        case '/': kind = Tok::slash; break;
        case ':': kind = Tok::colon; break;
        default:
          throw SyntaxError(lineno, col,
                            std::string("unexpected character '") + c + "'");
      }
      out.push_back({kind, std::string(1, c), col});
      ++i;
    }
  }
  out.push_back({Tok::end, "", static_cast<int>(line.size()) + 1});
  return out;
}

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::dot: return "'.'";
    case Tok::arrow: return "'->'";
    case Tok::turnstile: return "':-'";
    case Tok::slash: return "'/'";
    case Tok::colon: return "':'";
    case Tok::end: return "end of line";
  }
  return "token";
}

struct Line {
  int number;
  std::string text;
};

// Splits into non-blank lines with comments removed.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    bool blank = true;
    for (char c : raw) {
      if (c != ' ' && c != '\t' && c != '\r') blank = false;
    }
    if (!blank) out.push_back({number, std::string(raw)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

class Parser {
 public:
  Parser(const Line& line, Schema& used, const Schema& declared)
      : line_(line.number),
        tokens_(tokenize(line.text, line.number)),
        used_(used),
        declared_(declared) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k) {
    if (!at(k)) {
      fail(std::string("expected ") + std::string(describe(k)) + ", found " +
           std::string(describe(peek().kind)));
    }
    return tokens_[pos_++];
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(line_, peek().column, message);
  }
  void finish() { expect(Tok::end); }
  int line() const { return line_; }

  Atom atom(TermKind kind) {
    Token name = expect(Tok::ident);
    Atom a;
    a.pred = Symbol(name.text);
    expect(Tok::lparen);
    if (!accept(Tok::rparen)) {
      do {
        Token t = expect(Tok::ident);
        a.args.emplace_back(kind, Symbol(t.text));
      } while (accept(Tok::comma));
      expect(Tok::rparen);
    }
    record(a.pred, static_cast<int>(a.arity()), name.column);
    return a;
  }

  std::vector<Atom> atoms(TermKind kind) {
    std::vector<Atom> out;
    do {
      out.push_back(atom(kind));
    } while (accept(Tok::comma));
    return out;
  }

  void record(Symbol pred, int arity, int column) {
    if (auto d = declared_.arity(pred); d && *d != arity) {
      throw Error(Errc::arity_conflict,
                  "line " + std::to_string(line_) + ", column " +
                      std::to_string(column) + ": predicate " +
                      std::string(pred.str()) + " declared with arity " +
                      std::to_string(*d) + " but used with arity " +
                      std::to_string(arity));
    }
    if (auto u = used_.arity(pred); u && *u != arity) {
      throw Error(Errc::arity_conflict,
                  "line " + std::to_string(line_) + ", column " +
                      std::to_string(column) + ": predicate " +
                      std::string(pred.str()) + " used with arity " +
                      std::to_string(*u) + " and " + std::to_string(arity));
    }
    used_.add(pred, arity);
  }

  // `R/2, S/1`, possibly empty.
  Schema schema_list() {
    Schema s;
    if (at(Tok::end)) return s;
    do {
      Token name = expect(Tok::ident);
      expect(Tok::slash);
      Token n = expect(Tok::number);
      int arity = std::stoi(n.text);
      Symbol pred(name.text);
      if (auto prior = s.arity(pred); prior && *prior != arity) {
        throw Error(Errc::arity_conflict,
                    "line " + std::to_string(line_) + ": predicate " +
                        name.text + " declared twice with different arities");
      }
      record(pred, arity, name.column);
      s.add(pred, arity);
    } while (accept(Tok::comma));
    return s;
  }

  TGD tgd() {
    std::vector<Atom> body;
    if (at(Tok::ident) && peek().text == "true" &&
        tokens_[pos_ + 1].kind == Tok::arrow) {
      ++pos_;
    } else {
      body = atoms(TermKind::variable);
    }
    expect(Tok::arrow);
    std::vector<Term> existentials;
    bool declared = false;
    if (at(Tok::ident) && peek().text == "exists" &&
        tokens_[pos_ + 1].kind == Tok::ident) {
      ++pos_;
      declared = true;
      do {
        existentials.push_back(Term::variable(expect(Tok::ident).text));
      } while (accept(Tok::comma));
      expect(Tok::dot);
    }
    std::vector<Atom> head = atoms(TermKind::variable);
    accept(Tok::dot);
    finish();
    if (!declared) return TGD(std::move(body), std::move(head), {});
    return TGD(std::move(body), std::move(head), std::move(existentials));
  }

  CQ cq() {
    expect(Tok::ident);
    expect(Tok::lparen);
    std::vector<Term> answer;
    if (!accept(Tok::rparen)) {
      do {
        answer.push_back(Term::variable(expect(Tok::ident).text));
      } while (accept(Tok::comma));
      expect(Tok::rparen);
    }
    expect(Tok::turnstile);
    std::vector<Atom> body = atoms(TermKind::variable);
    accept(Tok::dot);
    finish();
    return CQ(std::move(answer), std::move(body));
  }

  std::vector<Atom> facts() {
    std::vector<Atom> out = atoms(TermKind::constant);
    accept(Tok::dot);
    finish();
    return out;
  }

 private:
  int line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Schema& used_;
  const Schema& declared_;
};

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

enum class Section { none, schema, data_schema, tgds, query };

struct SectionHeader {
  Section section;
  std::string rest;
  int rest_column;
};

// Recognises `@name` or `@name:` at the start of a line.
std::optional<SectionHeader> section_header(const Line& line) {
  std::string_view text = trim_left(line.text);
  if (text.empty() || text.front() != '@') return std::nullopt;
  int offset = static_cast<int>(line.text.size() - text.size());
  std::size_t j = 1;
  while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                             text[j] == '-' || text[j] == '_')) {
    ++j;
  }
  std::string name(text.substr(1, j - 1));
  if (j < text.size() && text[j] == ':') ++j;
  Section s;
  if (name == "schema") {
    s = Section::schema;
  } else if (name == "data-schema") {
    s = Section::data_schema;
  } else if (name == "tgds") {
    s = Section::tgds;
  } else if (name == "query") {
    s = Section::query;
  } else {
    throw Error(Errc::unknown_section, "line " + std::to_string(line.number) +
                                           ": unknown section @" + name);
  }
  return SectionHeader{s, std::string(text.substr(j)), offset + static_cast<int>(j)};
}

struct Sections {
  Schema declared;
  Schema data_schema;
  bool has_data_schema = false;
  std::vector<Line> tgds;
  std::vector<Line> query;
  std::vector<Line> body;
};

// Splits a document into sections. `allowed` lists sections permitted besides
// `@schema`; with none allowed, all plain lines go to `body`.
Sections split(std::string_view text, std::initializer_list<Section> allowed,
               Schema& used) {
  Sections out;
  Section current = Section::none;
  Schema none;
  for (const Line& line : content_lines(text)) {
    auto header = section_header(line);
    if (header) {
      bool ok = header->section == Section::schema;
      for (Section s : allowed) ok = ok || s == header->section;
      if (!ok) {
        throw Error(Errc::unknown_section,
                    "line " + std::to_string(line.number) +
                        ": section not allowed in this document");
      }
      Line rest{line.number, std::string(header->rest_column, ' ') + header->rest};
      if (header->section == Section::schema) {
        Parser p(rest, used, none);
        out.declared.merge(p.schema_list());
        p.finish();
        continue;
      }
      current = header->section;
      if (current == Section::data_schema) {
        out.has_data_schema = true;
        Parser p(rest, used, none);
        out.data_schema.merge(p.schema_list());
        p.finish();
      } else if (!trim_left(header->rest).empty()) {
        (current == Section::tgds ? out.tgds : out.query).push_back(rest);
      }
      continue;
    }
    if (allowed.size() == 0) {
      out.body.push_back(line);
      continue;
    }
    switch (current) {
      case Section::none:
        throw SyntaxError(line.number, 1, "content outside of a section");
      case Section::data_schema: {
        Parser p(line, used, none);
        out.data_schema.merge(p.schema_list());
        p.finish();
        break;
      }
      case Section::tgds:
        out.tgds.push_back(line);
        break;
      case Section::query:
        out.query.push_back(line);
        break;
      case Section::schema:
        break;
    }
  }
  return out;
}

TgdSet tgds_from(const std::vector<Line>& lines, Schema& used,
                 const Schema& declared) {
  TgdSet out;
  for (const Line& line : lines) out.push_back(Parser(line, used, declared).tgd());
  return out;
}

UCQ query_from(const std::vector<Line>& lines, Schema& used,
               const Schema& declared) {
  std::vector<CQ> out;
  for (const Line& line : lines) out.push_back(Parser(line, used, declared).cq());
  return UCQ(std::move(out));
}

void check_declared(const Schema& declared, const Schema& used) {
  for (const auto& [p, a] : used.entries()) {
    if (auto d = declared.arity(p); d && *d != a) {
      throw Error(Errc::arity_conflict, "predicate " + std::string(p.str()) +
                                            " used with conflicting arity");
    }
  }
}

std::string schema_list(const Schema& s) {
  std::string out;
  bool first = true;
  for (const auto& [p, a] : s.entries()) {
    if (!first) out += ", ";
    first = false;
    out += std::string(p.str()) + "/" + std::to_string(a);
  }
  return out;
}

}  // namespace

TgdSet parse_tgds(std::string_view text) {
  Schema used;
  Sections s = split(text, {}, used);
  TgdSet out = tgds_from(s.body, used, s.declared);
  check_declared(s.declared, used);
  return out;
}

Instance parse_database(std::string_view text) {
  Schema used;
  Sections s = split(text, {}, used);
  std::vector<Atom> atoms;
  for (const Line& line : s.body) {
    auto more = Parser(line, used, s.declared).facts();
    atoms.insert(atoms.end(), more.begin(), more.end());
  }
  check_declared(s.declared, used);
  return Instance(std::move(atoms));
}

UCQ parse_query(std::string_view text) {
  Schema used;
  Sections s = split(text, {}, used);
  UCQ out = query_from(s.body, used, s.declared);
  check_declared(s.declared, used);
  return out;
}

OMQ parse_omq(std::string_view text) {
  Schema used;
  Sections s = split(text, {Section::data_schema, Section::tgds, Section::query},
                     used);
  Schema declared = s.declared;
  declared.merge(s.data_schema);
  OMQ q;
  q.data_schema = s.data_schema;
  q.sigma = tgds_from(s.tgds, used, declared);
  q.query = query_from(s.query, used, declared);
  return q;
}

CQS parse_cqs(std::string_view text) {
  Schema used;
  Sections s = split(text, {Section::tgds, Section::query}, used);
  CQS out;
  out.sigma = tgds_from(s.tgds, used, s.declared);
  out.query = query_from(s.query, used, s.declared);
  return out;
}

Graph parse_graph(std::string_view text) {
  Graph g;
  for (const Line& line : content_lines(text)) {
    std::istringstream in(line.text);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    for (const std::string& word : words) {
      for (char c : word) {
        if (!ident_char(c)) {
          throw SyntaxError(line.number, static_cast<int>(line.text.find(word)) + 1,
                            "invalid vertex name " + word);
        }
      }
    }
    if (words.size() == 1) {
      g.vertex(words[0]);
    } else if (words.size() == 2) {
      if (words[0] == words[1]) {
        throw SyntaxError(line.number, 1, "self-loop on " + words[0]);
      }
      g.add_edge(g.vertex(words[0]), g.vertex(words[1]));
    } else {
      throw SyntaxError(line.number, 1, "expected `u v`");
    }
  }
  return g;
}

Document parse(std::string_view text, DocumentKind kind) {
  switch (kind) {
    case DocumentKind::tgds: return parse_tgds(text);
    case DocumentKind::database: return parse_database(text);
    case DocumentKind::query: return parse_query(text);
    case DocumentKind::omq: return parse_omq(text);
    case DocumentKind::cqs: return parse_cqs(text);
    case DocumentKind::graph: return parse_graph(text);
  }
  return Instance();
}

std::string serialize(const TgdSet& sigma) {
  std::string out = "# tgds\n";
  for (const TGD& t : sigma) out += to_string(t) + "\n";
  return out;
}

std::string serialize(const Instance& inst, bool with_levels) {
  std::string out = "# database\n";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    out += to_string(inst[i]);
    if (with_levels && !inst.levels().empty()) {
      out += "  # level=" + std::to_string(inst.level_at(i));
    }
    out += "\n";
  }
  return out;
}

std::string serialize(const UCQ& q) {
  std::string out = "# query\n";
  for (const CQ& d : q.disjuncts()) out += to_string(d) + "\n";
  return out;
}

std::string serialize(const OMQ& q) {
  std::string out = "@data-schema: " + schema_list(q.data_schema) + "\n@tgds:\n";
  for (const TGD& t : q.sigma) out += to_string(t) + "\n";
  out += "@query:\n";
  for (const CQ& d : q.query.disjuncts()) out += to_string(d) + "\n";
  return out;
}

std::string serialize(const CQS& s) {
  std::string out = "@tgds:\n";
  for (const TGD& t : s.sigma) out += to_string(t) + "\n";
  out += "@query:\n";
  for (const CQ& d : s.query.disjuncts()) out += to_string(d) + "\n";
  return out;
}

std::string serialize(const Graph& g) {
  std::string out = "# graph\n";
  for (int v = 0; v < g.size(); ++v) {
    if (g.neighbors(v).empty()) out += g.label(v) + "\n";
  }
  for (auto [u, v] : g.edges()) out += g.label(u) + " " + g.label(v) + "\n";
  return out;
}

std::string serialize(const Document& doc) {
  return std::visit([](const auto& v) { return serialize(v); }, doc);
}

DocumentKind kind_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  if (ext == ".tgd") return DocumentKind::tgds;
  if (ext == ".db") return DocumentKind::database;
  if (ext == ".cq") return DocumentKind::query;
  if (ext == ".omq") return DocumentKind::omq;
  if (ext == ".cqs") return DocumentKind::cqs;
  if (ext == ".edges") return DocumentKind::graph;
  throw Error(Errc::io_error, "unrecognised file extension: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document read_document(const std::filesystem::path& path) {
  return parse(read_text(path), kind_for_path(path));
}

}  // namespace gtgd
