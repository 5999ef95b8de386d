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

#include "gtgd/validate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gtgd {
namespace {

void check_atoms(const std::vector<Atom>& atoms, const Schema& schema,
                 const std::string& where, std::map<Symbol, int>& seen,
                 ViolationReport& out) {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    std::string loc = where + " atom " + std::to_string(i + 1);
    int ar = static_cast<int>(a.arity());
    if (!schema.empty()) {
      auto declared = schema.arity(a.pred);
      if (!declared) {
        out.push_back({loc, "predicate " + std::string(a.pred.str()) +
                                " not in schema"});
      } else if (*declared != ar) {
        out.push_back({loc, "arity mismatch " + std::string(a.pred.str())});
      }
    }
    auto [it, fresh] = seen.emplace(a.pred, ar);
    if (!fresh && it->second != ar) {
      out.push_back({loc, "arity mismatch " + std::string(a.pred.str())});
    }
  }
}

void check_cq(const CQ& q, const Schema& schema, const std::string& where,
              std::map<Symbol, int>& seen, ViolationReport& out) {
  if (q.body().empty()) out.push_back({where, "empty body"});
  check_atoms(q.body(), schema, where, seen, out);
  for (const Atom& a : q.body()) {
    for (const Term& t : a.args) {
      if (t.is_constant()) {
        out.push_back({where, "constant " + std::string(t.name()) +
                                  " in query body"});
      }
    }
  }
  std::set<Term> answers;
  std::vector<Term> vars = q.variables();
  for (const Term& x : q.answer_vars()) {
    if (!x.is_variable()) {
      out.push_back({where, "answer term " + std::string(x.name()) +
                                " is not a variable"});
    }
    if (!answers.insert(x).second) {
      out.push_back({where, "answer variables not distinct: " +
                                std::string(x.name())});
    }
    if (!std::binary_search(vars.begin(), vars.end(), x)) {
      out.push_back({where, "answer variable " + std::string(x.name()) +
                                " does not occur in the body"});
    }
  }
}

void check_tgd(const TGD& t, const Schema& schema, const std::string& where,
               std::map<Symbol, int>& seen, ViolationReport& out) {
  if (t.head().empty()) out.push_back({where, "empty head"});
  check_atoms(t.body(), schema, where + " body", seen, out);
  check_atoms(t.head(), schema, where + " head", seen, out);
  for (const auto* part : {&t.body(), &t.head()}) {
    for (const Atom& a : *part) {
      for (const Term& x : a.args) {
        if (x.is_constant()) {
          out.push_back({where, "constant " + std::string(x.name()) +
                                    " in dependency"});
        }
      }
    }
  }
  const auto& body_vars = t.body_vars();
  const auto& ex = t.existential_vars();
  std::vector<Term> head_vars = t.head_vars();
  for (const Term& v : head_vars) {
    bool in_body = std::binary_search(body_vars.begin(), body_vars.end(), v);
    bool declared = std::binary_search(ex.begin(), ex.end(), v);
    if (!in_body && !declared) {
      out.push_back({where, "head variable " + std::string(v.name()) +
                                " neither frontier nor declared existential"});
    }
  }
  for (const Term& v : ex) {
    if (std::binary_search(body_vars.begin(), body_vars.end(), v)) {
      out.push_back({where, "existential variable " + std::string(v.name()) +
                                " occurs in the body"});
    }
    if (!std::binary_search(head_vars.begin(), head_vars.end(), v)) {
      out.push_back({where, "existential variable " + std::string(v.name()) +
                                " does not occur in the head"});
    }
  }
}

}  // namespace

ViolationReport validate(const Instance& inst, const Schema& schema) {
  ViolationReport out;
  std::map<Symbol, int> seen;
  check_atoms(inst.atoms(), schema, "instance", seen, out);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (const Term& t : inst[i].args) {
      if (t.is_variable()) {
        out.push_back({"instance atom " + std::to_string(i + 1),
                       "variable " + std::string(t.name()) + " in instance"});
      }
    }
    if (inst.level_at(i) < 0) {
      out.push_back({"instance atom " + std::to_string(i + 1), "negative level"});
    }
  }
  return out;
}

ViolationReport validate(const CQ& q, const Schema& schema) {
  ViolationReport out;
  std::map<Symbol, int> seen;
  check_cq(q, schema, "query", seen, out);
  return out;
}

ViolationReport validate(const UCQ& q, const Schema& schema) {
  ViolationReport out;
  if (q.empty()) out.push_back({"query", "no disjuncts"});
  std::map<Symbol, int> seen;
  for (std::size_t i = 0; i < q.size(); ++i) {
    std::string where = "disjunct " + std::to_string(i + 1);
    check_cq(q.disjuncts()[i], schema, where, seen, out);
    if (q.disjuncts()[i].arity() != q.arity()) {
      out.push_back({where, "answer arity differs from the first disjunct"});
    }
  }
  return out;
}

ViolationReport validate(const TGD& t, const Schema& schema) {
  ViolationReport out;
  std::map<Symbol, int> seen;
  check_tgd(t, schema, "dependency 1", seen, out);
  return out;
}

ViolationReport validate(const TgdSet& sigma, const Schema& schema) {
  ViolationReport out;
  std::map<Symbol, int> seen;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    check_tgd(sigma[i], schema, "dependency " + std::to_string(i + 1), seen, out);
  }
  return out;
}

ViolationReport validate(const OMQ& q) {
  ViolationReport out;
  std::map<Symbol, int> seen;
  for (const auto& [p, a] : q.data_schema.entries()) seen.emplace(p, a);
  for (std::size_t i = 0; i < q.sigma.size(); ++i) {
    check_tgd(q.sigma[i], {}, "dependency " + std::to_string(i + 1), seen, out);
  }
  if (q.query.empty()) out.push_back({"query", "no disjuncts"});
  for (std::size_t i = 0; i < q.query.size(); ++i) {
    std::string where = "disjunct " + std::to_string(i + 1);
    check_cq(q.query.disjuncts()[i], {}, where, seen, out);
    if (q.query.disjuncts()[i].arity() != q.query.arity()) {
      out.push_back({where, "answer arity differs from the first disjunct"});
    }
  }
  return out;
}

ViolationReport validate(const CQS& s) {
  ViolationReport out;
  std::map<Symbol, int> seen;
  for (std::size_t i = 0; i < s.sigma.size(); ++i) {
    check_tgd(s.sigma[i], {}, "dependency " + std::to_string(i + 1), seen, out);
  }
  if (s.query.empty()) out.push_back({"query", "no disjuncts"});
  for (std::size_t i = 0; i < s.query.size(); ++i) {
    std::string where = "disjunct " + std::to_string(i + 1);
    check_cq(s.query.disjuncts()[i], {}, where, seen, out);
    if (s.query.disjuncts()[i].arity() != s.query.arity()) {
      out.push_back({where, "answer arity differs from the first disjunct"});
    }
  }
  return out;
}

std::string to_string(const ViolationReport& report) {
  std::string out;
  for (const Violation& v : report) {
    out += v.location + ": " + v.message + "\n";
  }
  return out;
}

}  // namespace gtgd
