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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "gtgd/approximation.hpp"
#include "gtgd/chase.hpp"
#include "gtgd/classify.hpp"
#include "gtgd/decision.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/linearize.hpp"
#include "gtgd/minor.hpp"
#include "gtgd/omq_eval.hpp"
#include "gtgd/reductions.hpp"
#include "gtgd/rewrite.hpp"
#include "gtgd/text_io.hpp"
#include "gtgd/treewidth.hpp"
#include "gtgd/validate.hpp"
#include "gtgd/witness.hpp"

namespace gtgd::cli {
namespace {

struct Budget {
  std::uint64_t levels = 12;
  std::uint64_t atoms = 100000;
  std::uint64_t fixpoint_cap = 1000000;
  std::size_t dom_cap = 4;
  std::size_t node_cap = 100000;
  std::size_t rewrite_cap = 2000;
  std::size_t search_cap = 5000;
  std::size_t grounding_cap = 100000;
  std::size_t type_cap = 100000;
};

DecisionBudget decision_budget(const Budget& b) {
  DecisionBudget d;
  d.chase_levels = b.levels;
  d.atom_cap = b.atoms;
  d.dom_cap = b.dom_cap;
  d.node_cap = b.node_cap;
  d.rewrite_cap = b.rewrite_cap;
  d.search_cap = b.search_cap;
  d.approx.grounding_cap = b.grounding_cap;
  d.approx.assembly_cap = b.grounding_cap;
  d.fpt.type_cap = b.type_cap;
  d.fpt.atom_cap = b.atoms;
  return d;
}

ApproxOptions approx_options(const Budget& b) {
  ApproxOptions o;
  o.grounding_cap = b.grounding_cap;
  o.assembly_cap = b.grounding_cap;
  return o;
}

FptOptions fpt_options(const Budget& b) {
  FptOptions o;
  o.type_cap = b.type_cap;
  o.atom_cap = b.atoms;
  return o;
}

void add_budget(CLI::App* sub, Budget& b) {
  sub->add_option("--levels", b.levels, "Chase depth")
      ->envname("GTGD_BUDGET_LEVELS")
      ->capture_default_str();
  sub->add_option("--atoms", b.atoms, "Chase atom cap")
      ->envname("GTGD_BUDGET_ATOMS")
      ->capture_default_str();
  sub->add_option("--fixpoint-cap", b.fixpoint_cap, "Chase fixpoint atom cap")
      ->envname("GTGD_BUDGET_FIXPOINT_CAP")
      ->capture_default_str();
  sub->add_option("--dom-cap", b.dom_cap, "Finite-model domain cap")
      ->envname("GTGD_BUDGET_DOM_CAP")
      ->capture_default_str();
  sub->add_option("--node-cap", b.node_cap, "Model-search node cap")
      ->envname("GTGD_BUDGET_NODE_CAP")
      ->capture_default_str();
  sub->add_option("--rewrite-cap", b.rewrite_cap, "UCQ rewriting disjunct cap")
      ->envname("GTGD_BUDGET_REWRITE_CAP")
      ->capture_default_str();
  sub->add_option("--search-cap", b.search_cap, "Counterexample candidate cap")
      ->envname("GTGD_BUDGET_SEARCH_CAP")
      ->capture_default_str();
  sub->add_option("--grounding-cap", b.grounding_cap, "Groundings per specialization")
      ->envname("GTGD_BUDGET_GROUNDING_CAP")
      ->capture_default_str();
  sub->add_option("--type-cap", b.type_cap, "Linearization type cap")
      ->envname("GTGD_BUDGET_TYPE_CAP")
      ->capture_default_str();
}

// Text mode prints `key: value`; machine mode prints `key=value` under
// `[section]` headers.
class Output {
 public:
  Output(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  void section(std::string_view name) {
    if (machine_) out_ << "[" << name << "]\n";
  }
  void field(std::string_view key, std::string_view value) {
    out_ << key << (machine_ ? "=" : ": ") << value << "\n";
  }
  void field(std::string_view key, std::uint64_t value) { field(key, std::to_string(value)); }
  void flag(std::string_view key, bool value) { field(key, value ? "true" : "false"); }
  void block(std::string_view name, const std::string& text) {
    section(name);
    out_ << text;
    if (!text.empty() && text.back() != '\n') out_ << "\n";
  }

 private:
  std::ostream& out_;
  bool machine_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io_error, "cannot write " + path);
  f << text;
  if (!f) throw Error(Errc::io_error, "cannot write " + path);
}

void check(const ViolationReport& r, const std::string& what) {
  if (r.empty()) return;
  throw Error(Errc::precondition_violated, "invalid " + what + ":\n" + to_string(r));
}

TgdSet load_tgds(const std::string& path) {
  TgdSet s = parse_tgds(read_text(path));
  check(validate(s), path);
  return s;
}

Instance load_db(const std::string& path) {
  Instance d = parse_database(read_text(path));
  check(validate(d), path);
  return d;
}

UCQ load_query(const std::string& path) {
  UCQ q = parse_query(read_text(path));
  check(validate(q), path);
  return q;
}

Graph load_graph(const std::string& path) { return parse_graph(read_text(path)); }

CQ single_cq(const UCQ& q, const std::string& path) {
  if (q.size() != 1) {
    throw Error(Errc::precondition_violated, path + " must contain exactly one CQ");
  }
  return q.disjuncts()[0];
}

std::string tuple_text(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i].name();
  }
  return s + ")";
}

int verdict_code(Answer a) {
  switch (a) {
    case Answer::yes: return kYes;
    case Answer::no: return kNo;
    case Answer::unknown: return kUnknown;
  }
  return kUnknown;
}

int data_error_code(Errc c) {
  switch (c) {
    case Errc::saturation_cap_exceeded:
    case Errc::type_space_cap_exceeded:
    case Errc::rewriting_cap_exceeded:
    case Errc::enumeration_cap_exceeded:
    case Errc::budget_exceeded:
    case Errc::size_limit_exceeded:
    case Errc::width_exceeded:
    case Errc::finite_witness_not_found:
      return kUnknown;
    default:
      return kDataError;
  }
}

std::string classification_words(bool linear, bool guarded, bool frontier_guarded,
                                 bool full) {
  std::string s;
  auto add = [&](const char* w) {
    if (!s.empty()) s += " ";
    s += w;
  };
  if (linear) add("linear");
  if (guarded) {
    add("guarded");
  } else if (frontier_guarded) {
    add("frontier-guarded");
  } else {
    add("unguarded");
  }
  if (full) add("full");
  return s;
}

void emit_verdict(Output& o, const Verdict& v) {
  o.section("verdict");
  o.field("answer", to_string(v.answer));
  if (!v.detail.empty()) o.field("detail", v.detail);
  if (v.counterexample) o.field("tuple", tuple_text(v.tuple));
}

// Writes the witness of a verdict to `path`, or prints it when path is empty.
void emit_witness(Output& o, const std::string& path, const std::string& kind,
                  const std::string& text) {
  if (text.empty()) return;
  if (path.empty()) {
    o.block(kind, text);
  } else {
    write_file(path, text);
    o.field(kind + "_file", path);
  }
}

struct Options {
  bool machine = false;
  Budget budget;
  std::string out_path;
  std::string file;
  std::string tgds;
  std::string db;
  std::string dbprime;
  std::string query;
  std::string omq;
  std::string spec;
  std::string left;
  std::string right;
  std::string graph;
  std::string mode;
  std::string minor_map;
  std::string cqs;
  std::string p;
  std::string pprime;
  std::vector<std::string> a;
  std::vector<std::string> x;
  std::vector<std::string> tuple;
  int k = -1;
  std::size_t n = 0;
  bool ground = false;
  bool compact = false;
};

int cmd_validate(Output& o, const Options& opt) {
  Document doc = read_document(opt.file);
  ViolationReport r = std::visit(
      [](const auto& v) -> ViolationReport {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Graph>) {
          return {};
        } else {
          return validate(v);
        }
      },
      doc);
  o.section("validate");
  o.flag("valid", r.empty());
  for (const Violation& v : r) o.field("violation", v.location + ": " + v.message);
  return r.empty() ? kYes : kNo;
}

int cmd_chase(Output& o, const Options& opt, CLI::App* sub) {
  TgdSet sigma = load_tgds(opt.tgds);
  Instance d = load_db(opt.db);
  const Budget& b = opt.budget;
  if (opt.ground) {
    Instance g = ground_chase(d, sigma, b.fixpoint_cap);
    emit_witness(o, opt.out_path, "instance", serialize(g));
    o.section("chase");
    o.field("atoms", g.size());
    o.flag("terminated", true);
    return kYes;
  }
  ChaseBudget cb = ChaseBudget::fixpoint(b.fixpoint_cap);
  if (sub->get_option("--levels")->count() > 0) {
    cb = ChaseBudget::levels(b.levels);
  } else if (sub->get_option("--atoms")->count() > 0) {
    cb = ChaseBudget::atom_cap(b.atoms);
  }
  ChaseResult r = chase(d, sigma, cb);
  emit_witness(o, opt.out_path, "instance", serialize(r.instance, true));
  o.section("chase");
  o.field("atoms", r.instance.size());
  o.field("steps", r.steps);
  o.flag("terminated", r.terminated);
  return r.terminated ? kYes : kUnknown;
}

OMQ omq_from(const Options& opt) {
  if (!opt.omq.empty()) {
    OMQ q = parse_omq(read_text(opt.omq));
    check(validate(q), opt.omq);
    return q;
  }
  OMQ q;
  if (!opt.tgds.empty()) q.sigma = load_tgds(opt.tgds);
  q.query = load_query(opt.query);
  q.data_schema = q.extended_schema();
  return q;
}

int cmd_eval(Output& o, const Options& opt) {
  Instance d = load_db(opt.db);
  std::set<Tuple> answers;
  std::string status = "exact";
  if (opt.mode == "omq") {
    OMQ q = omq_from(opt);
    OmqAnswers a = fpt_answers(q, d, fpt_options(opt.budget));
    answers = std::move(a.answers);
    status = a.status;
  } else {
    if (!opt.tgds.empty() || !opt.omq.empty()) {
      throw Error(Errc::precondition_violated, "dependencies require --mode omq");
    }
    answers = eval(load_query(opt.query), d);
  }
  o.section("eval");
  o.field("status", status);
  if (!opt.tuple.empty()) {
    Tuple t;
    for (const std::string& c : opt.tuple) t.push_back(Term::constant(c));
    bool holds = answers.count(t) > 0;
    o.field("tuple", tuple_text(t));
    o.flag("holds", holds);
    return holds ? kYes : kNo;
  }
  o.field("count", answers.size());
  for (const Tuple& t : answers) o.field("answer", tuple_text(t));
  return answers.empty() ? kNo : kYes;
}

int cmd_classify(Output& o, const Options& opt) {
  TgdSet sigma = load_tgds(opt.tgds);
  o.section("classify");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Classification c = classify(sigma[i]);
    std::string line = classification_words(c.linear, c.guarded, c.frontier_guarded, c.full) +
                       " head-atoms=" + std::to_string(c.head_atoms);
    if (c.guard) line += " guard=" + to_string(*c.guard);
    o.field("tgd" + std::to_string(i + 1), line);
  }
  SetClassification s = classify_set(sigma);
  o.field("set", classification_words(s.linear, s.guarded, s.frontier_guarded, s.full) +
                     " m=" + std::to_string(s.m));
  return kYes;
}

int cmd_linearize(Output& o, const Options& opt) {
  TgdSet sigma = load_tgds(opt.tgds);
  if (!opt.db.empty()) {
    BaseDatabase base = linearize_with_base(load_db(opt.db), sigma, true, opt.budget.type_cap);
    o.section("linearize");
    o.field("types", base.sigma_star.size());
    o.field("rules", base.sigma_star.rule_count());
    o.block("legend", base.sigma_star.legend());
    o.block("tgds", serialize(base.sigma_star.rules()));
    emit_witness(o, opt.out_path, "instance", serialize(base.instance));
    return kYes;
  }
  Linearization lin = linearize(sigma, opt.budget.type_cap);
  o.section("linearize");
  o.field("types", lin.size());
  o.field("rules", lin.rule_count());
  o.block("legend", lin.legend());
  emit_witness(o, opt.out_path, "tgds", serialize(lin.rules()));
  return kYes;
}

int cmd_rewrite(Output& o, const Options& opt) {
  TgdSet sigma = load_tgds(opt.tgds);
  UCQ q = load_query(opt.query);
  RewriteOptions ro;
  ro.cap = opt.budget.rewrite_cap;
  UCQ r = ucq_rewrite(sigma, q, ro);
  o.section("rewrite");
  o.field("disjuncts", r.size());
  emit_witness(o, opt.out_path, "query", serialize(r));
  return kYes;
}

int cmd_treewidth(Output& o, const Options& opt) {
  Graph g;
  if (!opt.graph.empty()) {
    g = load_graph(opt.graph);
  } else if (!opt.query.empty()) {
    g = gaifman(single_cq(load_query(opt.query), opt.query), true);
  } else if (!opt.db.empty()) {
    g = gaifman(load_db(opt.db));
  } else {
    throw CLI::RequiredError("--graph, --query or --db");
  }
  o.section("treewidth");
  o.field("vertices", static_cast<std::uint64_t>(g.size()));
  if (g.size() > kExactTreewidthLimit) {
    TreewidthBounds b = treewidth_bounds(g);
    o.field("lower", static_cast<std::uint64_t>(b.lower));
    o.field("upper", static_cast<std::uint64_t>(b.upper));
    return kUnknown;
  }
  if (opt.k >= 1) {
    auto td = decide_tw(g, opt.k);
    o.flag("within", td.has_value());
    if (td) o.block("decomposition", to_string(*td, g));
    return td ? kYes : kNo;
  }
  std::vector<int> order = optimal_elimination_order(g);
  o.field("treewidth", static_cast<std::uint64_t>(treewidth(g)));
  o.block("decomposition", to_string(decomposition_from_order(g, order), g));
  return kYes;
}

int cmd_core(Output& o, const Options& opt) {
  UCQ q = load_query(opt.query);
  std::vector<CQ> out;
  if (opt.tgds.empty()) {
    for (const CQ& c : q.disjuncts()) out.push_back(core(c));
  } else {
    TgdSet sigma = load_tgds(opt.tgds);
    DecisionBudget b = decision_budget(opt.budget);
    for (const CQ& c : q.disjuncts()) out.push_back(sigma_minimal_cq(c, sigma, b));
  }
  o.section("core");
  o.field("mode", opt.tgds.empty() ? "plain" : "sigma-minimal");
  emit_witness(o, opt.out_path, "query", serialize(UCQ(out)));
  return kYes;
}

int cmd_approx(Output& o, const Options& opt) {
  Document doc = read_document(opt.spec);
  ApproxOptions ao = approx_options(opt.budget);
  o.section("approx");
  if (const OMQ* q = std::get_if<OMQ>(&doc)) {
    check(validate(*q), opt.spec);
    OMQ a = opt.compact ? compact_approx(*q, opt.k, ao) : ucq_k_approx(*q, opt.k, ao);
    o.field("disjuncts", a.query.size());
    emit_witness(o, opt.out_path, "omq", serialize(a));
    return kYes;
  }
  if (const CQS* s = std::get_if<CQS>(&doc)) {
    check(validate(*s), opt.spec);
    if (opt.compact) {
      throw Error(Errc::precondition_violated, "--compact applies to OMQs only");
    }
    CQS a = cqs_k_approx(*s, opt.k, ao);
    o.field("disjuncts", a.query.size());
    emit_witness(o, opt.out_path, "cqs", serialize(a));
    return kYes;
  }
  throw Error(Errc::precondition_violated, "--spec must be an .omq or .cqs document");
}

int cmd_equivk(Output& o, const Options& opt) {
  Document doc = read_document(opt.spec);
  DecisionBudget b = decision_budget(opt.budget);
  Verdict v;
  std::string witness;
  std::string kind;
  if (const OMQ* q = std::get_if<OMQ>(&doc)) {
    check(validate(*q), opt.spec);
    v = omq_equiv_k(*q, opt.k, b);
    if (v.witness_omq) {
      witness = serialize(*v.witness_omq);
      kind = "omq";
    }
  } else if (const CQS* s = std::get_if<CQS>(&doc)) {
    check(validate(*s), opt.spec);
    v = cqs_equiv_k(*s, opt.k, b);
    if (v.witness_ucq) {
      witness = serialize(CQS{s->sigma, *v.witness_ucq});
      kind = "cqs";
    }
  } else {
    throw Error(Errc::precondition_violated, "--spec must be an .omq or .cqs document");
  }
  emit_verdict(o, v);
  if (v.answer == Answer::yes) emit_witness(o, opt.out_path, kind, witness);
  if (v.answer == Answer::no && v.counterexample) {
    emit_witness(o, opt.out_path, "counterexample", serialize(*v.counterexample));
  }
  return verdict_code(v.answer);
}

int cmd_contains(Output& o, const Options& opt) {
  DecisionBudget b = decision_budget(opt.budget);
  Verdict v;
  if (opt.mode == "cqs") {
    CQS l = parse_cqs(read_text(opt.left));
    CQS r = parse_cqs(read_text(opt.right));
    check(validate(l), opt.left);
    check(validate(r), opt.right);
    v = cqs_contains(l, r, b);
  } else {
    OMQ l = parse_omq(read_text(opt.left));
    OMQ r = parse_omq(read_text(opt.right));
    check(validate(l), opt.left);
    check(validate(r), opt.right);
    v = omq_contains(l, r, b);
  }
  emit_verdict(o, v);
  if (v.answer == Answer::no && v.counterexample) {
    emit_witness(o, opt.out_path, "counterexample", serialize(*v.counterexample));
  }
  return verdict_code(v.answer);
}

// Parses lines `(r,c) -> v1 v2 ...` with 0-based grid coordinates.
MinorMap read_minor_map(const std::string& path, const Graph& ga, int rows, int cols) {
  MinorMap m;
  m.rows = rows;
  m.cols = cols;
  m.onto = true;
  m.images.assign(static_cast<std::size_t>(rows * cols), {});
  std::istringstream in(read_text(path));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    int r = 0;
    int c = 0;
    char tail[3] = {0, 0, 0};
    int consumed = 0;
    if (std::sscanf(line.c_str(), " (%d,%d) %2s%n", &r, &c, tail, &consumed) != 3 ||
        std::string(tail) != "->" || r < 0 || r >= rows || c < 0 || c >= cols) {
      throw SyntaxError(number, 1, "expected `(row,col) -> v1 v2 ...` within the grid");
    }
    std::istringstream vs(line.substr(static_cast<std::size_t>(consumed)));
    std::string v;
    while (vs >> v) {
      auto id = ga.find(v);
      if (!id) throw Error(Errc::invalid_minor_map, "element " + v + " is not in A");
      m.images[static_cast<std::size_t>(r * cols + c)].push_back(*id);
    }
  }
  return m;
}

void emit_report(Output& o, const ReductionReport& r) {
  o.section("report");
  o.flag("h0_homomorphism", r.h0_homomorphism);
  o.flag("h0_surjective", r.h0_surjective);
  o.flag("has_k_clique", r.has_k_clique);
  o.flag("has_projection_hom", r.has_projection_hom);
  o.flag("biconditional", r.biconditional);
  if (r.dprime_satisfies) o.flag("dprime_satisfies", *r.dprime_satisfies);
  if (r.clique_extension) o.flag("clique_extension", *r.clique_extension);
  if (r.dstar_satisfies) o.flag("dstar_satisfies", *r.dstar_satisfies);
  for (const std::string& f : r.failures) o.field("failure", f);
}

int cmd_grohe_db(Output& o, const Options& opt) {
  Graph g = load_graph(opt.graph);
  Instance d = load_db(opt.db);
  Instance dprime = opt.dbprime.empty() ? d : load_db(opt.dbprime);
  std::vector<Term> a;
  for (const std::string& s : opt.a) a.push_back(Term::constant(s));
  if (a.empty()) a = d.adom();
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  Graph ga = restricted_gaifman(d, a);
  int big_k = opt.k * (opt.k - 1) / 2;
  MinorMap mu;
  if (!opt.minor_map.empty()) {
    mu = read_minor_map(opt.minor_map, ga, opt.k, big_k);
  } else {
    auto found = grid_minor(ga, opt.k, big_k, true);
    if (!found) throw Error(Errc::no_grid_minor_found, "no onto grid minor on A");
    mu = *found;
  }
  GroheDb gdb = grohe_db(g, opt.k, d, dprime, a, mu);
  emit_witness(o, opt.out_path, "instance", serialize(gdb.dstar));
  o.section("grohe-db");
  o.field("atoms", gdb.dstar.size());
  return kYes;
}

int cmd_reduce_clique(Output& o, const Options& opt) {
  Graph g = load_graph(opt.graph);
  CliqueReduction red;
  UCQ q;
  if (!opt.query.empty()) {
    q = load_query(opt.query);
    red = clique_reduction_constraint_free(g, opt.k, single_cq(q, opt.query));
  } else {
    if (opt.cqs.empty() || opt.p.empty() || opt.pprime.empty()) {
      throw CLI::RequiredError("--query or --cqs with --p and --pprime");
    }
    CQS s = parse_cqs(read_text(opt.cqs));
    check(validate(s), opt.cqs);
    CQ p = single_cq(load_query(opt.p), opt.p);
    CQ pp = single_cq(load_query(opt.pprime), opt.pprime);
    std::vector<Term> x;
    for (const std::string& v : opt.x) x.push_back(Term::variable(v));
    if (x.empty()) x = p.variables();
    red = clique_reduction_cqs(g, opt.k, s, p, pp, x);
    q = s.query;
  }
  bool holds = !eval(q, red.dstar).empty();
  emit_witness(o, opt.out_path, "instance", serialize(red.dstar));
  o.section("reduce-clique");
  o.field("atoms", red.dstar.size());
  o.flag("dstar_models_query", holds);
  emit_report(o, red.report);
  return holds ? kYes : kNo;
}

int cmd_witness(Output& o, const Options& opt) {
  Instance d = load_db(opt.db);
  TgdSet sigma = load_tgds(opt.tgds);
  const Budget& b = opt.budget;
  std::optional<Instance> model;
  if (!opt.query.empty()) {
    UCQ q = load_query(opt.query);
    SatisfyingDbOptions so;
    so.dom_cap = b.dom_cap;
    so.node_cap = b.node_cap;
    model = satisfying_db_from_omq(d, sigma, q, opt.n, so);
  } else {
    model = finite_witness_search(d, sigma, opt.n, b.dom_cap, b.node_cap, b.levels);
  }
  o.section("witness");
  o.flag("found", model.has_value());
  if (!model) return kUnknown;
  o.field("atoms", model->size());
  emit_witness(o, opt.out_path, "instance", serialize(*model));
  return kYes;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Query evaluation and analysis under tuple-generating dependencies", "gtgd"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--machine", opt.machine, "Emit key=value records under [section] headers");

  auto* validate_cmd = app.add_subcommand("validate", "Check a document's invariants");
  validate_cmd->add_option("file", opt.file, "Document (.tgd .db .cq .omq .cqs .edges)")
      ->required();

  auto* chase_cmd = app.add_subcommand("chase", "Run the chase");
  chase_cmd->add_option("--tgds", opt.tgds)->required();
  chase_cmd->add_option("--db", opt.db)->required();
  chase_cmd->add_flag("--ground", opt.ground, "Ground atoms of the full chase");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a query");
  eval_cmd->add_option("--db", opt.db)->required();
  eval_cmd->add_option("--query", opt.query);
  eval_cmd->add_option("--tgds", opt.tgds);
  eval_cmd->add_option("--omq", opt.omq);
  eval_cmd->add_option("--mode", opt.mode)
      ->check(CLI::IsMember({"cq", "omq"}))
      ->default_val("cq");
  eval_cmd->add_option("--tuple", opt.tuple, "Candidate answer, comma separated")
      ->delimiter(',');

  auto* classify_cmd = app.add_subcommand("classify", "Classify dependencies");
  classify_cmd->add_option("--tgds", opt.tgds)->required();

  auto* linearize_cmd = app.add_subcommand("linearize", "Compile guarded into linear TGDs");
  linearize_cmd->add_option("--tgds", opt.tgds)->required();
  linearize_cmd->add_option("--db", opt.db, "Also emit the base database");

  auto* rewrite_cmd = app.add_subcommand("rewrite", "UCQ rewriting under linear TGDs");
  rewrite_cmd->add_option("--tgds", opt.tgds)->required();
  rewrite_cmd->add_option("--query", opt.query)->required();

  auto* tw_cmd = app.add_subcommand("treewidth", "Exact treewidth and decomposition");
  tw_cmd->add_option("--graph", opt.graph);
  tw_cmd->add_option("--query", opt.query, "Treewidth modulo answer variables");
  tw_cmd->add_option("--db", opt.db);
  tw_cmd->add_option("-k", opt.k, "Decide treewidth at most k");

  auto* core_cmd = app.add_subcommand("core", "Core, or Sigma-minimal CQ with --tgds");
  core_cmd->add_option("--query", opt.query)->required();
  core_cmd->add_option("--tgds", opt.tgds);

  auto* approx_cmd = app.add_subcommand("approx", "UCQ_k approximation");
  approx_cmd->add_option("--spec", opt.spec)->required();
  approx_cmd->add_option("-k", opt.k)->required();
  approx_cmd->add_flag("--compact", opt.compact, "Compact single-CQ approximation");

  auto* equivk_cmd = app.add_subcommand("equivk", "Decide equivalence to a UCQ_k query");
  equivk_cmd->add_option("--spec", opt.spec)->required();
  equivk_cmd->add_option("-k", opt.k)->required();

  auto* contains_cmd = app.add_subcommand("contains", "Decide containment");
  contains_cmd->add_option("--left", opt.left)->required();
  contains_cmd->add_option("--right", opt.right)->required();
  contains_cmd->add_option("--mode", opt.mode)
      ->check(CLI::IsMember({"cqs", "omq"}))
      ->required();

  auto* grohe_cmd = app.add_subcommand("grohe-db", "Build the clique-reduction database");
  grohe_cmd->add_option("--graph", opt.graph)->required();
  grohe_cmd->add_option("-k", opt.k)->required()->check(CLI::Range(2, 8));
  grohe_cmd->add_option("--db", opt.db)->required();
  grohe_cmd->add_option("--dbprime", opt.dbprime);
  grohe_cmd->add_option("--A", opt.a, "Elements of A, comma separated")->delimiter(',');
  grohe_cmd->add_option("--minor-map", opt.minor_map);

  auto* reduce_cmd = app.add_subcommand("reduce-clique", "Reduce k-clique to evaluation");
  reduce_cmd->add_option("--graph", opt.graph)->required();
  reduce_cmd->add_option("-k", opt.k)->required()->check(CLI::Range(2, 8));
  auto* rq = reduce_cmd->add_option("--query", opt.query);
  auto* rc = reduce_cmd->add_option("--cqs", opt.cqs);
  rq->excludes(rc);
  reduce_cmd->add_option("--p", opt.p);
  reduce_cmd->add_option("--pprime", opt.pprime);
  reduce_cmd->add_option("--X", opt.x, "Variables of X, comma separated")->delimiter(',');

  auto* witness_cmd = app.add_subcommand("witness", "Finite witness of the chase");
  witness_cmd->add_option("--db", opt.db)->required();
  witness_cmd->add_option("--tgds", opt.tgds)->required();
  witness_cmd->add_option("-n", opt.n)->required();
  witness_cmd->add_option("--query", opt.query, "Build a satisfying database for this UCQ");

  for (CLI::App* sub : {chase_cmd, eval_cmd, linearize_cmd, rewrite_cmd, core_cmd, approx_cmd,
                        equivk_cmd, contains_cmd, witness_cmd}) {
    add_budget(sub, opt.budget);
  }
  for (CLI::App* sub : {chase_cmd, linearize_cmd, rewrite_cmd, tw_cmd, core_cmd, approx_cmd,
                        equivk_cmd, contains_cmd, grohe_cmd, reduce_cmd, witness_cmd}) {
    sub->add_option("-o", opt.out_path, "Write the result or witness to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kYes;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "error=usage\nmessage=" << e.what() << "\n";
    return kUsage;
  }

  Output o(out, opt.machine);
  try {
    if (eval_cmd->parsed() && opt.query.empty() && opt.omq.empty()) {
      throw CLI::RequiredError("--query or --omq");
    }
    if (*validate_cmd) return cmd_validate(o, opt);
    if (*chase_cmd) return cmd_chase(o, opt, chase_cmd);
    if (*eval_cmd) return cmd_eval(o, opt);
    if (*classify_cmd) return cmd_classify(o, opt);
    if (*linearize_cmd) return cmd_linearize(o, opt);
    if (*rewrite_cmd) return cmd_rewrite(o, opt);
    if (*tw_cmd) return cmd_treewidth(o, opt);
    if (*core_cmd) return cmd_core(o, opt);
    if (*approx_cmd) return cmd_approx(o, opt);
    if (*equivk_cmd) return cmd_equivk(o, opt);
    if (*contains_cmd) return cmd_contains(o, opt);
    if (*grohe_cmd) return cmd_grohe_db(o, opt);
    if (*reduce_cmd) return cmd_reduce_clique(o, opt);
    if (*witness_cmd) return cmd_witness(o, opt);
  } catch (const CLI::ParseError& e) {
    err << "error=usage\nmessage=" << e.what() << "\n";
    return kUsage;
  } catch (const SyntaxError& e) {
    err << "error=" << errc_name(e.code()) << "\nline=" << e.line()
        << "\ncolumn=" << e.column() << "\nmessage=" << e.what() << "\n";
    return kDataError;
  } catch (const Error& e) {
    err << "error=" << errc_name(e.code()) << "\nmessage=" << e.what() << "\n";
    int code = data_error_code(e.code());
    if (code == kUnknown) out << (opt.machine ? "answer=" : "answer: ") << "unknown-at-budget\n";
    return code;
  }
  return kUsage;
}

}  // namespace gtgd::cli
