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

#include "gtgd/reductions.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "gtgd/classify.hpp"
#include "gtgd/decision.hpp"
#include "gtgd/error.hpp"
#include "gtgd/hom.hpp"
#include "gtgd/treewidth.hpp"
#include "gtgd/witness.hpp"

namespace gtgd {
namespace {

void extend_cliques(const Graph& g, std::vector<int>& cur, int from, std::size_t limit,
                    const std::function<bool(const std::vector<int>&)>& fn, bool& stop) {
  if (stop) return;
  if (!cur.empty() && !fn(cur)) {
    stop = true;
    return;
  }
  if (cur.size() == limit) return;
  for (int v = from; v < g.size() && !stop; ++v) {
    bool ok = std::all_of(cur.begin(), cur.end(), [&](int u) { return g.adjacent(u, v); });
    if (!ok) continue;
    cur.push_back(v);
    extend_cliques(g, cur, v + 1, limit, fn, stop);
    cur.pop_back();
  }
}

// Calls fn on every nonempty clique of at most `limit` vertices, in
// increasing vertex order; fn returns false to stop.
void for_each_clique(const Graph& g, std::size_t limit,
                     const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> cur;
  bool stop = false;
  extend_cliques(g, cur, 0, limit, fn, stop);
}

bool clique_extends(const Graph& g, std::vector<int> clique, std::size_t size) {
  if (clique.size() >= size) return true;
  for (int v = 0; v < g.size(); ++v) {
    if (std::find(clique.begin(), clique.end(), v) != clique.end()) continue;
    bool ok = std::all_of(clique.begin(), clique.end(), [&](int u) { return g.adjacent(u, v); });
    if (!ok) continue;
    clique.push_back(v);
    if (clique_extends(g, clique, size)) return true;
    clique.pop_back();
  }
  return false;
}

Term tuple_constant(const Term& z, int i, int j, int l, int v, int u, int w) {
  if (u > w) std::swap(u, w);
  return Term::constant(std::string(z.name()) + "@" + std::to_string(i) + "@" +
                        std::to_string(j) + "_" + std::to_string(l) + "@" +
                        std::to_string(v) + "@" + std::to_string(u) + "_" + std::to_string(w));
}

Symbol marker(const Term& z) { return Symbol("_mark@" + std::string(z.name())); }

[[noreturn]] void lemma_failed(int item, const std::string& evidence) {
  throw Error(Errc::lemma_precondition_failed,
              "item " + std::to_string(item) + ": " + evidence);
}

}  // namespace

bool is_labelled_clique(const Graph& g, const LabelledClique& c) {
  for (auto a = c.eta.begin(); a != c.eta.end(); ++a) {
    if (a->second < 0 || a->second >= g.size()) return false;
    for (auto b = std::next(a); b != c.eta.end(); ++b) {
      if (!g.adjacent(a->second, b->second)) return false;
    }
  }
  return true;
}

std::vector<LabelledClique> labelled_cliques(const Graph& g, const std::vector<int>& domain) {
  std::vector<LabelledClique> out;
  std::vector<int> image;
  std::function<void()> rec = [&]() {
    if (image.size() == domain.size()) {
      LabelledClique c;
      for (std::size_t i = 0; i < domain.size(); ++i) c.eta[domain[i]] = image[i];
      out.push_back(std::move(c));
      return;
    }
    for (int v = 0; v < g.size(); ++v) {
      bool ok = std::all_of(image.begin(), image.end(), [&](int u) { return g.adjacent(u, v); });
      if (!ok) continue;
      image.push_back(v);
      rec();
      image.pop_back();
    }
  };
  rec();
  return out;
}

bool has_clique(const Graph& g, int size) {
  if (size <= 0) return true;
  bool found = false;
  for_each_clique(g, static_cast<std::size_t>(size), [&](const std::vector<int>& c) {
    found = static_cast<int>(c.size()) == size;
    return !found;
  });
  return found;
}

int chi(int j, int l) {
  if (j > l) std::swap(j, l);
  return (l - 1) * (l - 2) / 2 + j;
}

std::pair<int, int> chi_inverse(int c) {
  int l = 2;
  while (l * (l - 1) / 2 < c) ++l;
  return {c - (l - 1) * (l - 2) / 2, l};
}

Graph restricted_gaifman(const Instance& d, const std::vector<Term>& a) {
  std::vector<Term> adom = d.adom();
  std::vector<Term> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> keep;
  for (const Term& t : sorted) {
    auto it = std::lower_bound(adom.begin(), adom.end(), t);
    if (it == adom.end() || *it != t) {
      throw Error(Errc::a_not_subset, "element " + std::string(t.name()) + " not in adom(D)");
    }
    keep.push_back(static_cast<int>(it - adom.begin()));
  }
  return gaifman(d).induced(keep);
}

GroheDb grohe_db(const Graph& g, int k, const Instance& d, const Instance& dprime,
                 const std::vector<Term>& a, const MinorMap& mu) {
  if (k < 2) throw Error(Errc::precondition_violated, "k must be at least 2");
  if (!d.subset_of(dprime)) {
    throw Error(Errc::precondition_violated, "D is not contained in D'");
  }
  std::vector<Term> as = a;
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  Graph ga = restricted_gaifman(d, as);
  int big_k = k * (k - 1) / 2;
  std::string why;
  if (mu.rows != k || mu.cols != big_k) {
    throw Error(Errc::invalid_minor_map, "minor map is not over the k x K grid");
  }
  if (!mu.onto || !is_valid_minor_map(ga, mu, &why)) {
    throw Error(Errc::invalid_minor_map, why.empty() ? "minor map is not onto" : why);
  }
  std::map<Term, std::array<int, 3>> cell;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < big_k; ++c) {
      auto [j, l] = chi_inverse(c + 1);
      for (int v : mu.at(r, c)) cell[as[static_cast<std::size_t>(v)]] = {r + 1, j, l};
    }
  }
  GroheDb out;
  out.d = d;
  out.dprime = dprime;
  out.a = as;
  out.k = k;
  std::vector<Atom> facts;
  for (const Atom& f : dprime) {
    std::set<int> idx;
    for (const Term& t : f.args) {
      auto it = cell.find(t);
      if (it != cell.end()) idx.insert(it->second.begin(), it->second.end());
    }
    for (const LabelledClique& eta : labelled_cliques(g, std::vector<int>(idx.begin(), idx.end()))) {
      std::vector<Term> args;
      for (const Term& t : f.args) {
        auto it = cell.find(t);
        if (it == cell.end()) {
          args.push_back(t);
          out.h0[t] = t;
          continue;
        }
        auto [i, j, l] = it->second;
        Term e = tuple_constant(t, i, j, l, eta.eta.at(i), eta.eta.at(j), eta.eta.at(l));
        out.h0[e] = t;
        args.push_back(e);
      }
      facts.emplace_back(f.pred, std::move(args));
    }
  }
  out.dstar = Instance(std::move(facts));
  return out;
}

std::string to_string(const ReductionReport& r) {
  auto flag = [](bool b) { return b ? "true" : "false"; };
  auto opt = [&](const std::optional<bool>& b) { return b ? flag(*b) : "skipped"; };
  std::string out;
  out += std::string("h0_homomorphism=") + flag(r.h0_homomorphism) + "\n";
  out += std::string("h0_surjective=") + flag(r.h0_surjective) + "\n";
  out += std::string("has_k_clique=") + flag(r.has_k_clique) + "\n";
  out += std::string("has_projection_hom=") + flag(r.has_projection_hom) + "\n";
  out += std::string("biconditional=") + flag(r.biconditional) + "\n";
  out += std::string("dprime_satisfies=") + opt(r.dprime_satisfies) + "\n";
  out += std::string("clique_extension=") + opt(r.clique_extension) + "\n";
  out += std::string("dstar_satisfies=") + opt(r.dstar_satisfies) + "\n";
  for (const std::string& f : r.failures) out += "failure=" + f + "\n";
  return out;
}

ReductionReport check_reduction_properties(const GroheDb& gdb, const TgdSet& sigma,
                                           const Graph& g, int k, int r, int m) {
  ReductionReport rep;
  rep.h0_homomorphism = true;
  std::set<Term> image;
  for (const Atom& f : gdb.dstar) {
    std::vector<Term> args;
    for (const Term& t : f.args) {
      auto it = gdb.h0.find(t);
      if (it == gdb.h0.end()) {
        rep.h0_homomorphism = false;
        break;
      }
      args.push_back(it->second);
      image.insert(it->second);
    }
    if (!rep.h0_homomorphism || !gdb.dprime.contains(Atom(f.pred, args))) {
      rep.h0_homomorphism = false;
      break;
    }
  }
  std::vector<Term> target = gdb.dprime.adom();
  rep.h0_surjective = rep.h0_homomorphism &&
                      std::includes(image.begin(), image.end(), target.begin(), target.end());
  if (!rep.h0_homomorphism) rep.failures.push_back("h0 is not a homomorphism from D* to D'");

  rep.has_k_clique = has_clique(g, k);
  if (rep.has_k_clique && !rep.h0_surjective) {
    rep.failures.push_back("h0 is not surjective although G has a k-clique");
  }
  std::vector<Atom> source = gdb.d.atoms();
  for (const Term& z : gdb.a) source.emplace_back(marker(z), std::vector<Term>{z});
  std::vector<Atom> tgt = gdb.dstar.atoms();
  std::set<Term> aset(gdb.a.begin(), gdb.a.end());
  for (const auto& [e, z] : gdb.h0) {
    if (aset.count(z)) tgt.emplace_back(marker(z), std::vector<Term>{e});
  }
  rep.has_projection_hom = has_homomorphism(source, Instance(std::move(tgt)));
  rep.biconditional = rep.has_k_clique == rep.has_projection_hom;
  if (!rep.biconditional) {
    rep.failures.push_back(rep.has_k_clique
                               ? "G has a k-clique but no homomorphism D -> D* projects to the identity"
                               : "a homomorphism D -> D* projects to the identity but G has no k-clique");
  }

  if (!sigma.empty()) {
    rep.dprime_satisfies = satisfies(gdb.dprime, sigma);
    std::size_t small = static_cast<std::size_t>(3 * r);
    std::size_t large = static_cast<std::size_t>(3 * r * m);
    bool extends = true;
    for_each_clique(g, small, [&](const std::vector<int>& c) {
      extends = clique_extends(g, c, large);
      return extends;
    });
    rep.clique_extension = extends;
    rep.dstar_satisfies = satisfies(gdb.dstar, sigma);
    if (*rep.dprime_satisfies && extends && !*rep.dstar_satisfies) {
      rep.failures.push_back("D' and G meet the conditions but D* violates the dependencies");
    }
  }
  return rep;
}

CliqueReduction clique_reduction_constraint_free(const Graph& g, int k, const CQ& q) {
  if (!q.is_boolean()) throw Error(Errc::precondition_violated, "query must be Boolean");
  if (gaifman(q.body()).components().size() != 1) {
    throw Error(Errc::precondition_violated, "query must be connected");
  }
  if (!isomorphic(core(q), q)) throw Error(Errc::precondition_violated, "query must be a core");
  Instance d = canonical_database(q);
  std::vector<Term> a = d.adom();
  int big_k = k * (k - 1) / 2;
  if (k < 2) throw Error(Errc::precondition_violated, "k must be at least 2");
  auto mu = grid_minor(restricted_gaifman(d, a), k, big_k, true);
  if (!mu) {
    throw Error(Errc::no_grid_minor_found,
                "no " + std::to_string(k) + "x" + std::to_string(big_k) +
                    " grid minor in the Gaifman graph of the query");
  }
  CliqueReduction out;
  out.gdb = grohe_db(g, k, d, d, a, *mu);
  out.dstar = out.gdb.dstar;
  out.cqs.query = UCQ{q};
  out.report = check_reduction_properties(out.gdb, {}, g, k, q.body().empty() ? 0 : UCQ{q}.schema().max_arity(), 1);
  return out;
}

CliqueReduction clique_reduction_cqs(const Graph& g, int k, const CQS& s, const CQ& p,
                                     const CQ& pprime, const std::vector<Term>& x) {
  CQS sp{s.sigma, UCQ{p}};
  Verdict forward = cqs_contains(s, sp);
  Verdict backward = cqs_contains(sp, s);
  if (forward.answer != Answer::yes || backward.answer != Answer::yes) {
    lemma_failed(1, "q and p are not shown equivalent under the dependencies (" +
                        std::string(to_string(forward.answer)) + ", " +
                        std::string(to_string(backward.answer)) + ")");
  }
  Instance dp = canonical_database(p);
  Instance dpp = canonical_database(pprime);
  if (auto t = first_active_trigger(dpp, s.sigma)) {
    lemma_failed(2, "D[p'] violates dependency " + std::to_string(t->tgd + 1));
  }
  for (const Atom& f : dp) {
    if (!dpp.contains(f)) lemma_failed(3, "atom " + to_string(f) + " of D[p] missing from D[p']");
  }
  std::vector<Term> xs;
  for (const Term& v : x) xs.push_back(as_constant(v));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Term> pvars = dp.adom();
  for (const Term& v : xs) {
    if (!std::binary_search(pvars.begin(), pvars.end(), v)) {
      lemma_failed(4, "X mentions " + std::string(v.name()) + " outside the variables of p");
    }
  }
  std::size_t homs = 0;
  std::string moved;
  for_each_homomorphism(dp.atoms(), AtomIndex(dpp), {}, [&](const TermMap& h) {
    if (++homs > 100000) {
      moved = "more than 100000 homomorphisms from p to p'";
      return false;
    }
    std::vector<Term> img;
    for (const Term& v : xs) img.push_back(h.at(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (img != xs) {
      moved = "a homomorphism from p to p' does not map X onto X";
      return false;
    }
    return true;
  });
  if (!moved.empty()) lemma_failed(4, moved);
  int r = s.schema().max_arity();
  SetClassification cls = classify_set(s.sigma);
  int m = std::max(cls.m, 1);
  Graph gx = restricted_gaifman(dp, xs);
  if (treewidth(gx) <= r * m) {
    lemma_failed(5, "treewidth of the Gaifman graph of p on X is " +
                        std::to_string(treewidth(gx)) + ", not above " + std::to_string(r * m));
  }
  int big_k = k * (k - 1) / 2;
  if (k < 2) throw Error(Errc::precondition_violated, "k must be at least 2");
  auto mu = grid_minor(gx, k, big_k, true);
  if (!mu) {
    throw Error(Errc::no_grid_minor_found,
                "no " + std::to_string(k) + "x" + std::to_string(big_k) +
                    " grid minor in the Gaifman graph of p on X");
  }
  CliqueReduction out;
  out.gdb = grohe_db(g, k, dp, dpp, xs, *mu);
  out.dstar = out.gdb.dstar;
  out.cqs = s;
  out.report = check_reduction_properties(out.gdb, s.sigma, g, k, r, m);
  return out;
}

}  // namespace gtgd
