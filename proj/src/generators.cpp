#include "hornmax/generators.hpp"

#include <bit>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "hornmax/cardinality.hpp"

namespace hornmax::gen {

const char* to_string(AtMost1 e) { return e == AtMost1::Pairwise ? "pairwise" : "seqcounter"; }

AtMost1 parse_atmost1(std::string_view s) {
  if (s == "pairwise" || s == "pw") return AtMost1::Pairwise;
  if (s == "seqcounter" || s == "sc") return AtMost1::SeqCounter;
  throw Error("unknown AtMost1 encoding: " + std::string(s));
}

Var VarLayout::add(std::string name) {
  const Var v = static_cast<Var>(names_.size());
  index_.emplace(name, v);
  names_.push_back(std::move(name));
  return v;
}

Var VarLayout::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? 0 : it->second;
}

PhpInstance gen_php(const PhpParams& p) {
  if (p.holes < 1) throw Error("PHP needs at least one hole");
  const int m = p.holes;
  PhpInstance inst;
  inst.holes = m;
  for (int i = 1; i <= m + 1; ++i)
    for (int j = 1; j <= m; ++j)
      inst.layout.add("x[" + std::to_string(i) + "," + std::to_string(j) + "]");

  auto& clauses = inst.formula.clauses;
  for (int i = 1; i <= m + 1; ++i) {
    Clause c;
    for (int j = 1; j <= m; ++j) c.lits.push_back(Lit::pos(inst.x(i, j)));
    clauses.push_back(std::move(c));
  }

  VarPool pool(m * (m + 1));
  for (int j = 1; j <= m; ++j) {
    if (p.atmost1 == AtMost1::Pairwise) {
      for (int r = 2; r <= m + 1; ++r)
        for (int s = 1; s < r; ++s)
          clauses.push_back(Clause{Lit::neg(inst.x(r, j)), Lit::neg(inst.x(s, j))});
    } else {
      std::vector<Lit> column;
      for (int i = 1; i <= m + 1; ++i) column.push_back(Lit::pos(inst.x(i, j)));
      const int before = pool.num_vars();
      auto enc = encode_seqcounter(column, 1, pool);
      for (int v = before + 1; v <= pool.num_vars(); ++v)
        inst.layout.add("s[" + std::to_string(j) + "," + std::to_string(v - before) + "]");
      clauses.insert(clauses.end(), enc.begin(), enc.end());
    }
  }
  inst.formula.num_vars = pool.num_vars();
  return inst;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable bounded draw; std::uniform_int_distribution output differs between stdlibs.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % bound;
}

int find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

constexpr int kDegree = 5;

}  // namespace

ParityGraph urq_graph(const UrqParams& p) {
  if (p.n < 3) throw Error("URQ needs n >= 3");
  const int side = p.n * p.n;
  std::mt19937_64 rng(splitmix64(splitmix64(splitmix64(static_cast<std::uint64_t>(p.n)) ^ p.seed) ^
                                 static_cast<std::uint64_t>(p.index)));
  ParityGraph g;
  g.num_nodes = 2 * side;
  std::vector<int> stubs(static_cast<std::size_t>(side) * kDegree);
  for (;;) {
    std::iota(stubs.begin(), stubs.end(), 0);
    for (std::size_t i = stubs.size() - 1; i > 0; --i) std::swap(stubs[i], stubs[below(rng, i + 1)]);
    g.edges.clear();
    std::vector<int> parent(g.num_nodes);
    std::iota(parent.begin(), parent.end(), 0);
    int components = g.num_nodes;
    for (std::size_t e = 0; e < stubs.size(); ++e) {
      const int left = static_cast<int>(e) / kDegree;
      const int right = side + stubs[e] / kDegree;
      g.edges.emplace_back(left, right);
      const int a = find(parent, left), b = find(parent, right);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    if (components == 1) break;
  }
  g.charge.assign(g.num_nodes, 0);
  g.charge[below(rng, g.num_nodes)] = 1;
  return g;
}

CnfFormula tseitin(const ParityGraph& g) {
  std::vector<std::vector<Var>> incident(g.num_nodes);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    incident[g.edges[e].first].push_back(static_cast<Var>(e + 1));
    incident[g.edges[e].second].push_back(static_cast<Var>(e + 1));
  }
  CnfFormula f;
  f.num_vars = static_cast<int>(g.edges.size());
  for (int v = 0; v < g.num_nodes; ++v) {
    const auto& vars = incident[v];
    const std::uint32_t d = static_cast<std::uint32_t>(vars.size());
    // Forbid every assignment to the incident edges whose parity differs from the charge.
    for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
      if ((std::popcount(mask) & 1U) == g.charge[v]) continue;
      Clause c;
      for (std::uint32_t b = 0; b < d; ++b)
        c.lits.push_back((mask >> b) & 1U ? Lit::neg(vars[b]) : Lit::pos(vars[b]));
      f.clauses.push_back(std::move(c));
    }
  }
  return f;
}

CnfFormula gen_urq(const UrqParams& p) { return tseitin(urq_graph(p)); }

CnfFormula combine_or(const CnfFormula& a, const CnfFormula& b) {
  CnfFormula f;
  const Var selector = a.num_vars + b.num_vars + 1;
  f.num_vars = selector;
  for (const Clause& c : a.clauses) {
    Clause d = c;
    d.lits.push_back(Lit::pos(selector));
    f.clauses.push_back(std::move(d));
  }
  for (const Clause& c : b.clauses) {
    Clause d;
    for (Lit l : c.lits) d.lits.emplace_back(l.positive() ? l.var() + a.num_vars : -(l.var() + a.num_vars));
    d.lits.push_back(Lit::neg(selector));
    f.clauses.push_back(std::move(d));
  }
  return f;
}

CnfFormula gen_comb(int holes, const UrqParams& urq) {
  return combine_or(gen_php({holes, AtMost1::Pairwise}).formula, gen_urq(urq));
}

const char* to_string(Family f) {
  switch (f) {
    case Family::PhpPairwise: return "php-pw";
    case Family::PhpSeqCounter: return "php-sc";
    case Family::Urq: return "urq";
    case Family::Comb: return "comb";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  if (s == "php-pw") return Family::PhpPairwise;
  if (s == "php-sc") return Family::PhpSeqCounter;
  if (s == "urq") return Family::Urq;
  if (s == "comb") return Family::Comb;
  throw Error("unknown family: " + std::string(s));
}

std::string InstanceSpec::label() const {
  std::ostringstream os;
  os << to_string(family);
  if (family != Family::Urq) os << " m=" << holes;
  if (family == Family::Urq || family == Family::Comb)
    os << " n=" << urq.n << " seed=" << urq.seed << " i=" << urq.index;
  return os.str();
}

std::string InstanceSpec::provenance() const { return "generator: " + label(); }

CnfFormula InstanceSpec::generate() const {
  switch (family) {
    case Family::PhpPairwise: return gen_php({holes, AtMost1::Pairwise}).formula;
    case Family::PhpSeqCounter: return gen_php({holes, AtMost1::SeqCounter}).formula;
    case Family::Urq: return gen_urq(urq);
    case Family::Comb: return gen_comb(holes, urq);
  }
  throw Error("unknown family");
}

std::vector<InstanceSpec> benchmark_family(Family f) {
  std::vector<InstanceSpec> out;
  switch (f) {
    case Family::PhpPairwise:
    case Family::PhpSeqCounter: {
      std::vector<int> pigeons;
      for (int k = 5; k <= 37; ++k) pigeons.push_back(k);
      for (int k = 40; k <= 100; k += 5) pigeons.push_back(k);
      for (int k : pigeons) out.push_back({f, k - 1, {}});
      break;
    }
    case Family::Urq:
      for (int n = 3; n <= 30; ++n)
        for (int i = 1; i <= 3; ++i) out.push_back({f, 0, {n, 0, i}});
      break;
    case Family::Comb:
      for (int m : {7, 9, 11, 13})
        for (int n = 3; n <= 10; ++n)
          for (int i = 1; i <= 3; ++i) out.push_back({f, m, {n, 0, i}});
      break;
  }
  return out;
}

}  // namespace hornmax::gen
