#include "hornmax/hornenc.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace hornmax {

Lit DualRailMap::map_literal(Lit l) const {
  const Rail& r = rails_.at(l.var());
  if (r.kind == Rail::Kind::Single) return l.positive() ? Lit::pos(r.p) : Lit::neg(r.p);
  return l.positive() ? Lit::neg(r.n) : Lit::neg(r.p);
}

std::size_t DualRailMap::dual_count() const {
  return static_cast<std::size_t>(std::count_if(rails_.begin() + 1, rails_.end(), [](const Rail& r) {
    return r.kind == Rail::Kind::Dual;
  }));
}

namespace {

Clause p_clause(const Rail& r) { return Clause{Lit::neg(r.p), Lit::neg(r.n)}; }

// Shared back end of henc and henc_reduced once the rail map is fixed.
HencResult assemble(const CnfFormula& f, DualRailMap map, int num_vars) {
  HencResult h;
  h.map = std::move(map);
  h.wcnf.num_vars = num_vars;
  for (Var x = 1; x <= f.num_vars; ++x) {
    const Rail& r = h.map.rail(x);
    if (r.kind != Rail::Kind::Dual) continue;
    h.p_clause_ids.push_back(h.wcnf.hard.size());
    h.wcnf.hard.push_back(p_clause(r));
  }
  for (const Clause& c : f.clauses) {
    Clause img;
    for (Lit l : c.lits) img.lits.push_back(h.map.map_literal(l));
    h.wcnf.hard.push_back(normalized(img));
  }
  for (Var x = 1; x <= f.num_vars; ++x)
    if (h.map.rail(x).kind == Rail::Kind::Dual) h.wcnf.soft.push_back({Clause{Lit::pos(h.map.rail(x).n)}, 1});
  for (Var x = 1; x <= f.num_vars; ++x)
    if (h.map.rail(x).kind == Rail::Kind::Dual) h.wcnf.soft.push_back({Clause{Lit::pos(h.map.rail(x).p)}, 1});
  h.target = h.map.dual_count();
  return h;
}

}  // namespace

HencResult henc(const CnfFormula& f) {
  if (f.num_vars < 1) throw Error("henc needs at least one variable");
  f.validate();
  DualRailMap map(f.num_vars);
  for (Var x = 1; x <= f.num_vars; ++x) map.set(x, {Rail::Kind::Dual, 2 * x - 1, 2 * x});
  return assemble(f, std::move(map), 2 * f.num_vars);
}

HencResult drop_p(const HencResult& h) {
  HencResult out = h;
  std::vector<bool> is_p(h.wcnf.hard.size(), false);
  for (std::size_t id : h.p_clause_ids) is_p[id] = true;
  out.wcnf.hard.clear();
  for (std::size_t i = 0; i < h.wcnf.hard.size(); ++i)
    if (!is_p[i]) out.wcnf.hard.push_back(h.wcnf.hard[i]);
  out.p_clause_ids.clear();
  out.p_dropped = true;
  return out;
}

HencResult restore_p(const HencResult& h) {
  if (!h.p_dropped) return h;
  HencResult out = h;
  out.wcnf.hard.clear();
  for (Var x = 1; x <= h.map.original_vars(); ++x) {
    if (h.map.rail(x).kind != Rail::Kind::Dual) continue;
    out.p_clause_ids.push_back(out.wcnf.hard.size());
    out.wcnf.hard.push_back(p_clause(h.map.rail(x)));
  }
  out.wcnf.hard.insert(out.wcnf.hard.end(), h.wcnf.hard.begin(), h.wcnf.hard.end());
  out.p_dropped = false;
  return out;
}

HencResult henc_reduced(const CnfFormula& f) {
  f.validate();
  const int n = f.num_vars;

  std::vector<std::size_t> non_horn;
  std::vector<Clause> norm;
  norm.reserve(f.clauses.size());
  for (std::size_t j = 0; j < f.clauses.size(); ++j) {
    norm.push_back(normalized(f.clauses[j]));
    if (positive_count(norm.back()) > 1) non_horn.push_back(j);
  }

  // W: variables occurring positively in some non-Horn clause; everything else is single-rail.
  std::vector<int> occurrences(n + 1, 0);
  std::vector<std::vector<std::size_t>> pos_in(n + 1);
  for (std::size_t j : non_horn)
    for (Lit l : norm[j].lits)
      if (l.positive()) {
        ++occurrences[l.var()];
        pos_in[l.var()].push_back(j);
      }

  std::stable_sort(non_horn.begin(), non_horn.end(), [&](std::size_t a, std::size_t b) {
    return positive_count(norm[a]) > positive_count(norm[b]);
  });

  std::vector<bool> kept(n + 1, false), excluded(n + 1, false);
  std::vector<bool> has_kept(f.clauses.size(), false);
  for (std::size_t j : non_horn) {
    if (has_kept[j]) continue;
    Var best = 0;
    for (Lit l : norm[j].lits) {
      if (!l.positive() || excluded[l.var()] || kept[l.var()]) continue;
      const bool feasible = std::none_of(pos_in[l.var()].begin(), pos_in[l.var()].end(),
                                         [&](std::size_t c) { return has_kept[c]; });
      if (!feasible) continue;
      if (best == 0 || occurrences[l.var()] > occurrences[best]) best = l.var();
    }
    if (best == 0) continue;
    kept[best] = true;
    for (std::size_t c : pos_in[best]) {
      has_kept[c] = true;
      for (Lit l : norm[c].lits)
        if (l.positive() && l.var() != best) excluded[l.var()] = true;
    }
  }

  DualRailMap map(n);
  Var next = 1;
  for (Var x = 1; x <= n; ++x) {
    const bool in_w = occurrences[x] > 0;
    if (!in_w || kept[x]) {
      map.set(x, {Rail::Kind::Single, next, 0});
      next += 1;
    } else {
      map.set(x, {Rail::Kind::Dual, next, next + 1});
      next += 2;
    }
  }
  return assemble(f, std::move(map), next - 1);
}

Assignment encode_assignment(const HencResult& h, const Assignment& original) {
  Assignment a(h.wcnf.num_vars);
  for (Var v = 1; v <= h.wcnf.num_vars; ++v) a.set(v, false);
  for (Var x = 1; x <= h.map.original_vars(); ++x) {
    const Rail& r = h.map.rail(x);
    const bool val = original.is_true(x);
    if (r.kind == Rail::Kind::Single) {
      a.set(r.p, val);
    } else {
      a.set(val ? r.p : r.n, true);
    }
  }
  return a;
}

Assignment decode(const HencResult& h, const Assignment& a) {
  auto c = cost(h.wcnf, a);
  if (!c) throw Error("assignment falsifies a hard clause");
  const std::uint64_t satisfied = h.wcnf.total_soft_weight() - *c;
  if (satisfied < h.target)
    throw NoWitness("only " + std::to_string(satisfied) + " of the required " +
                    std::to_string(h.target) + " soft clauses are satisfied");

  Assignment x(h.map.original_vars());
  for (Var v = 1; v <= h.map.original_vars(); ++v) {
    const Rail& r = h.map.rail(v);
    if (r.kind == Rail::Kind::Single) {
      x.set(v, a.is_true(r.p));
    } else if (a.is_true(r.p) != a.is_true(r.n)) {
      x.set(v, a.is_true(r.p));
    } else {
      // Both rails equal; only reachable without the P clauses.
      x.set(v, !a.is_true(r.n));
    }
  }
  // The rewritten clauses must hold under the consistent re-encoding of x.
  if (!cost(h.wcnf, encode_assignment(h, x)))
    throw NoWitness("assignment does not decode to a model of the original formula");
  return x;
}

std::vector<std::string> sidecar_comments(const HencResult& h) {
  std::vector<std::string> out;
  out.push_back("hornmax target " + std::to_string(h.target));
  out.push_back("hornmax original-vars " + std::to_string(h.map.original_vars()));
  out.push_back(std::string("hornmax p-clauses ") + (h.p_dropped ? "dropped" : "kept"));
  for (Var x = 1; x <= h.map.original_vars(); ++x) {
    const Rail& r = h.map.rail(x);
    std::ostringstream os;
    os << "hornmax rail " << x;
    if (r.kind == Rail::Kind::Dual)
      os << " dual " << r.p << ' ' << r.n;
    else
      os << " single " << r.p;
    out.push_back(os.str());
  }
  return out;
}

std::optional<HencResult> from_sidecar(WcnfFormula wcnf, const std::vector<std::string>& comments) {
  std::optional<std::uint64_t> target;
  std::optional<int> original;
  bool dropped = false;
  std::map<Var, Rail> rails;
  for (const std::string& line : comments) {
    std::istringstream is(line);
    std::string tag, key;
    if (!(is >> tag >> key) || tag != "hornmax") continue;
    if (key == "target") {
      std::uint64_t t;
      if (is >> t) target = t;
    } else if (key == "original-vars") {
      int o;
      if (is >> o) original = o;
    } else if (key == "p-clauses") {
      std::string s;
      is >> s;
      dropped = s == "dropped";
    } else if (key == "rail") {
      Var x;
      std::string kind;
      Rail r;
      if (!(is >> x >> kind)) throw Error("bad rail comment: " + line);
      if (kind == "dual") {
        r.kind = Rail::Kind::Dual;
        if (!(is >> r.p >> r.n)) throw Error("bad rail comment: " + line);
      } else {
        r.kind = Rail::Kind::Single;
        if (!(is >> r.p)) throw Error("bad rail comment: " + line);
      }
      rails[x] = r;
    }
  }
  if (!target || !original) return std::nullopt;
  HencResult h;
  h.map = DualRailMap(*original);
  for (auto& [x, r] : rails) {
    if (x < 1 || x > *original) throw Error("rail for unknown variable " + std::to_string(x));
    h.map.set(x, r);
  }
  h.target = *target;
  h.p_dropped = dropped;
  if (!dropped) {
    for (Var x = 1; x <= *original; ++x) {
      if (h.map.rail(x).kind != Rail::Kind::Dual) continue;
      const Clause want = normalized(p_clause(h.map.rail(x)));
      for (std::size_t i = 0; i < wcnf.hard.size(); ++i)
        if (normalized(wcnf.hard[i]) == want) {
          h.p_clause_ids.push_back(i);
          break;
        }
    }
  }
  h.wcnf = std::move(wcnf);
  return h;
}

}  // namespace hornmax
