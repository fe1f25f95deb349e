#include "hornmax/maxsat.hpp"

#include <algorithm>
#include <numeric>

namespace hornmax {

const char* to_string(MaxSatStatus s) {
  switch (s) {
    case MaxSatStatus::Optimal: return "optimal";
    case MaxSatStatus::Infeasible: return "infeasible";
    case MaxSatStatus::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

Selectors make_selectors(const WcnfFormula& f) {
  Selectors s;
  s.num_vars = f.num_vars;
  s.lits.reserve(f.soft.size());
  for (const SoftClause& sc : f.soft) {
    if (sc.clause.size() == 1) {
      s.lits.push_back(sc.clause.lits[0]);
      continue;
    }
    const Var b = ++s.num_vars;
    Clause c = sc.clause;
    c.lits.push_back(Lit::pos(b));
    s.extra_hard.push_back(std::move(c));
    s.lits.push_back(Lit::neg(b));
  }
  return s;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<SubInstance> split_components(const WcnfFormula& f) {
  // Node 0 collects clauses with no literals so they end up in one place.
  UnionFind uf(f.num_vars + 1);
  auto link = [&](const Clause& c) {
    if (c.empty()) return;
    for (Lit l : c.lits) uf.unite(l.var(), c.lits[0].var());
  };
  for (const Clause& c : f.hard) link(c);
  for (const SoftClause& s : f.soft) link(s.clause);

  auto root_of = [&](const Clause& c) { return c.empty() ? uf.find(0) : uf.find(c.lits[0].var()); };

  std::vector<int> comp_of_root(f.num_vars + 1, -1);
  std::vector<SubInstance> out;
  auto component = [&](const Clause& c) -> int {
    const int r = root_of(c);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(out.size());
      out.emplace_back();
      out.back().to_global.push_back(0);
    }
    return comp_of_root[r];
  };
  std::vector<Var> local_of(f.num_vars + 1, 0);
  auto translate = [&](SubInstance& sub, const Clause& c) {
    Clause t;
    t.lits.reserve(c.size());
    for (Lit l : c.lits) {
      Var& lv = local_of[l.var()];
      if (lv == 0) {
        sub.to_global.push_back(l.var());
        lv = static_cast<Var>(sub.to_global.size()) - 1;
      }
      t.lits.push_back(l.positive() ? Lit::pos(lv) : Lit::neg(lv));
    }
    return t;
  };
  for (const Clause& c : f.hard) {
    SubInstance& sub = out[component(c)];
    sub.formula.hard.push_back(translate(sub, c));
  }
  for (std::size_t i = 0; i < f.soft.size(); ++i) {
    SubInstance& sub = out[component(f.soft[i].clause)];
    sub.formula.soft.push_back({translate(sub, f.soft[i].clause), f.soft[i].weight});
    sub.soft_ids.push_back(i);
  }
  for (SubInstance& sub : out) sub.formula.num_vars = static_cast<int>(sub.to_global.size()) - 1;
  return out;
}

void lift_model(const SubInstance& sub, const Assignment& local, Assignment& global) {
  for (Var v = 1; v < static_cast<Var>(sub.to_global.size()); ++v) global.set(sub.to_global[v], local.is_true(v));
}

bool BudgetTracker::exhausted() const { return budget_.expired(used_); }

Budget BudgetTracker::remaining() const {
  Budget b = budget_;
  if (b.max_propagations != 0) b.max_propagations = used_ >= b.max_propagations ? 1 : b.max_propagations - used_;
  return b;
}

CoreOracle::CoreOracle(int num_vars, const std::vector<Clause>& hard) : num_vars_(num_vars), sat_(num_vars) {
  sat_.add_clauses(hard);
  if (is_horn_formula(hard)) {
    horn_clauses_ = hard;
    horn_.emplace(num_vars, horn_clauses_);
  }
}

void CoreOracle::add(const Clause& c) {
  sat_.add_clause(c);
  for (Lit l : c.lits) num_vars_ = std::max(num_vars_, l.var());
  if (!horn_) return;
  if (!is_horn(c)) {
    horn_.reset();
    horn_clauses_.clear();
    return;
  }
  horn_clauses_.push_back(c);
  horn_stale_ = true;
}

CoreOracle::Answer CoreOracle::check(std::span<const Lit> assumptions, BudgetTracker& budget) {
  Answer a;
  for (Lit l : assumptions) num_vars_ = std::max(num_vars_, l.var());
  if (horn_) {
    if (horn_stale_ || horn_->num_vars() < num_vars_) {
      horn_.emplace(num_vars_, horn_clauses_);
      horn_stale_ = false;
    }
    LturOutcome o = horn_->solve(assumptions);
    a.status = o.status;
    a.core = std::move(o.core);
    a.model = std::move(o.model);
    a.propagations = o.propagations;
  } else {
    SatResult r = sat_.solve(assumptions, budget.remaining());
    a.status = r.status;
    a.core = std::move(r.core);
    a.model = std::move(r.model);
    a.propagations = r.propagations;
  }
  budget.charge(a.propagations);
  return a;
}

}  // namespace hornmax
