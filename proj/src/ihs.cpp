#include "hornmax/ihs.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace hornmax::ihs {

namespace {

struct Interrupted {};

class HittingSetSearch {
 public:
  HittingSetSearch(std::vector<std::vector<int>> sets, int num_elements, const Budget& budget)
      : sets_(std::move(sets)), in_sets_(num_elements), hits_(sets_.size(), 0), forbidden_(num_elements, 0),
        budget_(budget) {
    for (std::size_t s = 0; s < sets_.size(); ++s)
      for (int e : sets_[s]) in_sets_[e].push_back(static_cast<int>(s));
  }

  std::vector<int> run() {
    best_ = greedy();
    std::vector<int> chosen;
    search(chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  std::vector<int> open_sets() const {
    std::vector<int> open;
    for (std::size_t s = 0; s < sets_.size(); ++s)
      if (hits_[s] == 0) open.push_back(static_cast<int>(s));
    return open;
  }

  int open_degree(int e) const {
    int d = 0;
    for (int s : in_sets_[e]) d += hits_[s] == 0;
    return d;
  }

  void take(int e, int delta) {
    for (int s : in_sets_[e]) hits_[s] += delta;
  }

  std::vector<int> greedy() {
    std::vector<int> picked;
    for (;;) {
      int best = -1, best_deg = 0;
      for (int e = 0; e < static_cast<int>(in_sets_.size()); ++e) {
        const int d = open_degree(e);
        if (d > best_deg) best = e, best_deg = d;
      }
      if (best < 0) break;
      picked.push_back(best);
      take(best, +1);
    }
    for (int e : picked) take(e, -1);
    return picked;
  }

  // Greedy packing of pairwise-disjoint open sets over allowed elements.
  int packing_bound(const std::vector<int>& open) const {
    std::vector<std::pair<int, int>> by_size;
    for (int s : open) {
      int allowed = 0;
      for (int e : sets_[s]) allowed += !forbidden_[e];
      by_size.push_back({allowed, s});
    }
    std::sort(by_size.begin(), by_size.end());
    std::vector<char> used(in_sets_.size(), 0);
    int count = 0;
    for (auto [size, s] : by_size) {
      bool free = true;
      for (int e : sets_[s])
        if (!forbidden_[e] && used[e]) free = false;
      if (!free) continue;
      ++count;
      for (int e : sets_[s])
        if (!forbidden_[e]) used[e] = 1;
    }
    return count;
  }

  void search(std::vector<int>& chosen) {
    if (budget_.deadline && ++nodes_ % 1024 == 0 && budget_.expired(0)) throw Interrupted{};
    const std::vector<int> open = open_sets();
    if (open.empty()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    for (int s : open)
      if (std::all_of(sets_[s].begin(), sets_[s].end(), [&](int e) { return forbidden_[e] != 0; })) return;
    if (chosen.size() + static_cast<std::size_t>(packing_bound(open)) >= best_.size()) return;

    // Candidates with their open sets; dominated ones are excluded for this subtree.
    std::map<int, std::vector<int>> cover;
    for (int s : open)
      for (int e : sets_[s])
        if (!forbidden_[e]) cover[e].push_back(s);
    std::vector<int> newly_forbidden;
    for (auto& [a, sa] : cover) {
      for (auto& [b, sb] : cover) {
        if (a == b || forbidden_[b]) continue;
        if (sa.size() > sb.size() || !std::includes(sb.begin(), sb.end(), sa.begin(), sa.end())) continue;
        if (sa.size() == sb.size() && a < b) continue;  // equal coverage: keep the lower id
        forbidden_[a] = 1;
        newly_forbidden.push_back(a);
        break;
      }
    }

    int branch = -1;
    std::size_t best_deg = 0;
    for (auto& [e, se] : cover)
      if (!forbidden_[e] && se.size() > best_deg) branch = e, best_deg = se.size();

    if (branch >= 0) {
      chosen.push_back(branch);
      take(branch, +1);
      search(chosen);
      take(branch, -1);
      chosen.pop_back();

      forbidden_[branch] = 1;
      search(chosen);
      forbidden_[branch] = 0;
    }
    for (int e : newly_forbidden) forbidden_[e] = 0;
  }

  std::vector<std::vector<int>> sets_;
  std::vector<std::vector<int>> in_sets_;
  std::vector<int> hits_;
  std::vector<char> forbidden_;
  std::vector<int> best_;
  Budget budget_;
  std::uint64_t nodes_ = 0;
};

std::optional<std::vector<std::size_t>> hitting_set(const std::vector<Core>& sets, const Budget& budget);

struct Local {
  MaxSatStatus status = MaxSatStatus::Optimal;
  std::uint64_t cost = 0;
  Assignment model;
  std::vector<Core> disjoint;
};

// Disjoint cores, optionally followed by the hitting-set loop, on one (sub)instance.
Local run(const WcnfFormula& f, const std::vector<std::size_t>& soft_ids, std::size_t component,
          std::uint64_t lb_offset, bool full, BudgetTracker& budget, MaxSatResult* acc) {
  const Selectors sel = make_selectors(f);
  std::vector<Clause> hard = f.hard;
  hard.insert(hard.end(), sel.extra_hard.begin(), sel.extra_hard.end());
  CoreOracle oracle(sel.num_vars, hard);
  const std::size_t n = f.soft.size();

  Local out;
  std::vector<Core> cores;
  auto record = [&](const char* phase, const Core& core, std::uint64_t props, std::uint64_t lb) {
    if (!acc) return;
    TraceRecord r;
    r.phase = phase;
    r.component = component;
    for (std::size_t i : core) r.core.push_back(soft_ids[i]);
    std::sort(r.core.begin(), r.core.end());
    r.propagations = props;
    r.lb = lb_offset + lb;
    acc->trace.push_back(std::move(r));
  };
  // Checks hard clauses plus every soft outside `excluded`; returns the core as soft ids.
  auto check = [&](const std::vector<bool>& excluded, Core& core, CoreOracle::Answer& ans) {
    std::vector<Lit> assumptions;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (!excluded[i]) {
        assumptions.push_back(sel.lits[i]);
        ids.push_back(i);
      }
    ans = oracle.check(assumptions, budget);
    core.clear();
    for (std::size_t a : ans.core) core.push_back(ids[a]);
    std::sort(core.begin(), core.end());
  };
  auto finish_model = [&](const CoreOracle::Answer& ans) {
    out.model = Assignment(f.num_vars);
    for (Var v = 1; v <= f.num_vars; ++v) out.model.set(v, ans.model.is_true(v));
  };

  std::vector<bool> excluded(n, false);
  CoreOracle::Answer ans;
  Core core;
  for (;;) {
    check(excluded, core, ans);
    if (ans.status == SatStatus::Unknown) {
      out.status = MaxSatStatus::BudgetExceeded;
      out.cost = cores.size();
      return out;
    }
    if (ans.status == SatStatus::Sat) break;
    if (core.empty()) {
      out.status = MaxSatStatus::Infeasible;
      return out;
    }
    for (std::size_t i : core) excluded[i] = true;
    cores.push_back(core);
    record("disjoint", core, ans.propagations, cores.size());
  }
  out.disjoint = cores;
  if (!full) return out;
  if (cores.empty()) {
    finish_model(ans);
    out.cost = 0;
    return out;
  }

  std::uint64_t lb = cores.size();
  for (;;) {
    const auto hs = hitting_set(cores, budget.remaining());
    if (!hs) {
      out.status = MaxSatStatus::BudgetExceeded;
      out.cost = lb;
      return out;
    }
    const std::vector<std::size_t>& h = *hs;
    lb = h.size();
    std::fill(excluded.begin(), excluded.end(), false);
    for (std::size_t i : h) excluded[i] = true;
    check(excluded, core, ans);
    if (ans.status == SatStatus::Unknown) {
      out.status = MaxSatStatus::BudgetExceeded;
      out.cost = h.size();
      return out;
    }
    if (ans.status == SatStatus::Sat) {
      finish_model(ans);
      const auto c = cost(f, out.model);
      if (!c || *c != h.size()) throw Error("ihs: model cost does not match the hitting set");
      out.cost = h.size();
      return out;
    }
    if (core.empty()) {
      out.status = MaxSatStatus::Infeasible;
      return out;
    }
    cores.push_back(core);
    record("hs", core, ans.propagations, h.size());
    if (budget.exhausted()) {
      out.status = MaxSatStatus::BudgetExceeded;
      out.cost = h.size();
      return out;
    }
  }
}

SubInstance whole(const WcnfFormula& f) {
  SubInstance s;
  s.formula = f;
  s.to_global.resize(f.num_vars + 1);
  std::iota(s.to_global.begin(), s.to_global.end(), 0);
  s.soft_ids.resize(f.soft.size());
  std::iota(s.soft_ids.begin(), s.soft_ids.end(), 0);
  return s;
}

}  // namespace

std::vector<std::size_t> min_hitting_set(const std::vector<Core>& sets) { return *hitting_set(sets, Budget{}); }

namespace {

// nullopt when the deadline passes during the search.
std::optional<std::vector<std::size_t>> hitting_set(const std::vector<Core>& sets, const Budget& budget) {
  std::map<std::size_t, int> dense;
  std::vector<std::size_t> back;
  std::vector<std::vector<int>> mapped;
  for (const Core& s : sets) {
    if (s.empty()) throw Error("an empty set cannot be hit");
    std::vector<int> m;
    for (std::size_t e : s) {
      auto [it, inserted] = dense.emplace(e, static_cast<int>(back.size()));
      if (inserted) back.push_back(e);
      m.push_back(it->second);
    }
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    mapped.push_back(std::move(m));
  }
  // Dense ids follow first appearance; renumber by element value so "lowest id" means the
  // smallest soft id.
  std::vector<int> order(back.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return back[a] < back[b]; });
  std::vector<int> rank(back.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
  for (auto& m : mapped) {
    for (int& e : m) e = rank[e];
    std::sort(m.begin(), m.end());
  }
  // Supersets of other sets are hit automatically.
  std::sort(mapped.begin(), mapped.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
  std::vector<std::vector<int>> kept;
  for (auto& m : mapped) {
    const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const std::vector<int>& k) {
      return std::includes(m.begin(), m.end(), k.begin(), k.end());
    });
    if (!redundant) kept.push_back(std::move(m));
  }

  HittingSetSearch search(std::move(kept), static_cast<int>(back.size()), budget);
  std::vector<int> found;
  try {
    found = search.run();
  } catch (const Interrupted&) {
    return std::nullopt;
  }
  std::vector<std::size_t> out;
  for (int e : found) out.push_back(back[order[e]]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<Core>> disjoint_cores(const WcnfFormula& f, const Budget& budget) {
  f.validate();
  BudgetTracker tracker(budget);
  const SubInstance s = whole(f);
  Local l = run(s.formula, s.soft_ids, 0, 0, false, tracker, nullptr);
  if (l.status == MaxSatStatus::Infeasible) return std::nullopt;
  return l.disjoint;
}

MaxSatResult solve(const WcnfFormula& f, const SolveOptions& opt) {
  f.validate();
  if (!f.unit_weights()) throw Error("ihs supports unit soft weights only");
  std::vector<SubInstance> parts;
  if (opt.split_components)
    parts = split_components(f);
  else
    parts.push_back(whole(f));

  MaxSatResult res;
  res.model = Assignment(f.num_vars);
  for (Var v = 1; v <= f.num_vars; ++v) res.model.set(v, false);
  BudgetTracker budget(opt.budget);
  std::uint64_t total = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    Local l = run(parts[p].formula, parts[p].soft_ids, p, total, true, budget, &res);
    if (l.status != MaxSatStatus::Optimal) {
      res.status = l.status;
      res.cost = res.lower_bound = total + l.cost;
      res.model = Assignment();
      res.propagations = budget.used();
      return res;
    }
    total += l.cost;
    lift_model(parts[p], l.model, res.model);
  }
  res.status = MaxSatStatus::Optimal;
  res.cost = res.lower_bound = total;
  res.propagations = budget.used();
  return res;
}

}  // namespace hornmax::ihs
