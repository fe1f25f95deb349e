#include "hornmax/cdcl.hpp"

#include <algorithm>
#include <unordered_map>

namespace hornmax {

namespace {

// Luby sequence 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

CdclSolver::CdclSolver(int num_vars) { ensure_vars(num_vars); }

void CdclSolver::ensure_vars(int n) {
  if (n <= num_vars_) return;
  num_vars_ = n;
  watches_.resize(2 * static_cast<std::size_t>(n) + 2);
  assigns_.resize(n + 1, Value::Unassigned);
  levels_.resize(n + 1, 0);
  reasons_.resize(n + 1, kNone);
  phase_.resize(n + 1, false);
  seen_.resize(n + 1, 0);
  const std::size_t old = activity_.size();
  activity_.resize(n + 1, 0.0);
  for (std::size_t v = std::max<std::size_t>(old, 1); v <= static_cast<std::size_t>(n); ++v)
    heap_push(static_cast<Var>(v));
}

void CdclSolver::heap_push(Var v) {
  if (heap_.size() > 8 * static_cast<std::size_t>(num_vars_) + 64) {
    heap_.clear();
    for (Var u = 1; u <= num_vars_; ++u)
      if (assigns_[u] == Value::Unassigned) heap_.push_back({activity_[u], u});
    std::make_heap(heap_.begin(), heap_.end());
    return;
  }
  heap_.push_back({activity_[v], v});
  std::push_heap(heap_.begin(), heap_.end());
}

Var CdclSolver::new_var() {
  ensure_vars(num_vars_ + 1);
  return num_vars_;
}

Value CdclSolver::lit_value(Lit l) const {
  const Value v = assigns_[l.var()];
  if (v == Value::Unassigned || l.positive()) return v;
  return v == Value::True ? Value::False : Value::True;
}

void CdclSolver::enqueue(Lit l, int reason) {
  assigns_[l.var()] = l.positive() ? Value::True : Value::False;
  levels_[l.var()] = level();
  reasons_[l.var()] = reason;
  trail_.push_back(l);
  ++total_props_;
  ++call_props_;
}

void CdclSolver::attach(int ci) {
  const auto& lits = clauses_[ci].lits;
  watches_[(~lits[0]).index()].push_back(ci);
  watches_[(~lits[1]).index()].push_back(ci);
}

int CdclSolver::add_clause(const Clause& raw) {
  if (level() != 0) throw Error("add_clause during search");
  const int id = input_clauses_++;
  Clause c = normalized(raw);
  if (is_tautology(c)) return id;
  for (Lit l : c.lits) ensure_vars(l.var());
  if (root_conflict_) return id;

  // Non-false literals first so the watches start on them.
  std::stable_partition(c.lits.begin(), c.lits.end(), [&](Lit l) { return lit_value(l) != Value::False; });
  const int ci = static_cast<int>(clauses_.size());
  clauses_.push_back({c.lits, id});
  if (c.lits.empty() || lit_value(c.lits[0]) == Value::False) {
    root_conflict_ = true;
    return id;
  }
  if (c.lits.size() == 1) {
    if (lit_value(c.lits[0]) == Value::Unassigned) enqueue(c.lits[0], ci);
    return id;
  }
  attach(ci);
  if (lit_value(c.lits[1]) == Value::False && lit_value(c.lits[0]) == Value::Unassigned)
    enqueue(c.lits[0], ci);
  return id;
}

int CdclSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];  // p is true; visit clauses watching ~p
    auto& ws = watches_[p.index()];
    std::size_t i = 0, j = 0;
    int conflict = kNone;
    while (i < ws.size()) {
      const int ci = ws[i++];
      if (clauses_[ci].deleted) continue;
      auto& lits = clauses_[ci].lits;
      if (lits[0] == ~p) std::swap(lits[0], lits[1]);
      if (lit_value(lits[0]) == Value::True) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (lit_value(lits[k]) != Value::False) {
          std::swap(lits[1], lits[k]);
          watches_[(~lits[1]).index()].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (lit_value(lits[0]) == Value::False) {
        conflict = ci;
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(lits[0], ci);
      }
    }
    ws.resize(j);
    if (conflict != kNone) return conflict;
  }
  return kNone;
}

void CdclSolver::backtrack(int lvl) {
  if (level() <= lvl) return;
  for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[lvl]; --i) {
    const Var v = trail_[i].var();
    phase_[v] = trail_[i].positive();
    assigns_[v] = Value::Unassigned;
    reasons_[v] = kNone;
    heap_push(v);
  }
  trail_.resize(trail_lim_[lvl]);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

void CdclSolver::bump(Var v) {
  activity_[v] += act_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    act_inc_ *= 1e-100;
    for (auto& e : heap_) e.first = activity_[e.second];
    std::make_heap(heap_.begin(), heap_.end());
  }
  if (assigns_[v] == Value::Unassigned) heap_push(v);
}

bool CdclSolver::locked(int ci) const {
  const auto& lits = clauses_[ci].lits;
  return !lits.empty() && reasons_[lits[0].var()] == ci && lit_value(lits[0]) == Value::True;
}

// Drops the less useful half of the learnt clauses, keeping glue clauses and reasons.
void CdclSolver::reduce_learnts() {
  std::vector<int> cand;
  for (int ci = 0; ci < static_cast<int>(clauses_.size()); ++ci) {
    const ClauseData& c = clauses_[ci];
    if (c.learnt && !c.deleted && c.lbd > 2 && c.lits.size() > 2 && !locked(ci)) cand.push_back(ci);
  }
  std::sort(cand.begin(), cand.end(), [&](int a, int b) {
    if (clauses_[a].lbd != clauses_[b].lbd) return clauses_[a].lbd > clauses_[b].lbd;
    return clauses_[a].lits.size() > clauses_[b].lits.size();
  });
  for (std::size_t k = 0; k < cand.size() / 2; ++k) {
    ClauseData& c = clauses_[cand[k]];
    c.deleted = true;
    std::vector<Lit>().swap(c.lits);
    --num_learnts_;
  }
  max_learnts_ += max_learnts_ / 10;
}

// Removes literals implied by the rest of the clause through their reason.
void CdclSolver::minimize(std::vector<Lit>& learnt) {
  const std::vector<Lit> all = learnt;
  for (Lit l : all) seen_[l.var()] = 1;
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    const int r = reasons_[learnt[i].var()];
    bool redundant = r != kNone;
    if (redundant)
      for (Lit q : clauses_[r].lits)
        if (q.var() != learnt[i].var() && !seen_[q.var()] && levels_[q.var()] > 0) {
          redundant = false;
          break;
        }
    if (!redundant) learnt[j++] = learnt[i];
  }
  for (Lit l : all) seen_[l.var()] = 0;
  learnt.resize(j);
}

Var CdclSolver::pick_branch() {
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end());
    const auto [act, v] = heap_.back();
    heap_.pop_back();
    if (assigns_[v] == Value::Unassigned && act == activity_[v]) return v;
  }
  // Stale entries exhausted; fall back to a scan.
  for (Var v = 1; v <= num_vars_; ++v)
    if (assigns_[v] == Value::Unassigned) return v;
  return 0;
}

std::vector<Lit> CdclSolver::analyze(int conflict, int& backjump) {
  std::vector<Lit> learnt{Lit()};
  auto& seen = seen_;
  int pending = 0;
  Lit p;
  int idx = static_cast<int>(trail_.size()) - 1;
  int ci = conflict;
  do {
    for (Lit q : clauses_[ci].lits) {
      if (p != Lit() && q == p) continue;
      const Var v = q.var();
      if (seen[v] || levels_[v] == 0) continue;
      seen[v] = 1;
      bump(v);
      if (levels_[v] == level())
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen[trail_[idx].var()]) --idx;
    p = trail_[idx--];
    ci = reasons_[p.var()];
    seen[p.var()] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = ~p;
  for (std::size_t i = 1; i < learnt.size(); ++i) seen[learnt[i].var()] = 0;
  minimize(learnt);

  backjump = 0;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (levels_[learnt[i].var()] > levels_[learnt[best].var()]) best = i;
    std::swap(learnt[1], learnt[best]);
    backjump = levels_[learnt[1].var()];
  }
  act_inc_ /= 0.95;
  return learnt;
}

void CdclSolver::ancestry(std::vector<Var> start, std::vector<Lit>& decisions, std::vector<int>* clauses) {
  std::vector<bool> seen(num_vars_ + 1, false);
  while (!start.empty()) {
    const Var v = start.back();
    start.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    const int r = reasons_[v];
    if (r == kNone) {
      if (levels_[v] > 0) decisions.push_back(assigns_[v] == Value::True ? Lit::pos(v) : Lit::neg(v));
      continue;
    }
    if (clauses && clauses_[r].input_id != kNone) clauses->push_back(clauses_[r].input_id);
    for (Lit q : clauses_[r].lits)
      if (q.var() != v) start.push_back(q.var());
  }
}

std::vector<Lit> CdclSolver::analyze_final(Lit falsified) {
  std::vector<Lit> decisions;
  ancestry({falsified.var()}, decisions, nullptr);
  return decisions;
}

std::vector<std::size_t> CdclSolver::to_core(std::span<const Lit> assumptions,
                                             const std::vector<Lit>& lits) const {
  std::unordered_map<int, std::size_t> first;
  for (std::size_t i = 0; i < assumptions.size(); ++i) first.emplace(assumptions[i].dimacs(), i);
  std::vector<std::size_t> core;
  for (Lit l : lits)
    if (auto it = first.find(l.dimacs()); it != first.end()) core.push_back(it->second);
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
  return core;
}

SatResult CdclSolver::solve(std::span<const Lit> assumptions, const Budget& budget) {
  for (Lit a : assumptions) ensure_vars(a.var());
  call_props_ = 0;
  SatResult res;
  auto finish = [&](SatStatus s) {
    res.status = s;
    res.propagations = call_props_;
    backtrack(0);
    return res;
  };
  if (root_conflict_ || propagate() != kNone) {
    root_conflict_ = true;
    return finish(SatStatus::Unsat);
  }

  int restarts = 0;
  std::uint64_t conflicts_left = static_cast<std::uint64_t>(luby(2, restarts) * 100);
  for (;;) {
    const int conflict = propagate();
    if (conflict != kNone) {
      if (level() == 0) {
        root_conflict_ = true;
        return finish(SatStatus::Unsat);
      }
      int backjump = 0;
      std::vector<Lit> learnt = analyze(conflict, backjump);
      backtrack(backjump);
      const int ci = static_cast<int>(clauses_.size());
      std::vector<int> lvls;
      for (Lit l : learnt) lvls.push_back(levels_[l.var()]);
      std::sort(lvls.begin(), lvls.end());
      const int lbd = static_cast<int>(std::unique(lvls.begin(), lvls.end()) - lvls.begin());
      clauses_.push_back({learnt, kNone, true, false, lbd});
      ++num_learnts_;
      if (learnt.size() > 1) attach(ci);
      enqueue(learnt[0], ci);
      if (num_learnts_ >= max_learnts_) reduce_learnts();
      if (conflicts_left > 0) --conflicts_left;
      continue;
    }
    if (budget.expired(call_props_)) return finish(SatStatus::Unknown);
    if (conflicts_left == 0) {
      backtrack(0);
      conflicts_left = static_cast<std::uint64_t>(luby(2, ++restarts) * 100);
      continue;
    }

    Lit next;
    while (level() < static_cast<int>(assumptions.size())) {
      const Lit a = assumptions[level()];
      const Value v = lit_value(a);
      if (v == Value::True) {
        new_level();
      } else if (v == Value::False) {
        std::vector<Lit> cause = analyze_final(a);
        cause.push_back(a);
        res.core = to_core(assumptions, cause);
        return finish(SatStatus::Unsat);
      } else {
        next = a;
        break;
      }
    }
    if (next == Lit()) {
      const Var v = pick_branch();
      if (v == 0) {
        res.model = Assignment(num_vars_);
        for (Var x = 1; x <= num_vars_; ++x) res.model.set(x, assigns_[x] == Value::True);
        return finish(SatStatus::Sat);
      }
      next = phase_[v] ? Lit::pos(v) : Lit::neg(v);
    }
    new_level();
    enqueue(next, kNone);
  }
}

UpResult CdclSolver::propagate_only(std::span<const Lit> assumptions) {
  for (Lit a : assumptions) ensure_vars(a.var());
  call_props_ = 0;
  UpResult out;
  auto conflict_from = [&](std::vector<Var> start, const std::vector<int>& extra_clauses) {
    std::vector<Lit> decisions;
    out.conflict = true;
    out.clauses = extra_clauses;
    ancestry(std::move(start), decisions, &out.clauses);
    std::sort(out.clauses.begin(), out.clauses.end());
    out.clauses.erase(std::unique(out.clauses.begin(), out.clauses.end()), out.clauses.end());
    return decisions;
  };

  int ci = root_conflict_ ? kNone : propagate();
  if (root_conflict_) {
    out.conflict = true;
  } else if (ci != kNone) {
    root_conflict_ = true;
    std::vector<Var> start;
    for (Lit q : clauses_[ci].lits) start.push_back(q.var());
    std::vector<int> first;
    if (clauses_[ci].input_id != kNone) first.push_back(clauses_[ci].input_id);
    conflict_from(std::move(start), first);
  } else {
    for (std::size_t i = 0; i < assumptions.size(); ++i) {
      const Lit a = assumptions[i];
      const Value v = lit_value(a);
      if (v == Value::True) continue;
      if (v == Value::False) {
        std::vector<Lit> decisions = conflict_from({a.var()}, {});
        decisions.push_back(a);
        out.core = to_core(assumptions, decisions);
        break;
      }
      new_level();
      enqueue(a, kNone);
      ci = propagate();
      if (ci != kNone) {
        std::vector<Var> start;
        for (Lit q : clauses_[ci].lits) start.push_back(q.var());
        std::vector<int> first;
        if (clauses_[ci].input_id != kNone) first.push_back(clauses_[ci].input_id);
        out.core = to_core(assumptions, conflict_from(std::move(start), first));
        break;
      }
    }
  }
  out.propagations = call_props_;
  backtrack(0);
  return out;
}

}  // namespace hornmax
