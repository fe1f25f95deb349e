#include "hornmax/ltur.hpp"

#include <algorithm>

namespace hornmax {

HornSolver::HornSolver(int num_vars, std::span<const Clause> clauses)
    : num_vars_(num_vars), occurs_negated_(num_vars + 1) {
  heads_.reserve(clauses.size());
  body_.reserve(clauses.size());
  for (const Clause& raw : clauses) {
    const Clause c = normalized(raw);
    Var head = 0;
    std::vector<Var> body;
    for (Lit l : c.lits) {
      if (l.var() < 1 || l.var() > num_vars) throw Error("literal out of range in Horn instance");
      if (l.positive()) {
        if (head != 0) throw NotHorn("clause with more than one positive literal");
        head = l.var();
      } else {
        body.push_back(l.var());
      }
    }
    literal_count_ += c.size();
    const int id = static_cast<int>(heads_.size());
    for (Var v : body) occurs_negated_[v].push_back(id);
    heads_.push_back(head);
    body_.push_back(std::move(body));
  }
}

bool HornSolver::assign_true(Var v, Reason why, std::uint64_t& props) {
  if (value_[v] == Value::True) return true;
  if (value_[v] == Value::False) {
    conflict_var_ = v;
    return false;
  }
  value_[v] = Value::True;
  reason_[v] = why;
  queue_.push_back(v);
  ++props;
  return true;
}

int HornSolver::propagate(std::uint64_t& props) {
  while (head_ < queue_.size()) {
    const Var v = queue_[head_++];
    for (int c : occurs_negated_[v]) {
      if (--missing_[c] != 0) continue;
      if (heads_[c] == 0) return c;
      if (!assign_true(heads_[c], {c, kNoReason}, props)) return c;
    }
  }
  return kNoReason;
}

void HornSolver::collect_core(int clause, Var extra, std::vector<std::size_t>& core) const {
  std::vector<bool> seen(num_vars_ + 1, false);
  std::vector<Var> stack;
  if (clause != kNoReason) stack.insert(stack.end(), body_[clause].begin(), body_[clause].end());
  if (extra != 0) {
    if (negative_assumption_[extra] != kNoReason)
      core.push_back(static_cast<std::size_t>(negative_assumption_[extra]));
  }
  while (!stack.empty()) {
    const Var v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    const Reason& r = reason_[v];
    if (r.assumption != kNoReason) {
      core.push_back(static_cast<std::size_t>(r.assumption));
    } else if (r.clause != kNoReason) {
      stack.insert(stack.end(), body_[r.clause].begin(), body_[r.clause].end());
    }
  }
  std::sort(core.begin(), core.end());
  core.erase(std::unique(core.begin(), core.end()), core.end());
}

LturOutcome HornSolver::solve(std::span<const Lit> assumptions) {
  missing_.resize(heads_.size());
  for (std::size_t c = 0; c < heads_.size(); ++c) missing_[c] = static_cast<int>(body_[c].size());
  value_.assign(num_vars_ + 1, Value::Unassigned);
  reason_.assign(num_vars_ + 1, Reason{});
  negative_assumption_.assign(num_vars_ + 1, kNoReason);
  queue_.clear();
  head_ = 0;
  conflict_var_ = 0;

  LturOutcome out;
  auto fail = [&](int clause, Var extra) {
    out.status = SatStatus::Unsat;
    collect_core(clause, extra, out.core);
    return out;
  };

  for (std::size_t c = 0; c < heads_.size(); ++c) {
    if (!body_[c].empty()) continue;
    if (heads_[c] == 0) return fail(static_cast<int>(c), 0);
    assign_true(heads_[c], {static_cast<int>(c), kNoReason}, out.propagations);
  }
  if (int c = propagate(out.propagations); c != kNoReason) return fail(c, conflict_var_);

  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    const Lit l = assumptions[i];
    const Var v = l.var();
    if (v < 1 || v > num_vars_) throw Error("assumption out of range");
    if (l.positive()) {
      if (!assign_true(v, {kNoReason, static_cast<int>(i)}, out.propagations)) {
        out.status = SatStatus::Unsat;
        out.core = {static_cast<std::size_t>(negative_assumption_[v]), i};
        std::sort(out.core.begin(), out.core.end());
        return out;
      }
    } else {
      if (value_[v] == Value::True) {
        out.status = SatStatus::Unsat;
        std::vector<std::size_t> core{i};
        // Ancestry of v: treat it as a conflict on a virtual goal clause (not v).
        const Reason& r = reason_[v];
        if (r.assumption != kNoReason) core.push_back(static_cast<std::size_t>(r.assumption));
        else if (r.clause != kNoReason) collect_core(r.clause, 0, core);
        std::sort(core.begin(), core.end());
        core.erase(std::unique(core.begin(), core.end()), core.end());
        out.core = std::move(core);
        return out;
      }
      if (value_[v] == Value::Unassigned) {
        value_[v] = Value::False;
        negative_assumption_[v] = static_cast<int>(i);
        ++out.propagations;
      }
    }
    if (int c = propagate(out.propagations); c != kNoReason) return fail(c, conflict_var_);
  }

  out.model = Assignment(num_vars_);
  for (Var v = 1; v <= num_vars_; ++v) out.model.set(v, value_[v] == Value::True);
  return out;
}

}  // namespace hornmax
