#include "hornmax/formula.hpp"

#include <algorithm>
#include <numeric>

namespace hornmax {

std::ostream& operator<<(std::ostream& os, Lit l) { return os << l.dimacs(); }

std::ostream& operator<<(std::ostream& os, Weight w) {
  if (w.is_top()) return os << "TOP";
  return os << w.value();
}

Clause clause_of(std::initializer_list<int> dimacs) {
  Clause c;
  for (int d : dimacs) c.lits.emplace_back(d);
  return c;
}

Clause normalized(const Clause& c) {
  Clause out = c;
  std::sort(out.lits.begin(), out.lits.end());
  out.lits.erase(std::unique(out.lits.begin(), out.lits.end()), out.lits.end());
  return out;
}

bool is_tautology(const Clause& c) {
  Clause n = normalized(c);
  for (std::size_t i = 1; i < n.lits.size(); ++i)
    if (n.lits[i].var() == n.lits[i - 1].var()) return true;
  return false;
}

std::size_t positive_count(const Clause& c) {
  return static_cast<std::size_t>(
      std::count_if(c.lits.begin(), c.lits.end(), [](Lit l) { return l.positive(); }));
}

bool is_horn(const Clause& c) { return positive_count(normalized(c)) <= 1; }

Var max_var(const Clause& c) {
  Var m = 0;
  for (Lit l : c.lits) m = std::max(m, l.var());
  return m;
}

void CnfFormula::validate() const {
  if (num_vars < 0) throw Error("negative variable count");
  for (const Clause& c : clauses)
    for (Lit l : c.lits)
      if (l.dimacs() == 0 || l.var() > num_vars)
        throw Error("literal " + std::to_string(l.dimacs()) + " outside 1.." +
                    std::to_string(num_vars));
}

bool is_horn_formula(std::span<const Clause> clauses) {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return is_horn(c); });
}

bool is_horn_formula(const CnfFormula& f) { return is_horn_formula(f.clauses); }

Weight ominus(Weight u, Weight w) {
  if (u.is_top()) return Weight::top();
  if (w.is_top() || w.value() > u.value()) throw Error("weight subtraction underflow");
  return Weight(u.value() - w.value());
}

std::uint64_t WcnfFormula::total_soft_weight() const {
  return std::accumulate(soft.begin(), soft.end(), std::uint64_t{0},
                         [](std::uint64_t s, const SoftClause& c) { return s + c.weight; });
}

bool WcnfFormula::unit_weights() const {
  return std::all_of(soft.begin(), soft.end(), [](const SoftClause& s) { return s.weight == 1; });
}

void WcnfFormula::validate() const {
  CnfFormula probe{num_vars, hard};
  probe.validate();
  for (const SoftClause& s : soft) {
    if (s.weight == 0) throw Error("soft clause with weight 0");
    for (Lit l : s.clause.lits)
      if (l.dimacs() == 0 || l.var() > num_vars)
        throw Error("soft literal " + std::to_string(l.dimacs()) + " out of range");
  }
}

Value Assignment::value(Lit l) const {
  Value v = values_.at(l.var());
  if (v == Value::Unassigned || l.positive()) return v;
  return v == Value::True ? Value::False : Value::True;
}

bool Assignment::is_total() const {
  return std::none_of(values_.begin() + 1, values_.end(),
                      [](Value v) { return v == Value::Unassigned; });
}

Assignment Assignment::from_bits(int num_vars, std::uint64_t bits) {
  Assignment a(num_vars);
  for (Var v = 1; v <= num_vars; ++v) a.set(v, (bits >> (v - 1)) & 1U);
  return a;
}

ClauseStatus eval_clause(const Clause& c, const Assignment& a) {
  bool open = false;
  for (Lit l : c.lits) {
    Value v = a.value(l);
    if (v == Value::True) return ClauseStatus::Satisfied;
    if (v == Value::Unassigned) open = true;
  }
  return open ? ClauseStatus::Undetermined : ClauseStatus::Falsified;
}

bool satisfies(const Assignment& a, std::span<const Clause> clauses) {
  return std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) {
    return eval_clause(c, a) == ClauseStatus::Satisfied;
  });
}

bool satisfies(const Assignment& a, const CnfFormula& f) { return satisfies(a, f.clauses); }

std::optional<std::uint64_t> cost(const WcnfFormula& f, const Assignment& a) {
  if (a.num_vars() < f.num_vars) throw Error("assignment does not cover the formula");
  for (Var v = 1; v <= f.num_vars; ++v)
    if (a.get(v) == Value::Unassigned) throw Error("cost requires a total assignment");
  for (const Clause& c : f.hard)
    if (eval_clause(c, a) == ClauseStatus::Falsified) return std::nullopt;
  std::uint64_t total = 0;
  for (const SoftClause& s : f.soft)
    if (eval_clause(s.clause, a) == ClauseStatus::Falsified) total += s.weight;
  return total;
}

}  // namespace hornmax
