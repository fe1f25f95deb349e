#include "hornmax/msu3.hpp"

#include <algorithm>
#include <memory>

#include "hornmax/cardinality.hpp"
#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"

namespace hornmax::msu3 {

namespace {

struct Outcome {
  MaxSatStatus status = MaxSatStatus::Optimal;
  std::uint64_t cost = 0;
  Assignment model;  // local
};

void require_unit_weights(const WcnfFormula& f) {
  if (!f.unit_weights()) throw Error("msu3 supports unit soft weights only");
}

// MSU3 on one (sub)instance. Trace entries use global soft ids and global lower bounds.
Outcome run(const WcnfFormula& f, const std::vector<std::size_t>& soft_ids, std::size_t component,
            std::uint64_t lb_offset, BudgetTracker& budget, MaxSatResult& acc) {
  const Selectors sel = make_selectors(f);
  std::vector<Clause> hard = f.hard;
  hard.insert(hard.end(), sel.extra_hard.begin(), sel.extra_hard.end());
  VarPool pool(sel.num_vars);
  CoreOracle oracle(sel.num_vars, hard);

  const std::size_t n = f.soft.size();
  std::vector<bool> relaxed(n, false);
  std::uint64_t lb = 0;
  Outcome out;

  auto record = [&](const char* phase, const std::vector<std::size_t>& local_core, std::uint64_t props, int bound) {
    TraceRecord r;
    r.phase = phase;
    r.component = component;
    for (std::size_t i : local_core) r.core.push_back(soft_ids[i]);
    std::sort(r.core.begin(), r.core.end());
    r.propagations = props;
    r.lb = lb_offset + lb;
    r.bound = bound;
    acc.trace.push_back(std::move(r));
  };

  // Disjoint cores over the untouched softs.
  std::vector<bool> in_core(n, false);
  CoreOracle::Answer last;
  for (;;) {
    std::vector<Lit> assumptions;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_core[i]) {
        assumptions.push_back(sel.lits[i]);
        ids.push_back(i);
      }
    last = oracle.check(assumptions, budget);
    if (last.status == SatStatus::Unknown) {
      out.status = MaxSatStatus::BudgetExceeded;
      out.cost = lb;
      return out;
    }
    if (last.status == SatStatus::Sat) break;
    if (last.core.empty()) {
      out.status = MaxSatStatus::Infeasible;
      return out;
    }
    std::vector<std::size_t> core;
    for (std::size_t a : last.core) {
      core.push_back(ids[a]);
      in_core[ids[a]] = true;
    }
    ++lb;
    record("disjoint", core, last.propagations, -1);
    if (budget.exhausted()) {
      out.status = MaxSatStatus::BudgetExceeded;
      out.cost = lb;
      return out;
    }
  }

  if (lb > 0) {
    std::vector<Lit> relax_lits;
    auto relax = [&](std::size_t i) {
      const Lit r = Lit::pos(pool.fresh());
      oracle.ensure_vars(r.var());
      oracle.add(Clause{sel.lits[i], r});
      relaxed[i] = true;
      return r;
    };
    for (std::size_t i = 0; i < n; ++i)
      if (in_core[i]) relax_lits.push_back(relax(i));
    Totalizer tot(relax_lits, pool);
    auto enforce = [&] {
      for (const Clause& c : tot.enforce(static_cast<int>(lb))) oracle.add(c);
      oracle.ensure_vars(pool.num_vars());
    };
    enforce();

    for (;;) {
      std::vector<Lit> assumptions;
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < n; ++i)
        if (!relaxed[i]) {
          assumptions.push_back(sel.lits[i]);
          ids.push_back(i);
        }
      const std::optional<Lit> bound = tot.at_most_assumption(static_cast<int>(lb));
      if (bound) assumptions.push_back(*bound);

      last = oracle.check(assumptions, budget);
      if (last.status == SatStatus::Unknown) {
        out.status = MaxSatStatus::BudgetExceeded;
        out.cost = lb;
        return out;
      }
      if (last.status == SatStatus::Sat) break;

      std::vector<std::size_t> core;
      bool uses_bound = false;
      for (std::size_t a : last.core) {
        if (a < ids.size())
          core.push_back(ids[a]);
        else
          uses_bound = true;
      }
      if (core.empty() && !uses_bound) {
        out.status = MaxSatStatus::Infeasible;
        return out;
      }
      std::vector<Lit> fresh;
      for (std::size_t i : core) fresh.push_back(relax(i));
      for (const Clause& c : tot.add_inputs(fresh)) oracle.add(c);
      ++lb;
      enforce();
      record(core.empty() ? "bound" : "core", core, last.propagations, static_cast<int>(lb));
      if (budget.exhausted()) {
        out.status = MaxSatStatus::BudgetExceeded;
        out.cost = lb;
        return out;
      }
    }
  }

  out.model = Assignment(f.num_vars);
  for (Var v = 1; v <= f.num_vars; ++v) out.model.set(v, last.model.is_true(v));
  const auto c = cost(f, out.model);
  if (!c || *c != lb) throw Error("msu3: model cost does not match the lower bound");
  out.cost = lb;
  return out;
}

MaxSatResult combine(const WcnfFormula& f, const std::vector<SubInstance>& parts,
                     const std::vector<int>& block_of_part, std::size_t num_blocks, const SolveOptions& opt) {
  MaxSatResult res;
  res.block_costs.assign(num_blocks, 0);
  res.model = Assignment(f.num_vars);
  for (Var v = 1; v <= f.num_vars; ++v) res.model.set(v, false);
  BudgetTracker budget(opt.budget);
  std::uint64_t total = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    Outcome o = run(parts[p].formula, parts[p].soft_ids, p, total, budget, res);
    if (o.status != MaxSatStatus::Optimal) {
      res.status = o.status;
      res.lower_bound = total + o.cost;
      res.cost = res.lower_bound;
      res.model = Assignment();
      res.propagations = budget.used();
      return res;
    }
    total += o.cost;
    if (block_of_part[p] >= 0) res.block_costs[block_of_part[p]] += o.cost;
    lift_model(parts[p], o.model, res.model);
  }
  res.status = MaxSatStatus::Optimal;
  res.cost = res.lower_bound = total;
  res.propagations = budget.used();
  return res;
}

}  // namespace

MaxSatResult solve(const WcnfFormula& f, const SolveOptions& opt) {
  f.validate();
  require_unit_weights(f);
  std::vector<SubInstance> parts;
  if (opt.split_components) {
    parts = split_components(f);
  } else {
    SubInstance whole;
    whole.formula = f;
    whole.to_global.resize(f.num_vars + 1);
    for (Var v = 0; v <= f.num_vars; ++v) whole.to_global[v] = v;
    whole.soft_ids.resize(f.soft.size());
    for (std::size_t i = 0; i < f.soft.size(); ++i) whole.soft_ids[i] = i;
    parts.push_back(std::move(whole));
  }
  MaxSatResult res = combine(f, parts, std::vector<int>(parts.size(), -1), 0, opt);
  res.block_costs.clear();
  return res;
}

MaxSatResult solve_partitioned(const WcnfFormula& f, const std::vector<std::vector<std::size_t>>& blocks,
                               const SolveOptions& opt) {
  f.validate();
  require_unit_weights(f);
  std::vector<int> block_of_soft(f.soft.size(), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t id : blocks[b]) {
      if (id >= f.soft.size()) throw Error("partition refers to unknown soft clause " + std::to_string(id));
      if (block_of_soft[id] >= 0) throw Error("soft clause " + std::to_string(id) + " is in two blocks");
      block_of_soft[id] = static_cast<int>(b);
    }
  for (std::size_t id = 0; id < f.soft.size(); ++id)
    if (block_of_soft[id] < 0) throw Error("partition does not cover soft clause " + std::to_string(id));

  std::vector<SubInstance> parts = split_components(f);
  std::vector<int> block_of_part(parts.size(), -1);
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (std::size_t id : parts[p].soft_ids) {
      const int b = block_of_soft[id];
      if (block_of_part[p] >= 0 && block_of_part[p] != b)
        throw Error("blocks " + std::to_string(block_of_part[p]) + " and " + std::to_string(b) +
                    " share variables through the hard clauses");
      block_of_part[p] = b;
    }
  return combine(f, parts, block_of_part, blocks.size(), opt);
}

CertReport certify_php_cg(int m, bool keep_p) {
  if (m < 1) throw Error("certify needs at least one hole");
  const gen::PhpInstance php = gen::gen_php({m, gen::AtMost1::Pairwise});
  HencResult h = henc(php.formula);
  if (!keep_p) h = drop_p(h);

  std::vector<bool> is_p(h.wcnf.hard.size(), false);
  for (std::size_t id : h.p_clause_ids) is_p[id] = true;

  CdclSolver s(h.wcnf.num_vars);
  for (const Clause& c : h.wcnf.hard) s.add_clause(c);
  VarPool pool(h.wcnf.num_vars);

  auto p_of = [&](int i, int j) { return Lit::pos(h.map.rail(php.x(i, j)).p); };
  auto n_of = [&](int i, int j) { return Lit::pos(h.map.rail(php.x(i, j)).n); };

  CertReport rep;
  rep.holes = m;
  rep.p_clauses = keep_p;
  rep.notes = "each soft (n_il) of pigeon i is relaxed with its own r_il";

  auto check = [&](char constraint, int index, int iteration, const std::vector<Lit>& assumptions) {
    UpResult up = s.propagate_only(assumptions);
    const std::string where = std::string(1, constraint) + "_" + std::to_string(index) + " iteration " +
                              std::to_string(iteration);
    if (!up.conflict) throw CertificationFailure("no propagation conflict at " + where);
    if (up.core.empty()) throw CertificationFailure("conflict without assumptions at " + where);
    for (int id : up.clauses)
      if (id < static_cast<int>(is_p.size()) && is_p[id])
        throw CertificationFailure("conflict at " + where + " depends on a P clause");
    rep.per_phase.push_back({constraint, index, iteration, up.core.size(), up.propagations});
    rep.up_steps += up.propagations;
  };
  auto add_all = [&](const std::vector<Clause>& cs) {
    for (const Clause& c : cs) s.add_clause(c);
  };

  // Pigeon constraints: all n literals of pigeon i together falsify its rewritten clause.
  for (int i = 1; i <= m + 1; ++i) {
    std::vector<Lit> assumptions;
    for (int l = 1; l <= m; ++l) assumptions.push_back(n_of(i, l));
    check('L', i, 1, assumptions);
    ++rep.lb_pigeons;
    std::vector<Lit> rs;
    for (int l = 1; l <= m; ++l) {
      const Lit r = Lit::pos(pool.fresh());
      s.add_clause(Clause{n_of(i, l), r});
      rs.push_back(r);
    }
    Totalizer tot(rs, pool);
    add_all(tot.enforce(1));
  }

  // Hole constraints: pigeons 1 and 2 first, then one more pigeon per iteration against
  // AtMost(k-1) over the relaxation literals of the pigeons already seen.
  for (int j = 1; j <= m; ++j) {
    check('M', j, 1, {p_of(1, j), p_of(2, j)});
    ++rep.lb_holes;
    std::vector<Lit> rs;
    for (int i = 1; i <= 2; ++i) {
      const Lit r = Lit::pos(pool.fresh());
      s.add_clause(Clause{p_of(i, j), r});
      rs.push_back(r);
    }
    for (int k = 2; k <= m; ++k) {
      const Lit act = Lit::pos(pool.fresh());
      Totalizer tot(rs, pool, act);
      add_all(tot.enforce(k - 1));
      const std::optional<Lit> bound = tot.at_most_assumption(k - 1);
      if (!bound) throw CertificationFailure("vacuous bound at M_" + std::to_string(j));
      check('M', j, k, {act, *bound, p_of(k + 1, j)});
      ++rep.lb_holes;
      const Lit r = Lit::pos(pool.fresh());
      s.add_clause(Clause{p_of(k + 1, j), r});
      rs.push_back(r);
    }
  }

  rep.lb = rep.lb_pigeons + rep.lb_holes;
  const std::uint64_t expected = static_cast<std::uint64_t>(m) * (m + 1) + 1;
  if (rep.lb != expected)
    throw CertificationFailure("lower bound " + std::to_string(rep.lb) + " differs from " + std::to_string(expected));
  return rep;
}

}  // namespace hornmax::msu3
