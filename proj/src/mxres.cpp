#include "hornmax/mxres.hpp"

#include <algorithm>
#include <sstream>

#include "hornmax/generators.hpp"
#include "hornmax/hornenc.hpp"

namespace hornmax::mxres {

std::size_t GClause::literal_count() const {
  std::size_t n = lits.size();
  for (const Clause& b : negated) n += b.size();
  return n;
}

std::string to_string(const GClause& c) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (Lit l : c.lits) {
    os << (first ? "" : " v ") << l;
    first = false;
  }
  for (const Clause& b : c.negated) {
    os << (first ? "" : " v ") << "-(";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? " v " : "") << b.lits[i];
    os << ')';
    first = false;
  }
  if (first) os << "empty";
  os << ')';
  return os.str();
}

bool falsified(const GClause& c, const Assignment& a) {
  for (Lit l : c.lits)
    if (a.value(l) != Value::False) return false;
  for (const Clause& b : c.negated)
    if (eval_clause(b, a) != ClauseStatus::Satisfied) return false;
  return true;
}

std::string WStore::key(const std::vector<Lit>& lits) {
  std::string k;
  for (Lit l : lits) {
    k += std::to_string(l.dimacs());
    k += ' ';
  }
  return k;
}

std::size_t WStore::add(GClause c, Weight w, int step) {
  if (w.is_zero()) throw Error("zero weight in clause store");
  const std::size_t id = entries_.size();
  if (c.plain()) plain_index_[key(c.lits)].push_back(id);
  entries_.push_back({std::move(c), w, false, step});
  return id;
}

int WStore::num_vars() const {
  int n = 0;
  for (const Entry& e : entries_) {
    for (Lit l : e.clause.lits) n = std::max(n, l.var());
    for (const Clause& b : e.clause.negated) n = std::max(n, max_var(b));
  }
  return n;
}

std::optional<std::size_t> WStore::find(const Clause& c, std::optional<Weight> w) const {
  auto it = plain_index_.find(key(normalized(c).lits));
  if (it == plain_index_.end()) return std::nullopt;
  for (auto id = it->second.rbegin(); id != it->second.rend(); ++id) {
    const Entry& e = entries_[*id];
    if (!e.consumed && (!w || e.weight == *w)) return *id;
  }
  return std::nullopt;
}

std::uint64_t WStore::empty_soft_weight() const {
  std::uint64_t total = 0;
  for (const Entry& e : entries_)
    if (!e.consumed && e.step >= 0 && e.clause.is_empty() && !e.weight.is_top()) total += e.weight.value();
  return total;
}

std::optional<std::uint64_t> WStore::cost(const Assignment& a) const {
  std::uint64_t total = 0;
  for (const Entry& e : entries_) {
    if (e.consumed || !falsified(e.clause, a)) continue;
    if (e.weight.is_top()) return std::nullopt;
    total += e.weight.value();
  }
  return total;
}

void WStore::consume(std::size_t id) {
  Entry& e = entries_.at(id);
  if (e.consumed) throw ReuseError("clause " + std::to_string(id) + " was already resolved");
  e.consumed = true;
}

namespace {

bool contains(const std::vector<Lit>& lits, Lit l) { return std::find(lits.begin(), lits.end(), l) != lits.end(); }

std::vector<Lit> without(const std::vector<Lit>& lits, Lit l) {
  std::vector<Lit> out;
  for (Lit q : lits)
    if (q != l) out.push_back(q);
  return out;
}

std::vector<Lit> join(std::vector<Lit> a, const std::vector<Lit>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalized(Clause(std::move(a))).lits;
}

struct Emitter {
  WStore& store;
  StepRecord& rec;
  int step;

  void plain(std::vector<Lit> lits, Weight w) {
    Clause c = normalized(Clause(std::move(lits)));
    if (w.is_zero() || is_tautology(c)) return;
    rec.literal_work += c.size();
    rec.derived.push_back(store.add(GClause{std::move(c.lits), {}}, w, step));
  }

  // base v not(neg)
  void compensation(const std::vector<Lit>& base_in, const std::vector<Lit>& neg, Weight w, bool clausal) {
    const Clause base = normalized(Clause(base_in));
    if (is_tautology(base)) return;
    if (clausal) {
      std::vector<Lit> prefix = base.lits;
      for (Lit b : neg) {
        std::vector<Lit> lits = prefix;
        lits.push_back(~b);
        plain(std::move(lits), w);
        prefix.push_back(b);
      }
      return;
    }
    // Only assignments falsifying the base matter: drop parts of neg that are false there,
    // and collapse to the base when neg is certainly true there.
    std::vector<Lit> rest;
    for (Lit b : neg) {
      if (contains(base.lits, b)) continue;
      if (contains(base.lits, ~b)) return plain(base.lits, w);
      rest.push_back(b);
    }
    const Clause nb = normalized(Clause(rest));
    if (nb.empty()) return;
    if (is_tautology(nb)) return plain(base.lits, w);
    if (nb.size() == 1) {
      std::vector<Lit> lits = base.lits;
      lits.push_back(~nb.lits[0]);
      return plain(std::move(lits), w);
    }
    rec.literal_work += base.size() + nb.size();
    rec.derived.push_back(store.add(GClause{base.lits, {nb}}, w, step));
  }
};

}  // namespace

StepRecord mxres_step(WStore& store, std::size_t left, std::size_t right, Var x, bool clausal) {
  if (left >= store.size() || right >= store.size()) throw Error("unknown clause id");
  if (left == right) throw ReuseError("a clause cannot be resolved with itself");
  const Entry& l = store.at(left);
  const Entry& r = store.at(right);
  if (l.consumed) throw ReuseError("clause " + std::to_string(left) + " was already resolved");
  if (r.consumed) throw ReuseError("clause " + std::to_string(right) + " was already resolved");
  if (!l.clause.plain() || !r.clause.plain()) throw Error("premises must be ordinary clauses");
  if (!contains(l.clause.lits, Lit::pos(x)) || !contains(r.clause.lits, Lit::neg(x)))
    throw PivotError("pivot " + std::to_string(x) + " must occur positively in the first premise and negatively in the second");

  const std::vector<Lit> a = without(l.clause.lits, Lit::pos(x));
  const std::vector<Lit> b = without(r.clause.lits, Lit::neg(x));
  const Weight u = l.weight, w = r.weight;
  const Weight m = std::min(u, w);

  StepRecord rec;
  rec.left = left;
  rec.right = right;
  rec.pivot = x;
  const int step_id = static_cast<int>(store.size());
  store.consume(left);
  store.consume(right);

  Emitter emit{store, rec, step_id};
  emit.plain(join(a, b), m);
  emit.plain(join({Lit::pos(x)}, a), ominus(u, m));
  emit.plain(join({Lit::neg(x)}, b), ominus(w, m));
  emit.compensation(join({Lit::pos(x)}, a), b, m, clausal);
  emit.compensation(join({Lit::neg(x)}, b), a, m, clausal);
  return rec;
}

bool check_cost_preservation(const WStore& before, const WStore& after, int num_vars) {
  if (num_vars > 24) throw Error("exhaustive check limited to 24 variables");
  const std::uint64_t total = std::uint64_t{1} << num_vars;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    const Assignment a = Assignment::from_bits(num_vars, bits);
    if (before.cost(a) != after.cost(a)) return false;
  }
  return true;
}

namespace {

class Executor {
 public:
  Executor(WStore& store, MrReport& rep, bool clausal, const StepObserver& obs)
      : store_(store), rep_(rep), clausal_(clausal), obs_(obs) {}

  void step(char constraint, int index, int phase, int step, const Clause& left, Weight lw, const Clause& right,
            Weight rw, Var pivot, const Clause& expect) {
    const auto where = [&] {
      return std::string(1, constraint) + "_" + std::to_string(index) + " phase " + std::to_string(phase) +
             " step " + std::to_string(step);
    };
    const auto lid = store_.find(left, lw);
    if (!lid) throw ScriptMismatch(where() + ": missing " + to_string(GClause{normalized(left).lits, {}}));
    const auto rid = store_.find(right, rw);
    if (!rid) throw ScriptMismatch(where() + ": missing " + to_string(GClause{normalized(right).lits, {}}));

    std::optional<WStore> before;
    if (obs_) before = store_;
    StepRecord rec = mxres_step(store_, *lid, *rid, pivot, clausal_);
    rec.constraint = constraint;
    rec.index = index;
    rec.phase = phase;
    rec.step = step;
    if (!store_.find(expect, Weight(1)))
      throw ScriptMismatch(where() + ": expected " + to_string(GClause{normalized(expect).lits, {}}) + " not derived");
    for (std::size_t id : rec.derived) {
      const Entry& e = store_.at(id);
      if (!e.clause.is_empty() || e.weight.is_top()) continue;
      rep_.empties += e.weight.value();
      (constraint == 'L' ? rep_.empties_pigeons : rep_.empties_holes) += e.weight.value();
    }
    ++rep_.steps;
    rep_.literal_work += rec.literal_work;
    if (obs_) obs_(*before, store_, rec);
    rep_.script.push_back(std::move(rec));
  }

 private:
  WStore& store_;
  MrReport& rep_;
  bool clausal_;
  const StepObserver& obs_;
};

}  // namespace

MrReport certify_php_mr(int m, bool clausal, bool keep_p, const StepObserver& observer) {
  if (m < 1) throw Error("certify needs at least one hole");
  const gen::PhpInstance php = gen::gen_php({m, gen::AtMost1::Pairwise});
  HencResult h = henc(php.formula);
  if (!keep_p) h = drop_p(h);

  WStore store;
  for (const Clause& c : h.wcnf.hard) store.add(c, Weight::top());
  for (const SoftClause& s : h.wcnf.soft) store.add(s.clause, Weight(s.weight));

  MrReport rep;
  rep.holes = m;
  rep.clausal = clausal;
  rep.p_clauses = keep_p;
  Executor ex(store, rep, clausal, observer);

  const Weight one(1), top = Weight::top();
  auto n = [&](int i, int l) { return h.map.rail(php.x(i, l)).n; };
  auto p = [&](int i, int j) { return h.map.rail(php.x(i, j)).p; };

  // Pigeon i: (n_ik) against (-n_ik v ... v -n_im) leaves (-n_i(k+1) v ... v -n_im).
  for (int i = 1; i <= m + 1; ++i) {
    for (int k = 1; k <= m; ++k) {
      Clause chain, rest;
      for (int l = k; l <= m; ++l) chain.lits.push_back(Lit::neg(n(i, l)));
      for (int l = k + 1; l <= m; ++l) rest.lits.push_back(Lit::neg(n(i, l)));
      ex.step('L', i, 1, k, Clause{Lit::pos(n(i, k))}, one, chain, k == 1 ? top : one, n(i, k), rest);
    }
  }

  // Hole j, phase l adds pigeon q = l+1.
  for (int j = 1; j <= m; ++j) {
    const Lit p1 = Lit::pos(p(1, j)), p2 = Lit::pos(p(2, j));
    ex.step('M', j, 1, 1, Clause{p1}, one, Clause{~p1, ~p2}, top, p1.var(), Clause{~p2});
    ex.step('M', j, 1, 2, Clause{p2}, one, Clause{~p2}, one, p2.var(), Clause{});
    for (int l = 2; l <= m; ++l) {
      const Lit pq = Lit::pos(p(l + 1, j));
      // Carried clause (p_1 v ... v p_l) against (-p_1 v -p_q).
      Clause carried;
      for (int s = 1; s <= l; ++s) carried.lits.push_back(Lit::pos(p(s, j)));
      auto tail = [&](int from) {
        Clause c;
        for (int s = from; s <= l; ++s) c.lits.push_back(Lit::pos(p(s, j)));
        c.lits.push_back(~pq);
        return c;
      };
      ex.step('M', j, l, 1, carried, one, Clause{Lit::neg(p(1, j)), ~pq}, top, p(1, j), tail(2));
      for (int s = 2; s <= l; ++s)
        ex.step('M', j, l, s, tail(s), one, Clause{Lit::neg(p(s, j)), ~pq}, top, p(s, j), tail(s + 1));
      ex.step('M', j, l, l + 1, Clause{pq}, one, Clause{~pq}, one, pq.var(), Clause{});
    }
  }

  const std::uint64_t expected = static_cast<std::uint64_t>(m) * (m + 1) + 1;
  if (rep.empties != expected)
    throw ScriptMismatch("derived " + std::to_string(rep.empties) + " empty clauses instead of " +
                         std::to_string(expected));
  return rep;
}

}  // namespace hornmax::mxres
