#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hornmax/formula.hpp"

namespace hornmax::mxres {

/// Disjunction of literals and negated clauses: l1 v ... v lk v not(B1) v ... v not(Bj).
/// A record with no negated part is an ordinary clause.
struct GClause {
  std::vector<Lit> lits;
  std::vector<Clause> negated;

  bool plain() const { return negated.empty(); }
  bool is_empty() const { return lits.empty() && negated.empty(); }
  std::size_t literal_count() const;
  bool operator==(const GClause&) const = default;
};

std::string to_string(const GClause& c);
bool falsified(const GClause& c, const Assignment& a);

class ReuseError : public Error {
 public:
  using Error::Error;
};

class PivotError : public Error {
 public:
  using Error::Error;
};

struct Entry {
  GClause clause;
  Weight weight;
  bool consumed = false;
  int step = -1;  // step that derived it, -1 for input clauses
};

/// Weighted clause store. Identifiers are positions and never change.
class WStore {
 public:
  std::size_t add(GClause c, Weight w, int step = -1);
  std::size_t add(const Clause& c, Weight w) { return add(GClause{normalized(c).lits, {}}, w); }

  const Entry& at(std::size_t id) const { return entries_.at(id); }
  std::size_t size() const { return entries_.size(); }
  int num_vars() const;

  /// Latest unconsumed ordinary clause equal to `c` (after normalization), optionally with weight `w`.
  std::optional<std::size_t> find(const Clause& c, std::optional<Weight> w = std::nullopt) const;

  /// Derived, unconsumed empty clauses with finite weight (their total weight).
  std::uint64_t empty_soft_weight() const;

  /// Falsified weight under a total assignment; nullopt if a hard (TOP) record is falsified.
  std::optional<std::uint64_t> cost(const Assignment& a) const;

  void consume(std::size_t id);

 private:
  static std::string key(const std::vector<Lit>& lits);
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::vector<std::size_t>> plain_index_;
};

struct StepRecord {
  std::size_t left = 0, right = 0;  // premises: left holds x, right holds not x
  Var pivot = 0;
  std::vector<std::size_t> derived;
  std::uint64_t literal_work = 0;   // literals written into derived records
  // Position in a scripted derivation (unused for free-standing steps).
  char constraint = '-';
  int index = 0, phase = 0, step = 0;
};

/// One MaxSAT resolution step. With m = min(u, w) it derives (A v B, m), (x v A, u - m),
/// (not x v B, w - m), (x v A v not B, m) and (not x v not A v B, m), dropping zero weights and
/// tautologies; both premises are consumed. In clausal mode every not(B) part is expanded into
/// (... v not b1), (... v b1 v not b2), ...; otherwise it is stored as one record.
StepRecord mxres_step(WStore& store, std::size_t left, std::size_t right, Var pivot, bool clausal = false);

/// True iff both stores assign every total assignment over num_vars the same cost
/// (hard violation counts as its own value).
bool check_cost_preservation(const WStore& before, const WStore& after, int num_vars);

class ScriptMismatch : public Error {
 public:
  using Error::Error;
};

struct MrReport {
  int holes = 0;
  bool clausal = false;
  bool p_clauses = false;
  std::uint64_t empties = 0;
  std::uint64_t empties_pigeons = 0;
  std::uint64_t empties_holes = 0;
  std::uint64_t steps = 0;
  std::uint64_t literal_work = 0;
  bool no_reuse = true;
  std::vector<StepRecord> script;
};

using StepObserver = std::function<void(const WStore& before, const WStore& after, const StepRecord&)>;

/// Scripted derivation on the Horn encoding of pairwise PHP: per pigeon a chain of m steps
/// ending in an empty clause, per hole m phases where phase l resolves the carried clause
/// (p_1j v ... v p_lj) against the pairwise clauses of pigeon l+1 and ends with an empty
/// clause. Throws ScriptMismatch when an expected clause is missing.
MrReport certify_php_mr(int holes, bool clausal = false, bool keep_p = false, const StepObserver& observer = {});

}  // namespace hornmax::mxres
