#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hornmax/formula.hpp"

namespace hornmax {

/// Raised by decode when an assignment carries no witness for the original formula.
class NoWitness : public Error {
 public:
  using Error::Error;
};

/// How one original variable is represented in the Horn instance.
struct Rail {
  enum class Kind { Dual, Single };
  Kind kind = Kind::Dual;
  Var p = 0;  // dual: true-rail; single: the variable itself
  Var n = 0;  // dual: false-rail; single: unused

  bool operator==(const Rail&) const = default;
};

class DualRailMap {
 public:
  DualRailMap() = default;
  explicit DualRailMap(int original_vars) : rails_(original_vars + 1) {}

  int original_vars() const { return static_cast<int>(rails_.size()) - 1; }
  const Rail& rail(Var x) const { return rails_.at(x); }
  void set(Var x, Rail r) { rails_.at(x) = r; }

  /// Image of an original literal: x -> not n, not x -> not p for dual rails; identity for single.
  Lit map_literal(Lit l) const;
  std::size_t dual_count() const;

  bool operator==(const DualRailMap&) const = default;

 private:
  std::vector<Rail> rails_;
};

struct HencResult {
  WcnfFormula wcnf;
  DualRailMap map;
  /// The original formula is satisfiable iff the minimum cost equals `target` falsified
  /// soft clauses (equivalently, `target` soft clauses can be satisfied together with all hard).
  std::uint64_t target = 0;
  std::vector<std::size_t> p_clause_ids;  // positions of (not p or not n) in wcnf.hard
  bool p_dropped = false;
};

/// Dual-rail Horn encoding: every variable gets p/n rails, the hard set holds
/// (not p_i or not n_i) followed by the rewritten clauses, and the soft set is (n_1..n_N, p_1..p_N).
/// Rail numbering is p_i = 2i-1, n_i = 2i.
HencResult henc(const CnfFormula& f);

/// Removes the (not p_i or not n_i) clauses; the result is a relaxation of `h`.
HencResult drop_p(const HencResult& h);

/// Re-adds the (not p_i or not n_i) clauses removed by drop_p.
HencResult restore_p(const HencResult& h);

/// Variable-reduced encoding: variables whose positive occurrences in non-Horn clauses can be
/// kept (at most one per clause) stay single-rail, chosen greedily; all other variables are
/// dual-rail. Hard clauses stay Horn and the target is the number of dual-rail variables.
HencResult henc_reduced(const CnfFormula& f);

/// Dual-rail image of an assignment to the original variables.
Assignment encode_assignment(const HencResult& h, const Assignment& original);

/// Recovers an assignment to the original variables. Throws NoWitness if `a` satisfies fewer
/// than `target` soft clauses or does not yield a consistent witness; throws Error if a hard
/// clause is falsified.
Assignment decode(const HencResult& h, const Assignment& a);

/// Comment lines recording the target, rail map and P-clause status.
std::vector<std::string> sidecar_comments(const HencResult& h);

/// Rebuilds the encoding metadata of a WCNF written with sidecar_comments; nullopt if absent.
std::optional<HencResult> from_sidecar(WcnfFormula wcnf, const std::vector<std::string>& comments);

}  // namespace hornmax
