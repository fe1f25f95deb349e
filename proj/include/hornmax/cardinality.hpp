#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hornmax/formula.hpp"

namespace hornmax {

/// Monotone allocator of fresh variable indices.
class VarPool {
 public:
  explicit VarPool(int used = 0) : next_(used + 1) {}
  Var fresh() { return next_++; }
  /// Highest index handed out so far (or the initial `used`).
  int num_vars() const { return next_ - 1; }

 private:
  Var next_;
};

/// Sinz sequential counter for sum(lits) <= k. Returns the clauses; auxiliaries come from `pool`.
std::vector<Clause> encode_seqcounter(std::span<const Lit> lits, int k, VarPool& pool);

/// Incremental totalizer (upward clauses only).
///
/// Bounds are imposed through an assumption literal rather than a unit clause, so that
/// clauses emitted for a smaller bound remain valid when the bound grows. With
/// `at_most_assumption(k)` assumed, any k+1 true inputs force a conflict by unit propagation.
/// If an activation literal is given, every emitted clause carries its negation, so the
/// whole tree is inert unless the activation literal is assumed.
class Totalizer {
 public:
  Totalizer(std::span<const Lit> inputs, VarPool& pool, std::optional<Lit> activation = std::nullopt);

  /// Makes bound k expressible and returns the clauses newly required. k must not decrease.
  std::vector<Clause> enforce(int k);

  /// Adds inputs by merging a fresh subtree with the current root at the current bound.
  std::vector<Clause> add_inputs(std::span<const Lit> lits);

  /// Literal to assume for sum <= k, or nullopt when the bound is vacuous (k >= #inputs).
  std::optional<Lit> at_most_assumption(int k) const;

  int bound() const { return bound_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  const std::vector<Lit>& inputs() const { return inputs_; }

 private:
  struct Node {
    int left = -1, right = -1;
    int size = 0;
    std::vector<Lit> outputs;  // outputs[i] <=> "at least i+1 inputs true"
  };

  int build(std::span<const Lit> lits);
  void extend(int node, int cap, std::vector<Clause>& out);
  void emit(std::vector<Lit> lits, std::vector<Clause>& out) const;

  VarPool* pool_;
  std::optional<Lit> activation_;
  std::vector<Node> nodes_;
  std::vector<Lit> inputs_;
  int root_ = -1;
  int bound_ = -1;
};

}  // namespace hornmax
