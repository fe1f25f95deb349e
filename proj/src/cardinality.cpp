#include "hornmax/cardinality.hpp"

#include <algorithm>

namespace hornmax {

std::vector<Clause> encode_seqcounter(std::span<const Lit> lits, int k, VarPool& pool) {
  if (k < 0) throw Error("negative cardinality bound");
  const int n = static_cast<int>(lits.size());
  std::vector<Clause> out;
  if (k >= n) return out;
  if (k == 0) {
    for (Lit x : lits) out.push_back(Clause{~x});
    return out;
  }
  // s[i][j] <=> at least j+1 of lits[0..i] are true, for i < n-1, j < k.
  std::vector<std::vector<Lit>> s(n - 1, std::vector<Lit>(k));
  for (auto& row : s)
    for (Lit& l : row) l = Lit::pos(pool.fresh());

  out.push_back(Clause{~lits[0], s[0][0]});
  for (int j = 1; j < k; ++j) out.push_back(Clause{~s[0][j]});
  for (int i = 1; i < n - 1; ++i) {
    out.push_back(Clause{~lits[i], s[i][0]});
    out.push_back(Clause{~s[i - 1][0], s[i][0]});
    for (int j = 1; j < k; ++j) {
      out.push_back(Clause{~lits[i], ~s[i - 1][j - 1], s[i][j]});
      out.push_back(Clause{~s[i - 1][j], s[i][j]});
    }
    out.push_back(Clause{~lits[i], ~s[i - 1][k - 1]});
  }
  out.push_back(Clause{~lits[n - 1], ~s[n - 2][k - 1]});
  return out;
}

Totalizer::Totalizer(std::span<const Lit> inputs, VarPool& pool, std::optional<Lit> activation)
    : pool_(&pool), activation_(activation) {
  if (!inputs.empty()) {
    inputs_.assign(inputs.begin(), inputs.end());
    root_ = build(inputs);
  }
}

int Totalizer::build(std::span<const Lit> lits) {
  Node node;
  node.size = static_cast<int>(lits.size());
  if (lits.size() == 1) {
    node.outputs.push_back(lits[0]);
  } else {
    const std::size_t half = lits.size() / 2;
    node.left = build(lits.first(half));
    node.right = build(lits.subspan(half));
  }
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

void Totalizer::emit(std::vector<Lit> lits, std::vector<Clause>& out) const {
  if (activation_) lits.insert(lits.begin(), ~*activation_);
  out.emplace_back(std::move(lits));
}

void Totalizer::extend(int id, int cap, std::vector<Clause>& out) {
  const int target = std::min(nodes_[id].size, cap);
  if (nodes_[id].left < 0 || static_cast<int>(nodes_[id].outputs.size()) >= target) return;
  const int l = nodes_[id].left, r = nodes_[id].right;
  extend(l, target, out);
  extend(r, target, out);
  const int old = static_cast<int>(nodes_[id].outputs.size());
  for (int i = old; i < target; ++i) nodes_[id].outputs.push_back(Lit::pos(pool_->fresh()));

  const auto& lo = nodes_[l].outputs;
  const auto& ro = nodes_[r].outputs;
  const auto& o = nodes_[id].outputs;
  const int nl = static_cast<int>(lo.size()), nr = static_cast<int>(ro.size());
  for (int i = 0; i <= nl; ++i) {
    for (int j = 0; j <= nr; ++j) {
      const int sum = i + j;
      if (sum <= old || sum > target) continue;
      std::vector<Lit> c;
      if (i > 0) c.push_back(~lo[i - 1]);
      if (j > 0) c.push_back(~ro[j - 1]);
      c.push_back(o[sum - 1]);
      emit(std::move(c), out);
    }
  }
}

std::vector<Clause> Totalizer::enforce(int k) {
  if (k < bound_) throw Error("totalizer bound may not decrease");
  if (k < 0) throw Error("negative cardinality bound");
  bound_ = k;
  std::vector<Clause> out;
  if (root_ >= 0) extend(root_, k + 1, out);
  return out;
}

std::vector<Clause> Totalizer::add_inputs(std::span<const Lit> lits) {
  std::vector<Clause> out;
  if (lits.empty()) return out;
  inputs_.insert(inputs_.end(), lits.begin(), lits.end());
  const int sub = build(lits);
  if (root_ < 0) {
    root_ = sub;
  } else {
    Node merged;
    merged.left = root_;
    merged.right = sub;
    merged.size = nodes_[root_].size + nodes_[sub].size;
    nodes_.push_back(std::move(merged));
    root_ = static_cast<int>(nodes_.size()) - 1;
  }
  if (bound_ >= 0) extend(root_, bound_ + 1, out);
  return out;
}

std::optional<Lit> Totalizer::at_most_assumption(int k) const {
  if (k > bound_) throw Error("bound not enforced yet");
  if (root_ < 0 || k >= nodes_[root_].size) return std::nullopt;
  return ~nodes_[root_].outputs[k];
}

}  // namespace hornmax
