#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hornmax {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Var = int;

/// A literal over a positive variable index, stored DIMACS-style (+v / -v).
class Lit {
 public:
  constexpr Lit() = default;
  constexpr explicit Lit(int dimacs) : code_(dimacs) {}

  static constexpr Lit pos(Var v) { return Lit(v); }
  static constexpr Lit neg(Var v) { return Lit(-v); }

  constexpr Var var() const { return code_ < 0 ? -code_ : code_; }
  constexpr bool positive() const { return code_ > 0; }
  constexpr int dimacs() const { return code_; }
  /// Dense index usable for per-literal tables: 2*var for positive, 2*var+1 for negative.
  constexpr std::size_t index() const {
    return 2 * static_cast<std::size_t>(var()) + (positive() ? 0 : 1);
  }

  constexpr Lit operator~() const { return Lit(-code_); }
  constexpr bool operator==(const Lit&) const = default;

  /// Orders by (var, sign) with the positive literal first.
  constexpr std::strong_ordering operator<=>(const Lit& o) const {
    if (auto c = var() <=> o.var(); c != 0) return c;
    return (positive() ? 0 : 1) <=> (o.positive() ? 0 : 1);
  }

 private:
  int code_ = 0;
};

std::ostream& operator<<(std::ostream& os, Lit l);

struct Clause {
  std::vector<Lit> lits;

  Clause() = default;
  Clause(std::initializer_list<Lit> l) : lits(l) {}
  explicit Clause(std::vector<Lit> l) : lits(std::move(l)) {}

  std::size_t size() const { return lits.size(); }
  bool empty() const { return lits.empty(); }
  auto begin() const { return lits.begin(); }
  auto end() const { return lits.end(); }
  bool operator==(const Clause&) const = default;
};

/// Convenience: build a clause from DIMACS integers.
Clause clause_of(std::initializer_list<int> dimacs);

/// Sorted by (var, sign), duplicates removed. Tautologies are kept.
Clause normalized(const Clause& c);
bool is_tautology(const Clause& c);
std::size_t positive_count(const Clause& c);
bool is_horn(const Clause& c);
Var max_var(const Clause& c);

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;

  /// Throws Error if a literal exceeds num_vars or is 0.
  void validate() const;
  bool operator==(const CnfFormula&) const = default;
};

bool is_horn_formula(const CnfFormula& f);
bool is_horn_formula(std::span<const Clause> clauses);

/// Clause weight: a positive integer or the distinguished hard weight TOP.
class Weight {
 public:
  constexpr Weight() = default;
  constexpr explicit Weight(std::uint64_t v) : value_(v) {}
  static constexpr Weight top() {
    Weight w;
    w.top_ = true;
    return w;
  }

  constexpr bool is_top() const { return top_; }
  /// Finite value; meaningless for TOP.
  constexpr std::uint64_t value() const { return value_; }
  constexpr bool is_zero() const { return !top_ && value_ == 0; }

  constexpr bool operator==(const Weight&) const = default;
  constexpr std::strong_ordering operator<=>(const Weight& o) const {
    if (top_ || o.top_) return (top_ ? 1 : 0) <=> (o.top_ ? 1 : 0);
    return value_ <=> o.value_;
  }

 private:
  std::uint64_t value_ = 0;
  bool top_ = false;
};

std::ostream& operator<<(std::ostream& os, Weight w);

/// u ⊖ w: TOP stays TOP, otherwise ordinary subtraction (requires u >= w).
Weight ominus(Weight u, Weight w);

struct WeightedClause {
  Clause clause;
  Weight weight;
  bool operator==(const WeightedClause&) const = default;
};

struct SoftClause {
  Clause clause;
  std::uint64_t weight = 1;
  bool operator==(const SoftClause&) const = default;
};

/// Partial MaxSAT instance. Soft-clause identifiers are positions in `soft`.
struct WcnfFormula {
  int num_vars = 0;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;

  std::uint64_t total_soft_weight() const;
  bool unit_weights() const;
  void validate() const;
  bool operator==(const WcnfFormula&) const = default;
};

enum class Value : std::int8_t { False = 0, True = 1, Unassigned = -1 };

/// Possibly partial assignment over variables 1..num_vars.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int num_vars) : values_(num_vars + 1, Value::Unassigned) {}

  int num_vars() const { return static_cast<int>(values_.size()) - 1; }
  Value get(Var v) const { return values_.at(v); }
  void set(Var v, bool b) { values_.at(v) = b ? Value::True : Value::False; }
  void unset(Var v) { values_.at(v) = Value::Unassigned; }
  bool is_true(Var v) const { return values_.at(v) == Value::True; }

  /// Value of a literal: True/False if its variable is assigned.
  Value value(Lit l) const;
  bool is_total() const;

  /// Builds a total assignment from the low bits of `bits` (bit i-1 is var i).
  static Assignment from_bits(int num_vars, std::uint64_t bits);

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<Value> values_{Value::Unassigned};
};

enum class ClauseStatus { Satisfied, Falsified, Undetermined };

ClauseStatus eval_clause(const Clause& c, const Assignment& a);
bool satisfies(const Assignment& a, std::span<const Clause> clauses);
bool satisfies(const Assignment& a, const CnfFormula& f);

/// Sum of weights of falsified soft clauses, or nullopt when a hard clause is falsified.
/// Throws Error on a partial assignment.
std::optional<std::uint64_t> cost(const WcnfFormula& f, const Assignment& a);

}  // namespace hornmax
