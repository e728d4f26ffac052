#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcw/logic.hpp"

namespace pcw {

enum class FunctionKind { Identity, Or, And, Xor, Threshold, Custom };

// Non-constant Boolean function of arity d. Bit j-1 of an input index is x_j.
class BooleanFunction {
 public:
  static BooleanFunction identity();
  static BooleanFunction or_fn(int d);
  static BooleanFunction and_fn(int d);
  static BooleanFunction xor_fn(int d);
  // At least k of the d inputs are true.
  static BooleanFunction threshold(int d, int k);
  static BooleanFunction custom(int d, std::vector<bool> table);
  // "identity", "or:2", "and:3", "xor:2", "thr:5:3", "custom:<bits>" (bit i = f(i)).
  static BooleanFunction parse(const std::string& spec);

  int arity() const { return arity_; }
  FunctionKind kind() const { return kind_; }
  int threshold_k() const { return k_; }
  bool operator()(uint32_t input) const { return table_[input]; }
  const std::vector<bool>& table() const { return table_; }
  std::string name() const;  // round-trips through parse

 private:
  BooleanFunction(FunctionKind kind, int arity, int k, std::vector<bool> table);

  FunctionKind kind_;
  int arity_;
  int k_ = 0;
  std::vector<bool> table_;
};

// Canonical clauses over variables 1..d for f (positive) or its negation.
Cnf canonical_clauses(const BooleanFunction& f, bool positive);

// x_j of base variable x.
inline int fresh_var(int x, int j, int d) { return d * (x - 1) + j; }
inline int base_var(int fresh, int d) { return (fresh - 1) / d + 1; }
inline int block_index(int fresh, int d) { return (fresh - 1) % d + 1; }

// a[f], renamed into the block of a's variable.
Cnf substitute_literal(Literal a, const BooleanFunction& f);
Cnf substitute_clause(const Clause& c, const BooleanFunction& f);
Cnf substitute_formula(const Cnf& F, const BooleanFunction& f);

// DNF expressing a[f] (terms are the negated clauses of the opposite set).
Dnf literal_dnf(Literal a, const BooleanFunction& f);

bool is_k_non_authoritarian(const BooleanFunction& f, int k);

// {C ∨ D}, trivial results dropped.
std::vector<Clause> clause_set_disjunction(const std::vector<Clause>& a,
                                           const std::vector<Clause>& b);

}  // namespace pcw
