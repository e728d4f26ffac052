#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pcw/logic.hpp"
#include "pcw/substitution.hpp"

namespace pcw {

enum class ProjectionMode { Subset, WholeSet };

// The disjunction of f(x) for positive x in C and ¬f(y) for negative y in C,
// as a DNF over the fresh variables.
Dnf substituted_disjunction(const Clause& c, const BooleanFunction& f);

// S implies the disjunction for C but not for any C minus one literal.
// Brute force; meant for small inputs and as a reference.
bool precisely_implies(const std::vector<Dnf>& s, const Clause& c, const BooleanFunction& f);

// Exact projection of a configuration over F[f] back onto Vars(F).
//
// Every assignment to the enumerated block variables records which formulas
// it satisfies (a bitmask) and its shadow, the vector of f-values per block.
// Subset mode then asks whether some intersection of maximal masks, one per
// literal of C, escapes every mask whose shadow falsifies C.
class Projector {
 public:
  // all_blocks: enumerate every block of Vars(F) rather than only the blocks
  // that meet Vars(D). Both give the same answer; the second is slower.
  Projector(const std::vector<Dnf>& d, const std::vector<int>& base_vars,
            const BooleanFunction& f, ProjectionMode mode, bool all_blocks = false);

  // D implies the substituted disjunction of c.
  bool implied(const Clause& c) const;
  bool projects(const Clause& c) const;
  // All projected clauses over the candidate variables, canonical order.
  std::vector<Clause> clauses() const;
  const std::vector<int>& candidate_vars() const { return cand_; }

 private:
  using Masks = std::vector<uint64_t>;
  int index_of(int base) const;
  void region(const Clause& c, const Literal* flip, uint32_t& care, uint32_t& val) const;
  const Masks& up(uint32_t care, uint32_t val) const;
  bool projects_subset(const Clause& c) const;
  bool projects_whole(const Clause& c) const;

  ProjectionMode mode_;
  int d_;
  std::vector<int> cand_;      // candidate base variables, ascending
  uint64_t full_ = 0;          // all formulas of D
  std::vector<Masks> by_shadow_;
  std::vector<uint32_t> full_shadows_;
  mutable std::unordered_map<uint64_t, Masks> memo_;
};

std::vector<Clause> project(const std::vector<Dnf>& d, const Cnf& F, const BooleanFunction& f,
                            ProjectionMode mode = ProjectionMode::Subset);

long variable_space(const std::vector<Clause>& clauses);

}  // namespace pcw
