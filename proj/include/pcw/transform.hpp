#pragma once

#include <map>
#include <vector>

#include "pcw/logic.hpp"
#include "pcw/proof.hpp"

namespace pcw {

Clause resolvent(const Clause& a, const Clause& b, int var);

// Emits a k=1 syntactic derivation while tracking live clauses by id.
class ResolutionBuilder {
 public:
  explicit ResolutionBuilder(std::vector<Dnf> initial = {});

  int download(const Clause& c);
  int resolve(int a, int b, int var);
  int weaken(int a, const Clause& c);
  void erase(int id);

  const Clause& clause(int id) const { return live_.at(id); }
  bool live(int id) const { return live_.count(id) != 0; }
  int find(const Clause& c) const;  // a live id holding c, 0 if none
  const std::map<int, Clause>& live_clauses() const { return live_; }
  const Derivation& derivation() const { return pi_; }
  Derivation take() { return std::move(pi_); }

 private:
  int add(const Clause& c);
  Derivation pi_;
  std::map<int, Clause> live_;
  int next_id_ = 1;
};

// Decision-tree resolution plan deriving a subclause of `target` from `axioms`.
struct PlanNode {
  Clause clause;
  int leaf = -1;   // index into axioms for leaves
  int left = -1;   // false branch
  int right = -1;  // true branch
  int pivot = 0;
};

struct ClausePlan {
  std::vector<PlanNode> nodes;
  int root = -1;
  Clause target;
};

// Throws NOT_IMPLIED, TRIVIAL_CLAUSE, TOO_MANY_VARIABLES.
ClausePlan plan_implied_clause(const std::vector<Clause>& axioms, const Clause& target);

// Emits the plan; leaf i is axiom_ids[i] when given (kept), else downloaded
// and erased after use. Returns the id of a clause equal to target.
int emit_plan(const ClausePlan& plan, ResolutionBuilder& b, const std::vector<int>* axiom_ids = nullptr);

// Standalone derivation of C from the clause set, downloading leaves.
Derivation derive_implied_clause(const std::vector<Clause>& axioms, const Clause& c);

Derivation eliminate_weakening(const Cnf& F, const Derivation& pi);

// F restricted by rho: residuals of the clauses not satisfied (0 kept).
Cnf restrict_formula(const Cnf& F, const Restriction& rho);
Derivation restrict_refutation(const Cnf& F, const Derivation& pi, const Restriction& rho);

Derivation make_frugal(const Cnf& F, const Derivation& pi);
bool is_frugal(const Cnf& F, const Derivation& pi);

// Step kinds in a k=1 syntactic derivation: pivot of each resolution and
// whether any weakening is present.
int resolution_pivot(const Clause& p1, const Clause& p2, const Clause& r);

}  // namespace pcw
