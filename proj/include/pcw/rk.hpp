#pragma once

#include <map>
#include <vector>

#include "pcw/graph.hpp"
#include "pcw/logic.hpp"
#include "pcw/pebbling.hpp"
#include "pcw/proof.hpp"
#include "pcw/substitution.hpp"

namespace pcw {

// Emits a syntactic R(k) derivation, tracking live formulas by id.
class DnfBuilder {
 public:
  explicit DnfBuilder(int k, std::vector<Dnf> initial = {});

  int download(const Clause& c);
  int infer(Rule r, std::vector<int> premises, const Dnf& d);
  void erase(int id);

  const Dnf& formula(int id) const { return live_.at(id); }
  const std::map<int, Dnf>& live() const { return live_; }
  Derivation take() { return std::move(pi_); }
  const Derivation& derivation() const { return pi_; }

  struct Mark {
    std::size_t steps;
    std::map<int, Dnf> live;
    int next;
  };
  Mark mark() const { return {pi_.steps.size(), live_, next_id_}; }
  void rollback(const Mark& m);

 private:
  Derivation pi_;
  std::map<int, Dnf> live_;
  int next_id_ = 1;
};

// Derives the clause c from the axioms (downloaded as needed). Trivial clauses
// are produced as resolvents of a decision tree that avoids splitting on the
// clashing variable. Returns the id of c. Throws NOT_DERIVABLE.
int derive_clause(DnfBuilder& b, const std::vector<Clause>& axioms, const Clause& c);

// Derives the k-DNF d from axioms implying it by merging the clauses
// of its CNF expansion with ∧-introduction. Returns the id of d.
int derive_dnf(DnfBuilder& b, const std::vector<Clause>& axioms, const Dnf& d);
Derivation derive_dnf(const Cnf& F, const Dnf& d, int k);

// Removes every term of d1 from formula `from` (which
// must contain them) using the live formula `with` ≡ a DNF clashing with d1.
// `with` is kept. Returns the id of the reduced formula.
int cut_away(DnfBuilder& b, int from, const Dnf& d1, int with);

// Refutation of {d1, d2} (preloaded) for d1 ∧ d2 unsatisfiable.
Derivation refute_dnf_pair(const Dnf& d1, const Dnf& d2, int k);

// The d-DNF standing for the clause c: the disjunction of the literal DNFs.
Dnf clause_dnf(const Clause& c, const BooleanFunction& f);

// Syntactic R(d) refutation of Peb_G[f] following a black pebbling. While v
// holds a black pebble the single formula clause_dnf({v}, f) is on the board.
Derivation compile_pebbling_rk(const Dag& g, const Pebbling& p, const BooleanFunction& f);

}  // namespace pcw
