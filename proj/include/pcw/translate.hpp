#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcw/graph.hpp"
#include "pcw/logic.hpp"
#include "pcw/pebbling.hpp"
#include "pcw/projection.hpp"
#include "pcw/proof.hpp"
#include "pcw/substitution.hpp"

namespace pcw {

// Source axioms v, pebbling axioms ū1 ∨ ... ∨ ūℓ ∨ v and the sink axiom z̄.
struct PebblingFormula {
  Dag graph;
  Cnf base;
  std::optional<BooleanFunction> f;
  Cnf cnf;  // base[f], or base without a substitution
};

PebblingFormula pebbling_formula(const Dag& g);
PebblingFormula pebbling_formula(const Dag& g, const BooleanFunction& f);

// DIMACS with a "c substitution f=<name> d=<d> base_vars=<n>" line.
std::string to_dimacs(const PebblingFormula& p);

// Vertex whose axiom this clause is: the positive literal, or the sink for z̄.
int axiom_vertex(const Dag& g, const Clause& axiom);

// Resolution refutation of Peb_G[f] following a black pebbling. While v holds
// a black pebble its clause set v[f] is on the board.
// Throws WHITE_PEBBLE_PRESENT, INVALID_PEBBLING.
Derivation compile_pebbling(const Dag& g, const Pebbling& p, const BooleanFunction& f);

// proj_F of every configuration D_0..D_s, up to the first 0.
using ProjectedSequence = std::vector<std::vector<Clause>>;

// Resolution refutation of F (with weakening) whose configurations are the
// projections of the configurations of pi_f, a k = 1 refutation of F[f].
// Throws INVALID_INPUT, CAP_EXCEEDED.
Derivation translate_refutation(const Derivation& pi_f, const Cnf& F, const BooleanFunction& f,
                                ProjectedSequence* projected = nullptr);

struct Extraction {
  Pebbling pebbling;
  Derivation translated;  // refutation of Peb_G
  Derivation frugal;      // weakening-free and frugal, with the closing erasures
  MeasureReport source;   // measures of the input refutation
  MeasureReport frugal_report;
};

// Black-white pebbling read off a frugal weakening-free refutation of Peb_G.
Pebbling frugal_to_pebbling(const Dag& g, const Cnf& peb, const Derivation& frugal);

// Throws AUTHORITARIAN_FUNCTION if require_space_bound and f is not
// 1-non-authoritarian.
Extraction extract_pebbling(const Derivation& pi, const Dag& g, const BooleanFunction& f,
                            bool require_space_bound = false);

struct AuditReport {
  long configurations = 0;
  long nonempty = 0;
  long space_violations = 0;     // |D| <= VarSp(proj(D))
  long presence_violations = 0;  // projected variable with an untouched block
  long max_projection_vars = 0;
  std::vector<std::string> messages;
  bool ok() const { return space_violations == 0 && presence_violations == 0; }
};

// Throws AUTHORITARIAN_FUNCTION, CAP_EXCEEDED.
AuditReport project_invariant_audit(const Derivation& pi_f, const Cnf& F, const BooleanFunction& f);

}  // namespace pcw
