#pragma once

#include <string>
#include <vector>

#include "pcw/logic.hpp"

namespace pcw {

struct KDnfSet {
  int k = 1;
  std::vector<Dnf> formulas;

  std::vector<int> vars() const { return vars_of(formulas); }
};

// Header "p kdnf k=<k> m=<m>", then one DNF per line.
std::string to_text(const KDnfSet& s);
KDnfSet parse_kdnf_set(const std::string& text);

// d ⊨ g, and replacing any single term by a proper subterm (the empty term
// included) breaks the implication. Throws CAP_EXCEEDED.
bool minimally_implies(const std::vector<Dnf>& d, const Dnf& g);
bool is_minimally_unsatisfiable(const KDnfSet& s);

// Unsatisfiable, and removing any one clause makes it satisfiable.
bool is_minimally_unsatisfiable_cnf(const Cnf& F);

// {x_1 ∨ ... ∨ x_n, x̄_1, ..., x̄_n} with each x_i replaced by a disjunction of
// k disjoint k-terms over its own k² variables.
KDnfSet lemma215_construct(int k, int n);

// Every minimally unsatisfiable k-DNF set with at most max_formulas formulas,
// max_terms terms per formula and variables among 1..max_vars, one per
// renaming class, in canonical order. max_terms = 0 picks the cap for k >= 2
// and no limit for clauses. Throws CAP_EXCEEDED.
std::vector<KDnfSet> enumerate_min_unsat(int k, int max_vars, int max_formulas, int max_terms = 0);

// Restriction of size at most k|D| satisfying every formula but formulas[i],
// satisfying t \ {a} and leaving g unfixed. Throws NOT_MINIMAL, INVALID_PARAM.
Restriction lemma510_witness(const KDnfSet& s, std::size_t i, const Term& t, Literal a, const Dnf& g = Dnf());

}  // namespace pcw
