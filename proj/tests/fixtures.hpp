#pragma once

// Seeded generators of small resolution refutations shared by the tests and
// the acceptance binary.

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "pcw/logic.hpp"
#include "pcw/proof.hpp"
#include "pcw/transform.hpp"

namespace fixtures {

// Random unsatisfiable CNF over `nvars` variables, built by splitting the
// cube until every leaf is falsified, then adding noise clauses.
inline pcw::Cnf random_unsat(std::mt19937& rng, int nvars) {
  std::vector<pcw::Clause> cs;
  std::uniform_int_distribution<int> coin(0, 3);
  std::function<void(std::vector<pcw::Literal>, int)> split = [&](std::vector<pcw::Literal> path, int v) {
    if (v > nvars || (v > 1 && coin(rng) == 0)) {
      std::vector<pcw::Literal> neg;
      for (auto l : path) neg.push_back(~l);
      cs.emplace_back(neg);
      return;
    }
    for (bool b : {false, true}) {
      auto p = path;
      p.emplace_back(v, b);
      split(p, v + 1);
    }
  };
  split({}, 1);
  return pcw::Cnf(cs);
}

// Tree-like refutation of an unsatisfiable F via the decision-tree planner.
inline pcw::Derivation tree_refutation(const pcw::Cnf& F) {
  return pcw::derive_implied_clause(F.clauses(), pcw::Clause());
}

// Inserts dead and live weakenings and a redundant download, keeping validity.
inline pcw::Derivation inject_noise(const pcw::Cnf& F, const pcw::Derivation& pi, std::mt19937& rng,
                                    int max_var) {
  using namespace pcw;
  Derivation out;
  out.k = 1;
  std::map<int, int> idmap;  // input id -> output id
  int next_in = 1, next_out = 1;
  std::uniform_int_distribution<int> coin(0, 4), var(1, max_var), sign(0, 1);
  for (const Step& s : pi.steps) {
    if (coin(rng) == 0) {
      // unused download then erase
      out.steps.push_back(Step::download(F.clauses()[rng() % F.size()]));
      out.steps.push_back(Step::erase(next_out++));
    }
    if (s.kind == StepKind::Erase) {
      out.steps.push_back(Step::erase(idmap.at(s.erase_id)));
      continue;
    }
    Step t = s;
    for (int& p : t.premises) p = idmap.at(p);
    out.steps.push_back(t);
    int id = next_out++;
    idmap[next_in++] = id;
    if (s.kind == StepKind::Infer && coin(rng) == 0 && !s.formula.empty()) {
      // weaken and use the weaker copy afterwards
      Clause c = s.formula.to_clause().with(Literal(var(rng), sign(rng) == 1));
      out.steps.push_back(Step::infer(Rule::Weak, {id}, Dnf::from_clause(c)));
      int w = next_out++;
      (void)w;
    }
  }
  return out;
}

}  // namespace fixtures
