#pragma once

// Independent reference implementations used by the tests. They work on
// explicit truth tables and do not share code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "pcw/logic.hpp"

namespace oracle {

using Assignment = std::map<int, bool>;

inline bool eval_lit(const pcw::Literal& l, const Assignment& a) {
  return a.at(l.var()) == l.positive();
}

inline bool eval_dnf(const pcw::Dnf& d, const Assignment& a) {
  for (const auto& t : d.terms()) {
    bool all = true;
    for (auto l : t.lits()) all = all && eval_lit(l, a);
    if (all) return true;
  }
  return false;
}

inline bool eval_clause(const pcw::Clause& c, const Assignment& a) {
  for (auto l : c.lits())
    if (eval_lit(l, a)) return true;
  return false;
}

inline void for_each_assignment(const std::vector<int>& vars, const std::function<void(const Assignment&)>& fn) {
  for (uint64_t x = 0; x < (uint64_t{1} << vars.size()); ++x) {
    Assignment a;
    for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = (x >> i) & 1;
    fn(a);
  }
}

inline std::vector<int> vars(const std::vector<pcw::Dnf>& a, const std::vector<pcw::Dnf>& b = {}) {
  std::vector<int> v;
  for (const auto* s : {&a, &b})
    for (const auto& d : *s)
      for (const auto& t : d.terms())
        for (auto l : t.lits()) v.push_back(l.var());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool implies(const std::vector<pcw::Dnf>& a, const std::vector<pcw::Dnf>& b) {
  bool ok = true;
  for_each_assignment(vars(a, b), [&](const Assignment& x) {
    bool sa = true;
    for (const auto& d : a) sa = sa && eval_dnf(d, x);
    if (!sa) return;
    for (const auto& d : b)
      if (!eval_dnf(d, x)) ok = false;
  });
  return ok;
}

inline bool unsat(const std::vector<pcw::Clause>& cs) {
  std::vector<pcw::Dnf> ds;
  for (const auto& c : cs) ds.push_back(pcw::Dnf::from_clause(c));
  return oracle::implies(ds, std::vector<pcw::Dnf>{pcw::Dnf()});
}

inline pcw::Clause random_clause(std::mt19937& rng, int nvars, int width) {
  std::vector<pcw::Literal> lits;
  std::uniform_int_distribution<int> var(1, nvars), sign(0, 1);
  for (int i = 0; i < width; ++i) lits.emplace_back(var(rng), sign(rng) == 1);
  pcw::Clause c(lits);
  if (c.is_trivial()) return pcw::Clause(std::vector<pcw::Literal>{lits[0]});
  return c;
}


// Does S imply the disjunction of f(block x) for x in C+ and ¬f(block y) for
// y in C-? Block x of arity d is the variables d(x-1)+1..dx.
inline bool implies_shadow(const std::vector<pcw::Dnf>& s, const pcw::Clause& c,
                           const std::function<bool(uint32_t)>& f, int d) {
  std::vector<int> vs = vars(s);
  for (auto l : c.lits())
    for (int j = 1; j <= d; ++j) vs.push_back(d * (l.var() - 1) + j);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  bool ok = true;
  for_each_assignment(vs, [&](const Assignment& a) {
    for (const auto& x : s)
      if (!eval_dnf(x, a)) return;
    for (auto l : c.lits()) {
      uint32_t in = 0;
      for (int j = 1; j <= d; ++j)
        if (a.at(d * (l.var() - 1) + j)) in |= 1u << (j - 1);
      if (f(in) == l.positive()) return;
    }
    ok = false;
  });
  return ok;
}

// Definition-level projection: some subset of D precisely implies C, where
// precision is checked against every proper subclause.
inline std::vector<pcw::Clause> naive_project(const std::vector<pcw::Dnf>& D, const std::vector<int>& base,
                                              const std::function<bool(uint32_t)>& f, int d,
                                              bool whole_set = false) {
  std::vector<pcw::Clause> out;
  std::vector<pcw::Literal> lits;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i < base.size()) {
      walk(i + 1);
      for (bool pos : {false, true}) {
        lits.emplace_back(base[i], pos);
        walk(i + 1);
        lits.pop_back();
      }
      return;
    }
    pcw::Clause c(lits);
    for (uint64_t m = 0; m < (uint64_t{1} << D.size()); ++m) {
      if (whole_set && m + 1 != (uint64_t{1} << D.size())) continue;
      std::vector<pcw::Dnf> s;
      for (std::size_t j = 0; j < D.size(); ++j)
        if ((m >> j) & 1) s.push_back(D[j]);
      if (!implies_shadow(s, c, f, d)) continue;
      bool precise = true;
      for (uint32_t sub = 0; sub + 1 < (1u << c.size()) && precise; ++sub) {
        std::vector<pcw::Literal> part;
        for (std::size_t j = 0; j < c.size(); ++j)
          if ((sub >> j) & 1) part.push_back(c.lits()[j]);
        if (implies_shadow(s, pcw::Clause(part), f, d)) precise = false;
      }
      if (precise) {
        out.push_back(c);
        break;
      }
    }
  };
  walk(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
