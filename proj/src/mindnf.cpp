#include "pcw/mindnf.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "pcw/caps.hpp"
#include "pcw/error.hpp"

namespace pcw {

std::string to_text(const KDnfSet& s) {
  std::ostringstream out;
  out << "p kdnf k=" << s.k << " m=" << s.formulas.size() << "\n";
  for (const Dnf& d : s.formulas) out << to_string(d) << "\n";
  return out.str();
}

KDnfSet parse_kdnf_set(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  KDnfSet s;
  long m = -1, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line.substr(1));
      std::string kind, kk, mm;
      hs >> kind >> kk >> mm;
      if (kind != "kdnf" || kk.rfind("k=", 0) != 0 || mm.rfind("m=", 0) != 0)
        throw Error(ErrorCode::Parse, "bad kdnf header", lineno);
      try {
        s.k = std::stoi(kk.substr(2));
        m = std::stol(mm.substr(2));
      } catch (...) {
        throw Error(ErrorCode::Parse, "bad number in kdnf header", lineno);
      }
      continue;
    }
    if (m < 0) throw Error(ErrorCode::Parse, "formula before kdnf header", lineno);
    Dnf d = parse_dnf(line);
    if (static_cast<int>(d.width()) > s.k) throw Error(ErrorCode::Parse, "term wider than k", lineno);
    s.formulas.push_back(d);
  }
  if (m < 0) throw Error(ErrorCode::Parse, "missing kdnf header");
  if (static_cast<long>(s.formulas.size()) != m) throw Error(ErrorCode::Parse, "formula count differs from header");
  return s;
}

namespace {

void check_vars(std::size_t n) {
  if (static_cast<int>(n) > caps().implication_vars)
    throw Error(ErrorCode::CapExceeded, std::to_string(n) + " variables exceed the implication cap");
}

// proper subterms of t, the empty term first
std::vector<Term> proper_subterms(const Term& t) {
  const std::vector<Literal>& lits = t.lits();
  std::vector<Term> out;
  const uint32_t full = (1u << lits.size()) - 1;
  for (uint32_t m = 0; m < full; ++m) {
    std::vector<Literal> sub;
    for (std::size_t i = 0; i < lits.size(); ++i)
      if (m >> i & 1) sub.push_back(lits[i]);
    out.push_back(Term(sub));
  }
  return out;
}

}  // namespace

bool minimally_implies(const std::vector<Dnf>& d, const Dnf& g) {
  std::vector<Dnf> all = d;
  all.push_back(g);
  check_vars(vars_of(all).size());
  const std::vector<Dnf> target{g};
  if (!implies(d, target)) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (const Term& t : d[i].terms())
      for (const Term& sub : proper_subterms(t)) {
        std::vector<Dnf> changed = d;
        changed[i] = d[i].without(t).with(sub);
        if (implies(changed, target)) return false;
      }
  return true;
}

bool is_minimally_unsatisfiable(const KDnfSet& s) { return minimally_implies(s.formulas, Dnf()); }

bool is_minimally_unsatisfiable_cnf(const Cnf& F) {
  check_vars(F.vars().size());
  std::vector<Dnf> d = F.as_dnfs();
  if (satisfiable(d)) return false;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<Dnf> rest = d;
    rest.erase(rest.begin() + static_cast<long>(i));
    if (!satisfiable(rest)) return false;
  }
  return true;
}

KDnfSet lemma215_construct(int k, int n) {
  if (k < 1 || n < 1) throw Error(ErrorCode::InvalidParam, "construction needs k, n >= 1");
  auto var = [&](int i, int j) { return (i - 1) * k * k + j; };
  KDnfSet s{k, {}};
  std::vector<Term> pos;
  for (int i = 1; i <= n; ++i)
    for (int b = 0; b < k; ++b) {
      std::vector<Literal> lits;
      for (int j = 1; j <= k; ++j) lits.push_back(Literal(var(i, b * k + j), true));
      pos.push_back(Term(lits));
    }
  s.formulas.push_back(Dnf(pos));
  for (int i = 1; i <= n; ++i) {
    // one negated variable from each block
    std::vector<Term> neg;
    std::vector<int> pick(k, 1);
    while (true) {
      std::vector<Literal> lits;
      for (int b = 0; b < k; ++b) lits.push_back(Literal(var(i, b * k + pick[b]), false));
      neg.push_back(Term(lits));
      int b = k - 1;
      while (b >= 0 && pick[b] == k) pick[b--] = 1;
      if (b < 0) break;
      ++pick[b];
    }
    s.formulas.push_back(Dnf(neg));
  }
  return s;
}

// ------------------------------------------------------------ enumeration

namespace {

using Mask = std::bitset<256>;

struct Universe {
  int n, k;
  Mask all;
  std::vector<Mask> lit_mask;     // by literal code 2(v-1)+positive
  std::vector<uint32_t> terms;    // literal bitmasks, sorted by size then value
  std::vector<Mask> term_mask;
  std::vector<int> term_id;  // by literal bitmask

  Universe(int n_, int k_) : n(n_), k(k_) {
    const int total = 1 << n;
    for (int a = 0; a < total; ++a) all.set(a);
    lit_mask.resize(2 * n);
    for (int v = 0; v < n; ++v)
      for (int a = 0; a < total; ++a) lit_mask[2 * v + ((a >> v) & 1)].set(a);
    for (uint32_t m = 1; m < (1u << (2 * n)); ++m)
      if (std::popcount(m) <= k) terms.push_back(m);
    std::stable_sort(terms.begin(), terms.end(),
                     [](uint32_t a, uint32_t b) { return std::popcount(a) < std::popcount(b); });
    term_id.assign(std::size_t{1} << (2 * n), -1);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      term_mask.push_back(mask_of(terms[i]));
      term_id[terms[i]] = static_cast<int>(i);
    }
  }

  Mask mask_of(uint32_t lits) const {
    Mask m = all;
    for (int c = 0; c < 2 * n; ++c)
      if (lits >> c & 1) m &= lit_mask[c];
    return m;
  }
};

using Formula = std::vector<uint32_t>;  // sorted literal bitmasks

Mask formula_mask(const Universe& u, const Formula& f) {
  Mask m;
  for (uint32_t t : f) m |= u.term_mask[u.term_id.at(t)];
  return m;
}

bool minimal(const Universe& u, const std::vector<Formula>& fs, const std::vector<Mask>& masks) {
  Mask prod = u.all;
  for (const Mask& m : masks) prod &= m;
  if (prod.any()) return false;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Mask others = u.all;
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (j != i) others &= masks[j];
    for (uint32_t t : fs[i]) {
      Mask rest;
      for (uint32_t t2 : fs[i])
        if (t2 != t) rest |= u.term_mask[u.term_id.at(t2)];
      // proper submasks of t, the empty term included
      for (uint32_t sub = (t - 1) & t;; sub = (sub - 1) & t) {
        Mask sm = sub ? u.term_mask[u.term_id.at(sub)] : u.all;
        if ((others & (rest | sm)).none()) return false;
        if (sub == 0) break;
      }
    }
  }
  return true;
}

uint32_t rename_term(uint32_t t, const std::vector<int>& perm) {
  uint32_t out = 0;
  for (std::size_t v = 0; v < perm.size(); ++v) {
    if (t >> (2 * v) & 1) out |= 1u << (2 * perm[v]);
    if (t >> (2 * v + 1) & 1) out |= 1u << (2 * perm[v] + 1);
  }
  return out;
}

std::vector<Formula> rename_set(const std::vector<Formula>& fs, const std::vector<int>& perm) {
  std::vector<Formula> out;
  for (const Formula& f : fs) {
    Formula g;
    for (uint32_t t : f) g.push_back(rename_term(t, perm));
    std::sort(g.begin(), g.end());
    out.push_back(g);
  }
  std::sort(out.begin(), out.end());
  return out;
}

uint32_t vars_mask(const std::vector<Formula>& fs) {
  uint32_t used = 0;
  for (const Formula& f : fs)
    for (uint32_t t : f)
      for (int v = 0; v < 16; ++v)
        if (t >> (2 * v) & 3) used |= 1u << v;
  return used;
}

// Least renaming-image; variables are first packed onto 0..|vars|-1.
std::vector<Formula> canonical(const std::vector<Formula>& fs, int n) {
  const uint32_t used = vars_mask(fs);
  std::vector<int> pos;
  for (int v = 0; v < n; ++v)
    if (used >> v & 1) pos.push_back(v);
  std::vector<int> order(pos.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Formula> best;
  bool first = true;
  do {
    std::vector<int> perm(n, 0);
    for (std::size_t i = 0; i < pos.size(); ++i) perm[pos[i]] = order[i];
    std::vector<Formula> img = rename_set(fs, perm);
    if (first || img < best) best = img;
    first = false;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace

std::vector<KDnfSet> enumerate_min_unsat(int k, int max_vars, int max_formulas, int max_terms) {
  if (k < 1 || max_vars < 1 || max_formulas < 1) throw Error(ErrorCode::InvalidParam, "enumeration bounds must be positive");
  if (max_vars > caps().enum_vars || max_formulas > caps().enum_formulas)
    throw Error(ErrorCode::CapExceeded, "enumeration exceeds the vars/formulas caps");
  if (max_terms <= 0) max_terms = k == 1 ? 2 * max_vars : caps().enum_terms;
  if (k > 1 && max_terms > caps().enum_terms) throw Error(ErrorCode::CapExceeded, "enumeration exceeds the terms cap");
  const Universe u(max_vars, k);
  const int nt = static_cast<int>(u.terms.size());

  // formulas with no term contained in another; the empty formula is kept apart
  std::vector<Formula> formulas;
  std::vector<Mask> fmask;
  std::vector<bool> is_rep;
  std::function<void(int, Formula&)> grow = [&](int from, Formula& cur) {
    if (!cur.empty()) {
      Formula f = cur;
      std::sort(f.begin(), f.end());
      formulas.push_back(f);
      fmask.push_back(formula_mask(u, f));
    }
    if (static_cast<int>(cur.size()) == max_terms) return;
    for (int i = from; i < nt; ++i) {
      uint32_t t = u.terms[i];
      bool ok = true;
      for (uint32_t c : cur)
        if ((c & t) == c || (c & t) == t) ok = false;
      if (!ok) continue;
      cur.push_back(t);
      grow(i + 1, cur);
      cur.pop_back();
    }
  };
  Formula start;
  grow(0, start);
  // a representative fixes the renaming freedom of one formula of the prefix
  for (const Formula& f : formulas) {
    const uint32_t used = vars_mask({f});
    bool packed = (used & (used + 1)) == 0;
    is_rep.push_back(packed && canonical({f}, max_vars) == std::vector<Formula>{f});
  }

  std::set<std::vector<Formula>> raw;
  auto consider = [&](std::vector<Formula> fs) {
    std::vector<Mask> ms;
    for (const Formula& f : fs) ms.push_back(formula_mask(u, f));
    if (!minimal(u, fs, ms)) return;
    std::sort(fs.begin(), fs.end());
    raw.insert(fs);
  };

  // completes a satisfiable prefix with a last formula of minimal falsified terms
  auto complete = [&](const std::vector<int>& prefix) {
    Mask models = u.all;
    for (int i : prefix) models &= fmask[i];
    if (models.none() && !prefix.empty()) return;
    std::vector<uint32_t> allowed;
    for (int i = 0; i < nt; ++i) {
      if ((u.term_mask[i] & models).any()) continue;
      const uint32_t t = u.terms[i];
      bool min = true;
      for (uint32_t sub = (t - 1) & t; sub; sub = (sub - 1) & t)
        if ((u.term_mask[u.term_id.at(sub)] & models).none()) min = false;
      if (min) allowed.push_back(t);
    }
    std::vector<Formula> base;
    for (int i : prefix) base.push_back(formulas[i]);
    if (prefix.empty()) consider({Formula()});
    std::function<void(std::size_t, Formula&)> pick = [&](std::size_t from, Formula& cur) {
      if (!cur.empty()) {
        Formula f = cur;
        std::sort(f.begin(), f.end());
        if (std::find(base.begin(), base.end(), f) == base.end()) {
          std::vector<Formula> fs = base;
          fs.push_back(f);
          consider(fs);
        }
      }
      if (static_cast<int>(cur.size()) == max_terms) return;
      for (std::size_t i = from; i < allowed.size(); ++i) {
        cur.push_back(allowed[i]);
        pick(i + 1, cur);
        cur.pop_back();
      }
    };
    Formula cur;
    pick(0, cur);
  };

  const int nf = static_cast<int>(formulas.size());
  complete({});
  for (int a = 0; a < nf; ++a) {
    if (!is_rep[a]) continue;
    if (max_formulas >= 2) complete({a});
    if (max_formulas >= 3)
      for (int b = 0; b < nf; ++b)
        if (b != a && (fmask[a] & fmask[b]).any()) complete({a, b});
  }

  std::set<std::vector<Formula>> classes;
  for (const auto& fs : raw) classes.insert(canonical(fs, max_vars));

  std::vector<std::vector<Formula>> ordered(classes.begin(), classes.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<KDnfSet> out;
  for (const auto& fs : ordered) {
    KDnfSet s{k, {}};
    for (const Formula& f : fs) {
      std::vector<Term> ts;
      for (uint32_t t : f) {
        std::vector<Literal> lits;
        for (int c = 0; c < 2 * max_vars; ++c)
          if (t >> c & 1) lits.push_back(Literal(c / 2 + 1, c % 2 == 1));
        ts.push_back(Term(lits));
      }
      s.formulas.push_back(Dnf(ts));
    }
    out.push_back(s);
  }
  return out;
}

// ------------------------------------------------------------ restriction witnesses

Restriction lemma510_witness(const KDnfSet& s, std::size_t i, const Term& t, Literal a, const Dnf& g) {
  if (i >= s.formulas.size() || !s.formulas[i].contains(t) || !t.contains(a))
    throw Error(ErrorCode::InvalidParam, "need a literal of a term of a formula of the set");
  if (!minimally_implies(s.formulas, g)) throw Error(ErrorCode::NotMinimal, "the set does not minimally imply G");
  std::vector<Dnf> changed = s.formulas;
  const Term shrunk = t.without(a);
  changed[i] = s.formulas[i].without(t).with(shrunk);
  std::vector<Dnf> all = changed;
  all.push_back(g);
  const std::vector<int> vars = vars_of(all);
  const uint64_t total = uint64_t{1} << vars.size();
  for (uint64_t x = 0; x < total; ++x) {
    std::vector<Literal> lits;
    for (std::size_t b = 0; b < vars.size(); ++b) lits.push_back(Literal(vars[b], (x >> b & 1) != 0));
    const Restriction alpha(lits);
    bool good = !evaluate(g, alpha);
    for (const Dnf& d : changed) good = good && evaluate(d, alpha);
    if (!good) continue;
    std::set<int> keep;
    for (int v : shrunk.vars()) keep.insert(v);
    for (std::size_t j = 0; j < s.formulas.size(); ++j) {
      if (j == i) continue;
      for (const Term& u : s.formulas[j].terms())
        if (evaluate(u, alpha)) {
          for (int v : u.vars()) keep.insert(v);
          break;
        }
    }
    std::vector<Literal> rho;
    for (Literal l : alpha.lits())
      if (keep.count(l.var())) rho.push_back(l);
    return Restriction(rho);
  }
  throw Error(ErrorCode::NotMinimal, "no assignment satisfies the shrunk set and falsifies G");
}

}  // namespace pcw
