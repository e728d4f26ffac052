#include "pcw/substitution.hpp"

#include <algorithm>
#include <bit>

#include "pcw/caps.hpp"
#include "pcw/error.hpp"

namespace pcw {

BooleanFunction::BooleanFunction(FunctionKind kind, int arity, int k, std::vector<bool> table)
    : kind_(kind), arity_(arity), k_(k), table_(std::move(table)) {
  bool any0 = std::find(table_.begin(), table_.end(), false) != table_.end();
  bool any1 = std::find(table_.begin(), table_.end(), true) != table_.end();
  if (!any0 || !any1) throw Error(ErrorCode::InvalidParam, "constant Boolean function");
}

namespace {

void check_arity(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidParam, "arity must be at least 1");
  if (d > caps().substitution_arity)
    throw Error(ErrorCode::CapExceeded, "arity " + std::to_string(d) + " above cap");
}

template <typename Fn>
std::vector<bool> tabulate(int d, Fn fn) {
  std::vector<bool> t(std::size_t{1} << d);
  for (uint32_t i = 0; i < t.size(); ++i) t[i] = fn(i);
  return t;
}

}  // namespace

BooleanFunction BooleanFunction::identity() {
  return BooleanFunction(FunctionKind::Identity, 1, 0, {false, true});
}

BooleanFunction BooleanFunction::or_fn(int d) {
  check_arity(d);
  return BooleanFunction(FunctionKind::Or, d, 0, tabulate(d, [](uint32_t i) { return i != 0; }));
}

BooleanFunction BooleanFunction::and_fn(int d) {
  check_arity(d);
  uint32_t all = (1u << d) - 1;
  return BooleanFunction(FunctionKind::And, d, 0,
                         tabulate(d, [all](uint32_t i) { return i == all; }));
}

BooleanFunction BooleanFunction::xor_fn(int d) {
  check_arity(d);
  return BooleanFunction(FunctionKind::Xor, d, 0,
                         tabulate(d, [](uint32_t i) { return (std::popcount(i) & 1) != 0; }));
}

BooleanFunction BooleanFunction::threshold(int d, int k) {
  check_arity(d);
  if (k < 1 || k > d) throw Error(ErrorCode::InvalidParam, "threshold needs 1 <= k <= d");
  return BooleanFunction(FunctionKind::Threshold, d, k,
                         tabulate(d, [k](uint32_t i) { return std::popcount(i) >= k; }));
}

BooleanFunction BooleanFunction::custom(int d, std::vector<bool> table) {
  check_arity(d);
  if (table.size() != (std::size_t{1} << d))
    throw Error(ErrorCode::InvalidParam, "truth table size must be 2^d");
  return BooleanFunction(FunctionKind::Custom, d, 0, std::move(table));
}

BooleanFunction BooleanFunction::parse(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw Error(ErrorCode::InvalidParam, "missing parameter in '" + spec + "'");
    try {
      std::size_t pos = 0;
      int v = std::stoi(parts[i], &pos);
      if (pos != parts[i].size()) throw 0;
      return v;
    } catch (...) {
      throw Error(ErrorCode::InvalidParam, "bad number in '" + spec + "'");
    }
  };
  const std::string& name = parts[0];
  if (name == "identity" && parts.size() == 1) return identity();
  if (name == "or" && parts.size() == 2) return or_fn(num(1));
  if (name == "and" && parts.size() == 2) return and_fn(num(1));
  if (name == "xor" && parts.size() == 2) return xor_fn(num(1));
  if (name == "thr" && parts.size() == 3) return threshold(num(1), num(2));
  if (name == "custom" && parts.size() == 2) {
    const std::string& bits = parts[1];
    int d = std::countr_zero(bits.size());
    if (bits.empty() || (std::size_t{1} << d) != bits.size())
      throw Error(ErrorCode::InvalidParam, "custom table length must be a power of two");
    std::vector<bool> t;
    for (char c : bits) {
      if (c != '0' && c != '1') throw Error(ErrorCode::InvalidParam, "custom table must be 0/1");
      t.push_back(c == '1');
    }
    return custom(d, std::move(t));
  }
  throw Error(ErrorCode::InvalidParam, "unknown function '" + spec + "'");
}

std::string BooleanFunction::name() const {
  switch (kind_) {
    case FunctionKind::Identity: return "identity";
    case FunctionKind::Or: return "or:" + std::to_string(arity_);
    case FunctionKind::And: return "and:" + std::to_string(arity_);
    case FunctionKind::Xor: return "xor:" + std::to_string(arity_);
    case FunctionKind::Threshold: return "thr:" + std::to_string(arity_) + ":" + std::to_string(k_);
    case FunctionKind::Custom: {
      std::string s = "custom:";
      for (bool b : table_) s += b ? '1' : '0';
      return s;
    }
  }
  return "?";
}

namespace {

Clause subset_clause(uint32_t mask, int d, bool positive) {
  std::vector<Literal> lits;
  for (int j = 1; j <= d; ++j)
    if (mask & (1u << (j - 1))) lits.emplace_back(j, positive);
  return Clause(std::move(lits));
}

// Eq-style fallback: one clause excluding each assignment where the target is 0.
Cnf truth_table_clauses(const BooleanFunction& f, bool positive) {
  std::vector<Clause> out;
  int d = f.arity();
  for (uint32_t a = 0; a < (1u << d); ++a) {
    if (f(a) == positive) continue;
    std::vector<Literal> lits;
    for (int j = 1; j <= d; ++j) lits.emplace_back(j, ((a >> (j - 1)) & 1u) == 0);
    out.emplace_back(std::move(lits));
  }
  return Cnf(std::move(out));
}

}  // namespace

Cnf canonical_clauses(const BooleanFunction& f, bool positive) {
  int d = f.arity();
  uint32_t all = (1u << d) - 1;
  std::vector<Clause> out;
  switch (f.kind()) {
    case FunctionKind::Identity:
      out.push_back(Clause(std::vector<Literal>{Literal(1, positive)}));
      break;
    case FunctionKind::Or:
      if (positive) {
        out.push_back(subset_clause(all, d, true));
      } else {
        for (int j = 1; j <= d; ++j) out.push_back(subset_clause(1u << (j - 1), d, false));
      }
      break;
    case FunctionKind::And:
      if (positive) {
        for (int j = 1; j <= d; ++j) out.push_back(subset_clause(1u << (j - 1), d, true));
      } else {
        out.push_back(subset_clause(all, d, false));
      }
      break;
    case FunctionKind::Xor:
      // nu_i = 1 means the literal x_i appears positively.
      for (uint32_t nu = 0; nu <= all; ++nu) {
        bool in_pos = (std::popcount(nu) % 2) == (d % 2);
        if (in_pos != positive) continue;
        std::vector<Literal> lits;
        for (int j = 1; j <= d; ++j) lits.emplace_back(j, ((nu >> (j - 1)) & 1u) != 0);
        out.emplace_back(std::move(lits));
      }
      break;
    case FunctionKind::Threshold: {
      int size = positive ? d - f.threshold_k() + 1 : f.threshold_k();
      for (uint32_t s = 0; s <= all; ++s)
        if (std::popcount(s) == size) out.push_back(subset_clause(s, d, positive));
      break;
    }
    case FunctionKind::Custom:
      return truth_table_clauses(f, positive);
  }
  return Cnf(std::move(out));
}

Cnf substitute_literal(Literal a, const BooleanFunction& f) {
  int d = f.arity();
  std::vector<Clause> out;
  const Cnf base = canonical_clauses(f, a.positive());
  for (const Clause& c : base.clauses()) {
    std::vector<Literal> lits;
    for (Literal l : c.lits()) lits.emplace_back(fresh_var(a.var(), l.var(), d), l.positive());
    out.emplace_back(std::move(lits));
  }
  return Cnf(std::move(out));
}

std::vector<Clause> clause_set_disjunction(const std::vector<Clause>& a,
                                           const std::vector<Clause>& b) {
  std::vector<Clause> out;
  for (const Clause& x : a)
    for (const Clause& y : b) {
      Clause u = x.unite(y);
      if (!u.is_trivial()) out.push_back(std::move(u));
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cnf substitute_clause(const Clause& c, const BooleanFunction& f) {
  if (c.is_trivial()) throw Error(ErrorCode::TrivialClause, to_string(c));
  std::vector<Clause> acc{Clause()};
  for (Literal a : c.lits()) acc = clause_set_disjunction(acc, substitute_literal(a, f).clauses());
  return Cnf(std::move(acc));
}

Cnf substitute_formula(const Cnf& F, const BooleanFunction& f) {
  std::vector<Clause> out;
  for (const Clause& c : F.clauses()) {
    Cnf s = substitute_clause(c, f);
    out.insert(out.end(), s.clauses().begin(), s.clauses().end());
  }
  return Cnf(std::move(out));
}

Dnf literal_dnf(Literal a, const BooleanFunction& f) {
  std::vector<Term> terms;
  const Cnf opposite = substitute_literal(~a, f);
  for (const Clause& c : opposite.clauses()) {
    std::vector<Literal> lits;
    for (Literal l : c.lits()) lits.push_back(~l);
    terms.emplace_back(std::move(lits));
  }
  return Dnf(std::move(terms));
}

bool is_k_non_authoritarian(const BooleanFunction& f, int k) {
  int d = f.arity();
  uint32_t all = (1u << d) - 1;
  for (uint32_t dom = 0; dom <= all; ++dom) {
    if (std::popcount(dom) > k) continue;
    // values ranges over the subsets of dom
    for (uint32_t val = dom;; val = (val - 1) & dom) {
      bool seen0 = false, seen1 = false;
      for (uint32_t a = 0; a <= all && !(seen0 && seen1); ++a) {
        if ((a & dom) != val) continue;
        (f(a) ? seen1 : seen0) = true;
      }
      if (!(seen0 && seen1)) return false;
      if (val == 0) break;
    }
  }
  return true;
}

}  // namespace pcw
