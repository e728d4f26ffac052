#include "pcw/logic.hpp"

#include <algorithm>
#include <sstream>

#include "pcw/caps.hpp"
#include "pcw/error.hpp"

namespace pcw {

Literal::Literal(int var, bool positive) {
  if (var < 1) throw Error(ErrorCode::InvalidParam, "variable ids start at 1");
  code_ = (static_cast<uint32_t>(var) << 1) | (positive ? 1u : 0u);
}

Literal Literal::from_int(int signed_lit) {
  if (signed_lit == 0) throw Error(ErrorCode::InvalidParam, "literal 0");
  return Literal(signed_lit > 0 ? signed_lit : -signed_lit, signed_lit > 0);
}

// ---------------------------------------------------------------- LitSet

template <typename Tag>
LitSet<Tag>::LitSet(std::initializer_list<int> signed_lits) {
  for (int l : signed_lits) lits_.push_back(Literal::from_int(l));
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

template <typename Tag>
LitSet<Tag>::LitSet(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

template <typename Tag>
LitSet<Tag> LitSet<Tag>::from_ints(const std::vector<int>& signed_lits) {
  std::vector<Literal> v;
  v.reserve(signed_lits.size());
  for (int l : signed_lits) v.push_back(Literal::from_int(l));
  return LitSet(std::move(v));
}

template <typename Tag>
bool LitSet<Tag>::contains(Literal l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

template <typename Tag>
bool LitSet<Tag>::is_trivial() const {
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var()) return true;
  return false;
}

template <typename Tag>
bool LitSet<Tag>::subset_of(const LitSet& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

template <typename Tag>
std::vector<int> LitSet<Tag>::vars() const {
  std::vector<int> v;
  for (Literal l : lits_)
    if (v.empty() || v.back() != l.var()) v.push_back(l.var());
  return v;
}

template <typename Tag>
LitSet<Tag> LitSet<Tag>::with(Literal l) const {
  LitSet r = *this;
  auto it = std::lower_bound(r.lits_.begin(), r.lits_.end(), l);
  if (it == r.lits_.end() || *it != l) r.lits_.insert(it, l);
  return r;
}

template <typename Tag>
LitSet<Tag> LitSet<Tag>::without(Literal l) const {
  LitSet r = *this;
  auto it = std::lower_bound(r.lits_.begin(), r.lits_.end(), l);
  if (it != r.lits_.end() && *it == l) r.lits_.erase(it);
  return r;
}

template <typename Tag>
LitSet<Tag> LitSet<Tag>::unite(const LitSet& other) const {
  LitSet r;
  std::set_union(lits_.begin(), lits_.end(), other.lits_.begin(), other.lits_.end(),
                 std::back_inserter(r.lits_));
  return r;
}

template <typename Tag>
std::vector<int> LitSet<Tag>::to_ints() const {
  std::vector<int> v;
  for (Literal l : lits_) v.push_back(l.to_int());
  return v;
}

template class LitSet<ClauseTag>;
template class LitSet<TermTag>;

// ------------------------------------------------------------------- Dnf

Dnf::Dnf(std::vector<Term> terms, bool keep_trivial) : terms_(std::move(terms)) {
  if (!keep_trivial)
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.is_trivial(); }),
                 terms_.end());
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());
}

Dnf Dnf::from_clause(const Clause& c) {
  std::vector<Term> t;
  for (Literal l : c.lits()) t.push_back(Term(std::vector<Literal>{l}));
  return Dnf(std::move(t));
}

Dnf Dnf::from_term(const Term& t) { return Dnf(std::vector<Term>{t}); }

bool Dnf::contains(const Term& t) const {
  return std::binary_search(terms_.begin(), terms_.end(), t);
}

std::size_t Dnf::width() const {
  std::size_t w = 0;
  for (const Term& t : terms_) w = std::max(w, t.size());
  return w;
}

std::size_t Dnf::total_size() const {
  std::size_t s = 0;
  for (const Term& t : terms_) s += t.size();
  return s;
}

std::vector<int> Dnf::vars() const {
  std::vector<int> v;
  for (const Term& t : terms_)
    for (Literal l : t.lits()) v.push_back(l.var());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool Dnf::is_clause() const {
  for (const Term& t : terms_)
    if (t.size() != 1) return false;
  return true;
}

Clause Dnf::to_clause() const {
  if (!is_clause()) throw Error(ErrorCode::InvalidInput, "formula is not a clause: " + to_string(*this));
  std::vector<Literal> lits;
  for (const Term& t : terms_) lits.push_back(t.lits()[0]);
  return Clause(std::move(lits));
}

Dnf Dnf::with(const Term& t) const {
  Dnf r = *this;
  auto it = std::lower_bound(r.terms_.begin(), r.terms_.end(), t);
  if (it == r.terms_.end() || *it != t) r.terms_.insert(it, t);
  return r;
}

Dnf Dnf::without(const Term& t) const {
  Dnf r = *this;
  auto it = std::lower_bound(r.terms_.begin(), r.terms_.end(), t);
  if (it != r.terms_.end() && *it == t) r.terms_.erase(it);
  return r;
}

Dnf Dnf::unite(const Dnf& other) const {
  Dnf r;
  std::set_union(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                 std::back_inserter(r.terms_));
  return r;
}

bool Dnf::subset_of(const Dnf& other) const {
  return std::includes(other.terms_.begin(), other.terms_.end(), terms_.begin(), terms_.end());
}

// ------------------------------------------------------------------- Cnf

Cnf::Cnf(std::vector<Clause> clauses, bool keep_trivial) : clauses_(std::move(clauses)) {
  if (!keep_trivial)
    clauses_.erase(std::remove_if(clauses_.begin(), clauses_.end(),
                                  [](const Clause& c) { return c.is_trivial(); }),
                   clauses_.end());
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

bool Cnf::contains(const Clause& c) const {
  return std::binary_search(clauses_.begin(), clauses_.end(), c);
}

std::size_t Cnf::total_size() const {
  std::size_t s = 0;
  for (const Clause& c : clauses_) s += c.size();
  return s;
}

std::size_t Cnf::width() const {
  std::size_t w = 0;
  for (const Clause& c : clauses_) w = std::max(w, c.size());
  return w;
}

std::vector<int> Cnf::vars() const {
  std::vector<int> v;
  for (const Clause& c : clauses_)
    for (Literal l : c.lits()) v.push_back(l.var());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Cnf Cnf::unite(const Cnf& other) const {
  std::vector<Clause> all = clauses_;
  all.insert(all.end(), other.clauses_.begin(), other.clauses_.end());
  return Cnf(std::move(all), true);
}

std::vector<Dnf> Cnf::as_dnfs() const {
  std::vector<Dnf> out;
  for (const Clause& c : clauses_) out.push_back(Dnf::from_clause(c));
  return out;
}

// ----------------------------------------------------------- Restriction

Restriction::Restriction(std::initializer_list<int> signed_lits) {
  for (int l : signed_lits) lits_.push_back(Literal::from_int(l));
  *this = Restriction(std::move(lits_));
}

Restriction::Restriction(std::vector<Literal> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i].var() == lits_[i - 1].var())
      throw Error(ErrorCode::InvalidParam, "restriction assigns a variable twice");
}

bool Restriction::contains(Literal l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

bool Restriction::assigns(int var) const {
  return contains(Literal(var, true)) || contains(Literal(var, false));
}

std::vector<int> Restriction::vars() const {
  std::vector<int> v;
  for (Literal l : lits_) v.push_back(l.var());
  return v;
}

Restriction Restriction::extend(Literal l) const {
  std::vector<Literal> v = lits_;
  v.push_back(l);
  return Restriction(std::move(v));
}

// ------------------------------------------------------------- restrict

Restricted<Literal> restrict(Literal a, const Restriction& rho) {
  if (rho.contains(a)) return {Value::True, a};
  if (rho.contains(~a)) return {Value::False, a};
  return {Value::Unfixed, a};
}

Restricted<Term> restrict(const Term& t, const Restriction& rho) {
  bool all_in = true;
  std::vector<Literal> rest;
  for (Literal l : t.lits()) {
    if (rho.contains(~l)) return {Value::False, Term()};
    if (!rho.contains(l)) {
      all_in = false;
      rest.push_back(l);
    }
  }
  if (all_in) return {Value::True, Term()};
  return {Value::Unfixed, Term(std::move(rest))};
}

Restricted<Clause> restrict(const Clause& c, const Restriction& rho) {
  bool all_false = true;
  std::vector<Literal> rest;
  for (Literal l : c.lits()) {
    if (rho.contains(l)) return {Value::True, Clause()};
    if (!rho.contains(~l)) {
      all_false = false;
      rest.push_back(l);
    }
  }
  if (all_false) return {Value::False, Clause()};
  return {Value::Unfixed, Clause(std::move(rest))};
}

Restricted<Dnf> restrict(const Dnf& d, const Restriction& rho) {
  std::vector<Term> rest;
  for (const Term& t : d.terms()) {
    auto r = restrict(t, rho);
    if (r.value == Value::True) return {Value::True, Dnf()};
    if (r.value == Value::Unfixed) rest.push_back(r.residual);
  }
  if (rest.empty()) return {Value::False, Dnf()};
  return {Value::Unfixed, Dnf(std::move(rest))};
}

Restricted<Cnf> restrict(const Cnf& f, const Restriction& rho) {
  std::vector<Clause> rest;
  for (const Clause& c : f.clauses()) {
    auto r = restrict(c, rho);
    if (r.value == Value::False) return {Value::False, Cnf()};
    if (r.value == Value::Unfixed) rest.push_back(r.residual);
  }
  if (rest.empty()) return {Value::True, Cnf()};
  return {Value::Unfixed, Cnf(std::move(rest), true)};
}

// ------------------------------------------------------------- evaluate

namespace {

template <typename E>
bool evaluate_total(const E& e, const Restriction& alpha) {
  auto r = restrict(e, alpha);
  if (r.value == Value::Unfixed)
    throw Error(ErrorCode::PartialAssignment, "assignment does not cover the formula");
  return r.value == Value::True;
}

}  // namespace

bool evaluate(Literal a, const Restriction& alpha) { return evaluate_total(a, alpha); }
bool evaluate(const Term& t, const Restriction& alpha) { return evaluate_total(t, alpha); }
bool evaluate(const Clause& c, const Restriction& alpha) { return evaluate_total(c, alpha); }
bool evaluate(const Dnf& d, const Restriction& alpha) { return evaluate_total(d, alpha); }
bool evaluate(const Cnf& f, const Restriction& alpha) { return evaluate_total(f, alpha); }

// ------------------------------------------------------------ implication

MaskEvaluator::MaskEvaluator(const std::vector<Dnf>& formulas, const std::vector<int>& vars) {
  starts_.push_back(0);
  for (const Dnf& d : formulas) {
    for (const Term& t : d.terms()) {
      MaskTerm m{0, 0};
      for (Literal l : t.lits()) {
        auto it = std::lower_bound(vars.begin(), vars.end(), l.var());
        if (it == vars.end() || *it != l.var())
          throw Error(ErrorCode::InvalidInput, "variable outside evaluator index");
        uint32_t bit = 1u << (it - vars.begin());
        (l.positive() ? m.pos : m.neg) |= bit;
      }
      terms_.push_back(m);
    }
    starts_.push_back(terms_.size());
  }
}

bool MaskEvaluator::eval(std::size_t formula, uint32_t alpha) const {
  for (std::size_t i = starts_[formula]; i < starts_[formula + 1]; ++i) {
    const MaskTerm& m = terms_[i];
    if ((m.pos & ~alpha) == 0 && (m.neg & alpha) == 0) return true;
  }
  return false;
}

bool MaskEvaluator::eval_all(uint32_t alpha) const {
  for (std::size_t f = 0; f + 1 < starts_.size(); ++f)
    if (!eval(f, alpha)) return false;
  return true;
}

std::vector<int> vars_of(const std::vector<Dnf>& formulas) {
  std::vector<int> v;
  for (const Dnf& d : formulas) {
    auto w = d.vars();
    v.insert(v.end(), w.begin(), w.end());
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool implies(const std::vector<Dnf>& a, const std::vector<Dnf>& b) {
  std::vector<Dnf> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::vector<int> vars = vars_of(all);
  if (static_cast<int>(vars.size()) > caps().implication_vars)
    throw Error(ErrorCode::TooManyVariables,
                std::to_string(vars.size()) + " variables exceed the implication cap");
  MaskEvaluator ea(a, vars), eb(b, vars);
  const uint64_t total = uint64_t{1} << vars.size();
  for (uint64_t x = 0; x < total; ++x) {
    uint32_t alpha = static_cast<uint32_t>(x);
    if (!ea.eval_all(alpha)) continue;
    if (!eb.eval_all(alpha)) return false;
  }
  return true;
}

bool implies(const Cnf& a, const std::vector<Dnf>& b) { return implies(a.as_dnfs(), b); }
bool implies(const Cnf& a, const Dnf& b) { return implies(a.as_dnfs(), std::vector<Dnf>{b}); }

bool satisfiable(const std::vector<Dnf>& a) { return !implies(a, std::vector<Dnf>{Dnf()}); }
bool satisfiable(const Cnf& a) { return satisfiable(a.as_dnfs()); }

Restriction negating_restriction(const Clause& c) {
  if (c.is_trivial()) throw Error(ErrorCode::TrivialClause, to_string(c));
  std::vector<Literal> v;
  for (Literal l : c.lits()) v.push_back(~l);
  return Restriction(std::move(v));
}

bool is_trivial(const Clause& c) { return c.is_trivial(); }
bool is_trivial(const Term& t) { return t.is_trivial(); }

// ---------------------------------------------------------- serialization

std::string to_string(const Term& t) {
  if (t.empty()) return "T";
  std::string s;
  for (std::size_t i = 0; i < t.lits().size(); ++i) {
    if (i) s += '^';
    s += std::to_string(t.lits()[i].to_int());
  }
  return s;
}

std::string to_string(const Dnf& d) {
  if (d.empty()) return "F";
  std::string s;
  for (std::size_t i = 0; i < d.terms().size(); ++i) {
    if (i) s += '|';
    s += to_string(d.terms()[i]);
  }
  return s;
}

std::string to_string(const Clause& c) {
  std::string s;
  for (Literal l : c.lits()) s += std::to_string(l.to_int()) + " ";
  return s + "0";
}

namespace {

int parse_int(const std::string& tok) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &pos);
  } catch (...) {
    throw Error(ErrorCode::Parse, "bad integer '" + tok + "'");
  }
  if (pos != tok.size()) throw Error(ErrorCode::Parse, "bad integer '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t' && c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Dnf parse_dnf(const std::string& s) {
  std::string trimmed;
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') trimmed += c;
  if (trimmed == "F") return Dnf();
  if (trimmed.empty()) throw Error(ErrorCode::Parse, "empty formula text");
  std::vector<Term> terms;
  for (const std::string& ts : split(trimmed, '|')) {
    if (ts == "T") {
      terms.push_back(Term());
      continue;
    }
    std::vector<Literal> lits;
    for (const std::string& ls : split(ts, '^')) {
      int v = parse_int(ls);
      if (v == 0) throw Error(ErrorCode::Parse, "literal 0 in formula");
      lits.push_back(Literal::from_int(v));
    }
    terms.push_back(Term(std::move(lits)));
  }
  return Dnf(std::move(terms));
}

Clause parse_clause(const std::string& s) {
  std::istringstream in(s);
  std::string tok;
  std::vector<Literal> lits;
  bool terminated = false;
  while (in >> tok) {
    if (terminated) throw Error(ErrorCode::Parse, "text after clause terminator");
    int v = parse_int(tok);
    if (v == 0) {
      terminated = true;
    } else {
      lits.push_back(Literal::from_int(v));
    }
  }
  if (!terminated) throw Error(ErrorCode::Parse, "clause not 0-terminated");
  return Clause(std::move(lits));
}

std::string to_dimacs(const Cnf& f, const std::vector<std::string>& comments, int declared_vars) {
  std::ostringstream out;
  for (const std::string& c : comments) out << "c " << c << "\n";
  int nv = declared_vars;
  if (nv < 0) {
    auto v = f.vars();
    nv = v.empty() ? 0 : v.back();
  }
  out << "p cnf " << nv << " " << f.size() << "\n";
  for (const Clause& c : f.clauses()) out << to_string(c) << "\n";
  return out.str();
}

DimacsFile parse_dimacs(const std::string& text) {
  DimacsFile out;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  long declared_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> cur;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') {
      std::string rest = line.substr(first + 1);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      out.comments.push_back(rest);
      continue;
    }
    if (line[first] == 'p') {
      std::istringstream h(line.substr(first));
      std::string p, fmt;
      h >> p >> fmt >> out.declared_vars >> declared_clauses;
      if (fmt != "cnf" || !h) throw Error(ErrorCode::Parse, "bad DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorCode::Parse, "clause before DIMACS header");
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      int v = parse_int(tok);
      if (v == 0) {
        clauses.push_back(Clause(std::move(cur)));
        cur.clear();
      } else {
        if (std::abs(v) > out.declared_vars)
          throw Error(ErrorCode::Parse, "literal exceeds declared variable count");
        cur.push_back(Literal::from_int(v));
      }
    }
  }
  if (!header) throw Error(ErrorCode::Parse, "missing DIMACS header");
  if (!cur.empty()) throw Error(ErrorCode::Parse, "unterminated clause");
  if (static_cast<long>(clauses.size()) != declared_clauses)
    throw Error(ErrorCode::Parse, "clause count does not match header");
  out.cnf = Cnf(std::move(clauses), true);
  return out;
}

}  // namespace pcw
