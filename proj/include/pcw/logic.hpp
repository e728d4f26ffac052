#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace pcw {

// A literal over a positive variable id. Ordering is ascending variable id,
// negative before positive.
class Literal {
 public:
  Literal() = default;
  Literal(int var, bool positive);
  static Literal from_int(int signed_lit);

  int var() const { return static_cast<int>(code_ >> 1); }
  bool positive() const { return (code_ & 1u) != 0; }
  Literal operator~() const { return from_code(code_ ^ 1u); }
  int to_int() const { return positive() ? var() : -var(); }
  uint32_t code() const { return code_; }
  static Literal from_code(uint32_t c) {
    Literal l;
    l.code_ = c;
    return l;
  }

  auto operator<=>(const Literal&) const = default;

 private:
  uint32_t code_ = 3;
};

struct ClauseTag {};
struct TermTag {};

// Sorted, duplicate-free literal set. Clause and Term share the layout.
template <typename Tag>
class LitSet {
 public:
  LitSet() = default;
  LitSet(std::initializer_list<int> signed_lits);
  explicit LitSet(std::vector<Literal> lits);
  static LitSet from_ints(const std::vector<int>& signed_lits);

  const std::vector<Literal>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Literal l) const;
  bool is_trivial() const;
  bool subset_of(const LitSet& other) const;
  std::vector<int> vars() const;
  LitSet with(Literal l) const;
  LitSet without(Literal l) const;
  LitSet unite(const LitSet& other) const;
  std::vector<int> to_ints() const;

  auto operator<=>(const LitSet&) const = default;
  bool operator==(const LitSet&) const = default;

 private:
  std::vector<Literal> lits_;
};

using Clause = LitSet<ClauseTag>;
using Term = LitSet<TermTag>;

extern template class LitSet<ClauseTag>;
extern template class LitSet<TermTag>;

// k-DNF formula: a set of terms. No terms is the contradiction 0.
class Dnf {
 public:
  Dnf() = default;
  explicit Dnf(std::vector<Term> terms, bool keep_trivial = true);
  static Dnf from_clause(const Clause& c);
  static Dnf from_term(const Term& t);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool contains(const Term& t) const;
  std::size_t width() const;         // widest term
  std::size_t total_size() const;    // literals with repetition
  std::vector<int> vars() const;
  // True iff every term is a single literal, i.e. the formula is a clause.
  bool is_clause() const;
  Clause to_clause() const;
  Dnf with(const Term& t) const;
  Dnf without(const Term& t) const;
  Dnf unite(const Dnf& other) const;
  bool subset_of(const Dnf& other) const;

  auto operator<=>(const Dnf&) const = default;
  bool operator==(const Dnf&) const = default;

 private:
  std::vector<Term> terms_;
};

// CNF formula: a set of clauses; canonical lexicographic clause order.
class Cnf {
 public:
  Cnf() = default;
  explicit Cnf(std::vector<Clause> clauses, bool keep_trivial = false);

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }
  bool contains(const Clause& c) const;
  std::size_t total_size() const;
  std::size_t width() const;
  std::vector<int> vars() const;
  Cnf unite(const Cnf& other) const;
  std::vector<Dnf> as_dnfs() const;

  bool operator==(const Cnf&) const = default;

 private:
  std::vector<Clause> clauses_;
};

// At most one literal per variable.
class Restriction {
 public:
  Restriction() = default;
  Restriction(std::initializer_list<int> signed_lits);
  explicit Restriction(std::vector<Literal> lits);

  const std::vector<Literal>& lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool contains(Literal l) const;
  bool assigns(int var) const;
  bool satisfies(Literal l) const { return contains(l); }
  bool falsifies(Literal l) const { return contains(~l); }
  std::vector<int> vars() const;
  Restriction extend(Literal l) const;

  bool operator==(const Restriction&) const = default;

 private:
  std::vector<Literal> lits_;
};

enum class Value { False, True, Unfixed };

template <typename T>
struct Restricted {
  Value value;
  T residual;  // meaningful only when value == Unfixed
};

Restricted<Literal> restrict(Literal a, const Restriction& rho);
Restricted<Term> restrict(const Term& t, const Restriction& rho);
Restricted<Clause> restrict(const Clause& c, const Restriction& rho);
Restricted<Dnf> restrict(const Dnf& d, const Restriction& rho);
Restricted<Cnf> restrict(const Cnf& f, const Restriction& rho);

// alpha must assign every variable of the entity.
bool evaluate(Literal a, const Restriction& alpha);
bool evaluate(const Term& t, const Restriction& alpha);
bool evaluate(const Clause& c, const Restriction& alpha);
bool evaluate(const Dnf& d, const Restriction& alpha);
bool evaluate(const Cnf& f, const Restriction& alpha);

// Brute force over Vars(a ∪ b); a set of formulas is their conjunction.
bool implies(const std::vector<Dnf>& a, const std::vector<Dnf>& b);
bool implies(const Cnf& a, const std::vector<Dnf>& b);
bool implies(const Cnf& a, const Dnf& b);
bool satisfiable(const std::vector<Dnf>& a);
bool satisfiable(const Cnf& a);

Restriction negating_restriction(const Clause& c);

bool is_trivial(const Clause& c);
bool is_trivial(const Term& t);

std::vector<int> vars_of(const std::vector<Dnf>& formulas);

// Formula text: terms joined by '|', literals by '^', "F" is 0, "T" the
// empty term.
std::string to_string(const Term& t);
std::string to_string(const Dnf& d);
std::string to_string(const Clause& c);  // DIMACS style, 0-terminated
Dnf parse_dnf(const std::string& s);
Clause parse_clause(const std::string& s);

struct DimacsFile {
  Cnf cnf;
  int declared_vars = 0;
  std::vector<std::string> comments;  // text after the leading "c "
};

std::string to_dimacs(const Cnf& f, const std::vector<std::string>& comments = {},
                      int declared_vars = -1);
DimacsFile parse_dimacs(const std::string& text);

// Bitmask evaluation over a compressed variable index (at most 32 vars).
class MaskEvaluator {
 public:
  MaskEvaluator(const std::vector<Dnf>& formulas, const std::vector<int>& vars);
  // Bit i of alpha is the value of vars[i].
  bool eval(std::size_t formula, uint32_t alpha) const;
  bool eval_all(uint32_t alpha) const;
  std::size_t formula_count() const { return starts_.size() - 1; }

 private:
  struct MaskTerm {
    uint32_t pos;
    uint32_t neg;
  };
  std::vector<MaskTerm> terms_;
  std::vector<std::size_t> starts_;
};

}  // namespace pcw
