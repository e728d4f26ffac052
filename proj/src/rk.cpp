#include "pcw/rk.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "pcw/error.hpp"
#include "pcw/transform.hpp"

namespace pcw {

DnfBuilder::DnfBuilder(int k, std::vector<Dnf> initial) {
  pi_.k = k;
  for (const Dnf& d : initial) live_.emplace(next_id_++, d);
  pi_.initial = std::move(initial);
}

int DnfBuilder::download(const Clause& c) {
  pi_.steps.push_back(Step::download(c));
  live_.emplace(next_id_, Dnf::from_clause(c));
  return next_id_++;
}

int DnfBuilder::infer(Rule r, std::vector<int> premises, const Dnf& d) {
  pi_.steps.push_back(Step::infer(r, std::move(premises), d));
  live_.emplace(next_id_, d);
  return next_id_++;
}

void DnfBuilder::erase(int id) {
  if (!live_.erase(id)) throw Error(ErrorCode::InvalidInput, "builder erased a dead id");
  pi_.steps.push_back(Step::erase(id));
}

void DnfBuilder::rollback(const Mark& m) {
  pi_.steps.resize(m.steps);
  live_ = m.live;
  next_id_ = m.next;
}

// ------------------------------------------------------------ clauses

namespace {

Clause as_clause(const Dnf& d) { return d.to_clause(); }

int emit(DnfBuilder& b, const ClausePlan& plan) {
  std::function<int(int)> go = [&](int n) -> int {
    const PlanNode& node = plan.nodes[n];
    if (node.leaf >= 0) return b.download(node.clause);
    int l = go(node.left);
    int r = go(node.right);
    int id = b.infer(Rule::Cut, {l, r}, Dnf::from_clause(node.clause));
    b.erase(l);
    b.erase(r);
    return id;
  };
  int id = go(plan.root);
  if (plan.nodes[plan.root].clause == plan.target) return id;
  int w = b.infer(Rule::Weak, {id}, Dnf::from_clause(plan.target));
  b.erase(id);
  return w;
}

std::vector<Dnf> as_dnfs(const std::vector<Clause>& cs) {
  std::vector<Dnf> out;
  for (const Clause& c : cs) out.push_back(Dnf::from_clause(c));
  return out;
}

}  // namespace

int derive_clause(DnfBuilder& b, const std::vector<Clause>& axioms, const Clause& c) {
  if (!c.is_trivial()) return emit(b, plan_implied_clause(axioms, c));

  int x = 0;
  for (Literal l : c.lits())
    if (c.contains(~l)) {
      x = l.var();
      break;
    }
  const Clause e = c.without(Literal(x, true)).without(Literal(x, false));
  const std::vector<Dnf> premises = as_dnfs(axioms);
  std::vector<int> query;
  {
    const std::vector<int> cv = c.vars();
    for (int v : vars_of(premises))
      if (!std::binary_search(cv.begin(), cv.end(), v)) query.push_back(v);
  }

  // Leaves carry one of the two x literals; the two meet in a resolvent.
  std::function<int(std::size_t, const Clause&)> node = [&](std::size_t i, const Clause& negrho) -> int {
    for (bool pos : {true, false}) {
      Clause leaf = e.with(Literal(x, pos)).unite(negrho);
      if (!leaf.is_trivial()) {
        if (implies(premises, {Dnf::from_clause(leaf)})) return derive_clause(b, axioms, leaf);
        continue;
      }
      DnfBuilder::Mark m = b.mark();
      try {
        return derive_clause(b, axioms, leaf);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotDerivable) throw;
        b.rollback(m);
      }
    }
    if (i == query.size()) throw Error(ErrorCode::NotDerivable, "tautology " + to_string(c));
    const int y = query[i];
    int l = node(i + 1, negrho.with(Literal(y, true)));
    if (!as_clause(b.formula(l)).contains(Literal(y, true))) return l;
    int r = node(i + 1, negrho.with(Literal(y, false)));
    if (!as_clause(b.formula(r)).contains(Literal(y, false))) {
      b.erase(l);
      return r;
    }
    Clause res = resolvent(as_clause(b.formula(l)), as_clause(b.formula(r)), y);
    int id = b.infer(Rule::Cut, {l, r}, Dnf::from_clause(res));
    b.erase(l);
    b.erase(r);
    return id;
  };
  int root = node(0, Clause());
  if (as_clause(b.formula(root)) == c) return root;
  int w = b.infer(Rule::Weak, {root}, Dnf::from_clause(c));
  b.erase(root);
  return w;
}

// ------------------------------------------------------------ DNF from axioms

int derive_dnf(DnfBuilder& b, const std::vector<Clause>& axioms, const Dnf& d) {
  const std::vector<Term>& terms = d.terms();
  const std::size_t s = terms.size();
  for (const Term& t : terms)
    if (t.empty()) throw Error(ErrorCode::InvalidParam, "the DNF contains the empty term");
  std::vector<std::size_t> j(s, 0);

  // terms 0..sp-1 in full, then the chosen literal of every later term
  auto shape = [&](std::size_t sp, const Term* partial) {
    std::vector<Term> ts(terms.begin(), terms.begin() + sp);
    if (partial) ts.push_back(*partial);
    for (std::size_t i = sp + (partial ? 1 : 0); i < s; ++i) ts.push_back(Term(std::vector<Literal>{terms[i].lits()[j[i]]}));
    return Dnf(ts);
  };

  std::function<int(std::size_t)> rec = [&](std::size_t sp) -> int {
    if (sp == 0) return derive_clause(b, axioms, shape(0, nullptr).to_clause());
    const std::size_t i = sp - 1;
    const std::vector<Literal>& lits = terms[i].lits();
    j[i] = 0;
    int id = rec(sp - 1);
    for (std::size_t kp = 1; kp < lits.size(); ++kp) {
      j[i] = kp;
      int id2 = rec(sp - 1);
      Term prefix(std::vector<Literal>(lits.begin(), lits.begin() + kp + 1));
      int nid = b.infer(Rule::AndIntro, {id, id2}, shape(i, &prefix));
      b.erase(id);
      b.erase(id2);
      id = nid;
    }
    j[i] = 0;
    return id;
  };
  return rec(s);
}

Derivation derive_dnf(const Cnf& F, const Dnf& d, int k) {
  DnfBuilder b(k);
  derive_dnf(b, F.clauses(), d);
  return b.take();
}

// ------------------------------------------------------------ cutting away terms

int cut_away(DnfBuilder& b, int from, const Dnf& d1, int with) {
  int cur = from;
  const std::vector<Term> d2 = b.formula(with).terms();
  for (const Term& t : d1.terms()) {
    int k = with;
    bool owned = false;
    auto replace = [&](Rule r, const Dnf& next) {
      int id = b.infer(r, {k}, next);
      if (owned) b.erase(k);
      k = id;
      owned = true;
    };
    for (const Term& t2 : d2) {
      Literal pick;
      bool found = false;
      for (Literal a : t.lits())
        if (t2.contains(~a)) {
          pick = ~a;
          found = true;
          break;
        }
      if (!found) throw Error(ErrorCode::InvalidParam, "terms " + to_string(t) + " and " + to_string(t2) + " do not clash");
      Term unit(std::vector<Literal>{pick});
      if (t2 == unit) continue;
      replace(Rule::AndElim, b.formula(k).without(t2).with(unit));
    }
    Dnf units;
    for (Literal a : t.lits()) units = units.with(Term(std::vector<Literal>{~a}));
    if (!units.subset_of(b.formula(k))) replace(Rule::Weak, b.formula(k).unite(units));
    Dnf rest = b.formula(cur).without(t);
    for (const Term& x : b.formula(k).terms())
      if (!units.contains(x)) rest = rest.with(x);
    int id = b.infer(Rule::Cut, {cur, k}, rest);
    b.erase(cur);
    if (owned) b.erase(k);
    cur = id;
  }
  return cur;
}

Derivation refute_dnf_pair(const Dnf& d1, const Dnf& d2, int k) {
  DnfBuilder b(k, {d1, d2});
  cut_away(b, 1, d1, 2);
  return b.take();
}

Dnf clause_dnf(const Clause& c, const BooleanFunction& f) {
  Dnf out;
  for (Literal l : c.lits()) out = out.unite(literal_dnf(l, f));
  return out;
}

// ------------------------------------------------------------ pebbling in R(k)

Derivation compile_pebbling_rk(const Dag& g, const Pebbling& p, const BooleanFunction& f) {
  if (!p.black_only()) throw Error(ErrorCode::WhitePebblePresent, "compile needs a black pebbling");
  try {
    validate_pebbling(g, p);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPebbling, e.message(), e.index());
  }
  const int z = g.sink();
  DnfBuilder b(f.arity());
  std::map<int, int> held;
  for (const Move& m : p.moves) {
    const int v = m.vertex;
    if (m.kind == MoveKind::RemoveBlack) {
      b.erase(held.at(v));
      held.erase(v);
      continue;
    }
    std::vector<Literal> lits;
    for (int u : g.preds(v)) lits.push_back(Literal(u, false));
    lits.push_back(Literal(v, true));
    const Clause axiom(lits);
    const Cnf sub = substitute_clause(axiom, f);
    int id = derive_dnf(b, sub.clauses(), clause_dnf(axiom, f));
    for (int u : g.preds(v)) id = cut_away(b, id, literal_dnf(Literal(u, false), f), held.at(u));
    if (b.formula(id) != literal_dnf(Literal(v, true), f))
      throw Error(ErrorCode::InvalidInput, "vertex formula mismatch at " + std::to_string(v));
    held[v] = id;
    if (v == z) {
      const Cnf sink = substitute_clause(Clause{-z}, f);
      const Dnf neg = literal_dnf(Literal(z, false), f);
      cut_away(b, derive_dnf(b, sink.clauses(), neg), neg, held.at(z));
      return b.take();
    }
  }
  throw Error(ErrorCode::InvalidPebbling, "the sink is never black-pebbled");
}

}  // namespace pcw
