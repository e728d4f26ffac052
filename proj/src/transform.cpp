#include "pcw/transform.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "pcw/caps.hpp"
#include "pcw/error.hpp"

namespace pcw {

Clause resolvent(const Clause& a, const Clause& b, int var) {
  Literal pos(var, true), neg(var, false);
  return a.without(pos).without(neg).unite(b.without(pos).without(neg));
}

int resolution_pivot(const Clause& p1, const Clause& p2, const Clause& r) {
  for (Literal l : p1.lits()) {
    if (!p2.contains(~l)) continue;
    Clause base = p1.without(l).unite(p2.without(~l));
    if (!base.subset_of(r)) continue;
    if (r.subset_of(base.with(l).with(~l))) return l.to_int();
  }
  return 0;
}

// ------------------------------------------------------------- builder

ResolutionBuilder::ResolutionBuilder(std::vector<Dnf> initial) {
  for (const Dnf& d : initial) live_.emplace(next_id_++, d.to_clause());
  pi_.initial = std::move(initial);
}

int ResolutionBuilder::add(const Clause& c) {
  live_.emplace(next_id_, c);
  return next_id_++;
}

int ResolutionBuilder::download(const Clause& c) {
  pi_.steps.push_back(Step::download(c));
  return add(c);
}

int ResolutionBuilder::resolve(int a, int b, int var) {
  Clause r = resolvent(clause(a), clause(b), var);
  pi_.steps.push_back(Step::infer(Rule::Cut, {a, b}, Dnf::from_clause(r)));
  return add(r);
}

int ResolutionBuilder::weaken(int a, const Clause& c) {
  pi_.steps.push_back(Step::infer(Rule::Weak, {a}, Dnf::from_clause(c)));
  return add(c);
}

void ResolutionBuilder::erase(int id) {
  if (!live_.erase(id)) throw Error(ErrorCode::InvalidInput, "builder erased a dead id");
  pi_.steps.push_back(Step::erase(id));
}

int ResolutionBuilder::find(const Clause& c) const {
  for (const auto& [id, x] : live_)
    if (x == c) return id;
  return 0;
}

// ------------------------------------------------------------ implied clauses

ClausePlan plan_implied_clause(const std::vector<Clause>& axioms, const Clause& target) {
  if (target.is_trivial()) throw Error(ErrorCode::TrivialClause, to_string(target));
  std::vector<Dnf> premises;
  for (const Clause& c : axioms) premises.push_back(Dnf::from_clause(c));
  if (!implies(premises, {Dnf::from_clause(target)}))
    throw Error(ErrorCode::NotImplied, to_string(target));

  std::vector<int> all = vars_of(premises);
  for (int v : target.vars()) all.push_back(v);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  const std::vector<int> tv = target.vars();
  std::vector<int> query;
  for (int v : all)
    if (!std::binary_search(tv.begin(), tv.end(), v)) query.push_back(v);

  int maxv = all.empty() ? 0 : all.back();
  std::vector<signed char> val(maxv + 1, -1);
  for (Literal l : target.lits()) val[l.var()] = l.positive() ? 0 : 1;

  auto falsified = [&](const Clause& c) {
    for (Literal l : c.lits()) {
      signed char x = val[l.var()];
      if (x < 0 || (x == 1) == l.positive()) return false;
    }
    return true;
  };

  ClausePlan plan;
  plan.target = target;
  std::function<int(std::size_t)> build = [&](std::size_t i) -> int {
    for (std::size_t a = 0; a < axioms.size(); ++a)
      if (falsified(axioms[a])) {
        plan.nodes.push_back({axioms[a], static_cast<int>(a), -1, -1, 0});
        return static_cast<int>(plan.nodes.size()) - 1;
      }
    if (i >= query.size()) throw Error(ErrorCode::NotImplied, to_string(target));
    int y = query[i];
    val[y] = 0;
    int left = build(i + 1);
    val[y] = -1;
    if (!plan.nodes[left].clause.contains(Literal(y, true))) return left;
    val[y] = 1;
    int right = build(i + 1);
    val[y] = -1;
    if (!plan.nodes[right].clause.contains(Literal(y, false))) return right;
    Clause r = resolvent(plan.nodes[left].clause, plan.nodes[right].clause, y);
    plan.nodes.push_back({r, -1, left, right, y});
    return static_cast<int>(plan.nodes.size()) - 1;
  };
  plan.root = build(0);
  return plan;
}

int emit_plan(const ClausePlan& plan, ResolutionBuilder& b, const std::vector<int>* axiom_ids) {
  // returns (id, owned) where owned ids are erased by the parent
  std::function<std::pair<int, bool>(int)> emit = [&](int n) -> std::pair<int, bool> {
    const PlanNode& node = plan.nodes[n];
    if (node.leaf >= 0) {
      if (axiom_ids) return {(*axiom_ids)[node.leaf], false};
      return {b.download(node.clause), true};
    }
    auto [l, lo] = emit(node.left);
    auto [r, ro] = emit(node.right);
    int id = b.resolve(l, r, node.pivot);
    if (lo) b.erase(l);
    if (ro) b.erase(r);
    return {id, true};
  };
  auto [id, owned] = emit(plan.root);
  if (plan.nodes[plan.root].clause == plan.target) {
    if (!owned) {
      // an axiom already equal to the target: copy it so the caller owns the result
      int w = b.weaken(id, plan.target);
      return w;
    }
    return id;
  }
  int w = b.weaken(id, plan.target);
  if (owned) b.erase(id);
  return w;
}

Derivation derive_implied_clause(const std::vector<Clause>& axioms, const Clause& c) {
  ClausePlan plan = plan_implied_clause(axioms, c);
  ResolutionBuilder b;
  emit_plan(plan, b);
  return b.take();
}

// ------------------------------------------------------------ helpers

namespace {

void require_resolution(const Cnf& F, const Derivation& pi, bool allow_weakening) {
  if (pi.k != 1 || pi.mode != Mode::Syntactic)
    throw Error(ErrorCode::InvalidInput, "expected a syntactic resolution derivation");
  for (const Step& s : pi.steps) {
    if (s.kind != StepKind::Erase && !s.formula.is_clause())
      throw Error(ErrorCode::InvalidInput, "non-clause line in a resolution derivation");
    if (s.kind == StepKind::Infer) {
      if (s.rule == Rule::Weak && !allow_weakening)
        throw Error(ErrorCode::InvalidInput, "weakening present");
      if (s.rule != Rule::Cut && s.rule != Rule::Weak)
        throw Error(ErrorCode::InvalidInput, std::string("rule ") + rule_name(s.rule) + " in a resolution derivation");
    }
  }
  try {
    check_derivation(F, pi);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidInput, e.message(), e.index());
  }
}

// Output lines shared by several input ids, erased when the last goes.
class SharedBuilder {
 public:
  explicit SharedBuilder(std::vector<Dnf> initial) : b_(std::move(initial)) {
    for (const auto& [id, c] : b_.live_clauses()) ref_[id] = 1;
  }
  int acquire(int out_id) {
    ++ref_[out_id];
    return out_id;
  }
  void release(int out_id) {
    if (--ref_[out_id] == 0) {
      ref_.erase(out_id);
      b_.erase(out_id);
    }
  }
  int download(const Clause& c) {
    int id = b_.download(c);
    ref_[id] = 1;
    return id;
  }
  int resolve(int a, int b, int var) {
    int id = b_.resolve(a, b, var);
    ref_[id] = 1;
    return id;
  }
  int weaken(int a, const Clause& c) {
    if (b_.clause(a) == c) return acquire(a);
    int id = b_.weaken(a, c);
    ref_[id] = 1;
    return id;
  }
  const Clause& clause(int id) const { return b_.clause(id); }
  bool has_empty() const { return b_.find(Clause()) != 0; }
  Derivation take() { return b_.take(); }

 private:
  ResolutionBuilder b_;
  std::map<int, int> ref_;
};

}  // namespace

// ------------------------------------------------------------ weakening elimination

Derivation eliminate_weakening(const Cnf& F, const Derivation& pi) {
  require_resolution(F, pi, true);
  SharedBuilder out(pi.initial);
  std::map<int, int> rep;  // input id -> output id
  std::map<int, Clause> in;
  int next = 1;
  for (const Dnf& d : pi.initial) {
    in[next] = d.to_clause();
    rep[next] = next;
    ++next;
  }
  for (const Step& s : pi.steps) {
    // after the empty clause only erasures are replayed
    if (s.kind != StepKind::Erase && out.has_empty()) {
      ++next;
      continue;
    }
    if (s.kind == StepKind::Erase) {
      if (!rep.count(s.erase_id)) continue;
      out.release(rep.at(s.erase_id));
      rep.erase(s.erase_id);
      in.erase(s.erase_id);
      continue;
    }
    Clause c = s.formula.to_clause();
    int id = next++;
    in[id] = c;
    if (s.kind == StepKind::Download) {
      rep[id] = out.download(c);
    } else if (s.rule == Rule::Weak) {
      rep[id] = out.acquire(rep.at(s.premises[0]));
    } else {
      int a = s.premises[0], b = s.premises[1];
      int l = resolution_pivot(in.at(a), in.at(b), c);
      if (l == 0) {
        std::swap(a, b);
        l = resolution_pivot(in.at(a), in.at(b), c);
      }
      Literal lit = Literal::from_int(l);
      int qa = rep.at(a), qb = rep.at(b);
      if (!out.clause(qa).contains(lit)) rep[id] = out.acquire(qa);
      else if (!out.clause(qb).contains(~lit)) rep[id] = out.acquire(qb);
      else rep[id] = out.resolve(qa, qb, lit.var());
    }
  }
  return out.take();
}

// ------------------------------------------------------------ semantic to syntactic

Cnf restrict_formula(const Cnf& F, const Restriction& rho) {
  std::vector<Clause> out;
  for (const Clause& c : F.clauses()) {
    auto r = restrict(c, rho);
    if (r.value == Value::True) continue;
    out.push_back(r.value == Value::False ? Clause() : r.residual);
  }
  return Cnf(std::move(out));
}

Derivation restrict_refutation(const Cnf& F, const Derivation& pi, const Restriction& rho) {
  require_resolution(F, pi, true);
  if (restrict(F, rho).value == Value::True)
    throw Error(ErrorCode::FormulaSatisfied, "restriction satisfies the formula");
  // Residual of a clause, or nullopt when satisfied.
  auto res = [&](const Clause& c) -> std::optional<Clause> {
    auto r = restrict(c, rho);
    if (r.value == Value::True) return std::nullopt;
    if (r.value == Value::False) return Clause();
    return r.residual;
  };
  std::vector<Dnf> init;
  std::map<int, Clause> in;
  std::map<int, int> rep;  // input id -> output id (absent: satisfied)
  int next = 1;
  std::vector<int> init_map;
  for (const Dnf& d : pi.initial) {
    Clause c = d.to_clause();
    in[next] = c;
    if (auto r = res(c)) {
      init.push_back(Dnf::from_clause(*r));
      init_map.push_back(next);
    }
    ++next;
  }
  SharedBuilder out(init);
  for (std::size_t i = 0; i < init_map.size(); ++i) rep[init_map[i]] = static_cast<int>(i) + 1;

  for (const Step& s : pi.steps) {
    if (s.kind != StepKind::Erase && out.has_empty()) {
      next += 1;
      continue;
    }
    if (s.kind == StepKind::Erase) {
      auto it = rep.find(s.erase_id);
      if (it != rep.end()) {
        out.release(it->second);
        rep.erase(it);
      }
      in.erase(s.erase_id);
      continue;
    }
    Clause c = s.formula.to_clause();
    int id = next++;
    in[id] = c;
    auto r = res(c);
    if (!r) continue;
    if (s.kind == StepKind::Download) {
      rep[id] = out.download(*r);
      continue;
    }
    if (s.rule == Rule::Weak) {
      // the premise is a subclause, so it is not satisfied either
      rep[id] = out.weaken(rep.at(s.premises[0]), *r);
      continue;
    }
    int a = s.premises[0], b = s.premises[1];
    int l = resolution_pivot(in.at(a), in.at(b), c);
    if (l == 0) {
      std::swap(a, b);
      l = resolution_pivot(in.at(a), in.at(b), c);
    }
    Literal lit = Literal::from_int(l);
    if (rho.assigns(lit.var())) {
      // exactly one premise survives and is a subclause of the residual
      int keep = rep.count(a) ? a : b;
      rep[id] = out.weaken(rep.at(keep), *r);
    } else {
      int q = out.resolve(rep.at(a), rep.at(b), lit.var());
      if (out.clause(q) == *r) {
        rep[id] = q;
      } else {
        rep[id] = out.weaken(q, *r);
        out.release(q);
      }
    }
  }
  return out.take();
}

// ------------------------------------------------------------ frugality

namespace {

struct Indexed {
  std::vector<std::set<Clause>> configs;  // distinct clauses of C_0..C_L
  std::vector<std::vector<Clause>> premises;  // per step, inference premises
  std::vector<Clause> formula;                // per step, downloaded/inferred/erased clause
  long first_empty = -1;                      // time of the first configuration with 0
};

Indexed index_derivation(const Cnf& F, const Derivation& pi) {
  Indexed ix;
  Replayer r(F, pi.k, pi.mode, pi.initial);
  auto snap = [&]() {
    std::set<Clause> s;
    for (const Dnf& d : r.distinct()) s.insert(d.to_clause());
    return s;
  };
  ix.configs.push_back(snap());
  if (ix.configs.back().count(Clause())) ix.first_empty = 0;
  for (const Step& s : pi.steps) {
    std::vector<Clause> ps;
    Clause f;
    if (s.kind == StepKind::Erase) {
      f = r.config().formulas.at(s.erase_id).to_clause();
    } else {
      f = s.formula.to_clause();
      for (int id : s.premises) ps.push_back(r.config().formulas.at(id).to_clause());
    }
    r.apply(s);
    ix.premises.push_back(std::move(ps));
    ix.formula.push_back(f);
    ix.configs.push_back(snap());
    if (ix.first_empty < 0 && ix.configs.back().count(Clause()))
      ix.first_empty = static_cast<long>(ix.configs.size()) - 1;
  }
  return ix;
}

}  // namespace

Derivation make_frugal(const Cnf& F, const Derivation& pi) {
  require_resolution(F, pi, false);
  if (!pi.initial.empty()) throw Error(ErrorCode::InvalidInput, "preloaded formulas are not supported");
  Indexed ix = index_derivation(F, pi);
  if (ix.first_empty < 0) throw Error(ErrorCode::InvalidInput, "not a refutation");
  long s = ix.first_empty;
  // backward pass: essential sets C'_t and the forward actions of each step
  std::vector<std::set<Clause>> ess(s + 1);
  ess[s] = {Clause()};
  struct Action {
    int kind;  // 0 none, 1 download, 2 infer
    Clause c;
    std::vector<Clause> erase_after;
  };
  std::vector<Action> act(s);
  for (long t = s - 1; t >= 0; --t) {
    const Step& st = pi.steps[t];
    const Clause& c = ix.formula[t];
    ess[t] = ess[t + 1];
    if (st.kind == StepKind::Download) {
      if (ess[t + 1].count(c)) act[t] = {1, c, {}};
      ess[t].erase(c);
    } else if (st.kind == StepKind::Infer && ess[t + 1].count(c)) {
      act[t] = {2, c, {}};
      ess[t].erase(c);
      for (const Clause& p : ix.premises[t]) {
        ess[t].insert(p);
        if (!ess[t + 1].count(p) &&
            std::find(act[t].erase_after.begin(), act[t].erase_after.end(), p) == act[t].erase_after.end())
          act[t].erase_after.push_back(p);
      }
    }
  }
  if (!ess[0].empty()) throw Error(ErrorCode::InvalidInput, "essential set at time 0 is not empty");
  ResolutionBuilder b;
  for (long t = 0; t < s; ++t) {
    const Action& a = act[t];
    if (a.kind == 1) {
      b.download(a.c);
    } else if (a.kind == 2) {
      int p1 = b.find(ix.premises[t][0]), p2 = b.find(ix.premises[t][1]);
      int l = resolution_pivot(ix.premises[t][0], ix.premises[t][1], a.c);
      if (l == 0) {
        std::swap(p1, p2);
        l = resolution_pivot(b.clause(p1), b.clause(p2), a.c);
      }
      b.resolve(p1, p2, std::abs(l));
      // the refutation ends with the first empty clause
      if (t + 1 == s) break;
      for (const Clause& e : a.erase_after) b.erase(b.find(e));
    }
  }
  return b.take();
}

bool is_frugal(const Cnf& F, const Derivation& pi) {
  require_resolution(F, pi, false);
  Indexed ix = index_derivation(F, pi);
  if (ix.first_empty < 0) throw Error(ErrorCode::InvalidInput, "not a refutation");
  long s = ix.first_empty;
  std::vector<std::set<Clause>> ess(s + 1);
  ess[s] = {Clause()};
  for (long t = s; t >= 1; --t) {
    for (const Clause& d : ess[t])
      if (ix.configs[t - 1].count(d)) ess[t - 1].insert(d);
    const Step& st = pi.steps[t - 1];
    if (st.kind == StepKind::Infer && ess[t].count(ix.formula[t - 1]))
      for (const Clause& p : ix.premises[t - 1]) ess[t - 1].insert(p);
  }
  auto all_essential = [&](long t) {
    return std::includes(ess[t].begin(), ess[t].end(), ix.configs[t].begin(), ix.configs[t].end());
  };
  std::vector<char> ok(s + 1, 0);
  ok[0] = all_essential(0);
  for (long t = 1; t <= s; ++t) {
    const Step& st = pi.steps[t - 1];
    ok[t] = all_essential(t) ||
            (st.kind == StepKind::Infer && ess[t].count(ix.formula[t - 1]) && all_essential(t - 1)) ||
            (st.kind == StepKind::Erase && ok[t - 1]);
  }
  // past the first empty clause only erasures keep a configuration essential
  for (std::size_t t = s + 1; t < ix.configs.size(); ++t)
    if (pi.steps[t - 1].kind != StepKind::Erase) return false;
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

}  // namespace pcw
