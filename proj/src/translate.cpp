#include "pcw/translate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>

#include "pcw/error.hpp"
#include "pcw/transform.hpp"

namespace pcw {

// ------------------------------------------------------------ formulas

PebblingFormula pebbling_formula(const Dag& g) {
  validate_dag(g);
  std::vector<Clause> cs;
  for (int v = 1; v <= g.size(); ++v) {
    std::vector<Literal> lits;
    for (int u : g.preds(v)) lits.push_back(Literal(u, false));
    lits.push_back(Literal(v, true));
    cs.push_back(Clause(lits));
  }
  cs.push_back(Clause{-g.sink()});
  PebblingFormula p{g, Cnf(cs), std::nullopt, Cnf()};
  p.cnf = p.base;
  return p;
}

PebblingFormula pebbling_formula(const Dag& g, const BooleanFunction& f) {
  PebblingFormula p = pebbling_formula(g);
  p.f = f;
  p.cnf = substitute_formula(p.base, f);
  return p;
}

std::string to_dimacs(const PebblingFormula& p) {
  int d = p.f ? p.f->arity() : 1;
  std::string name = p.f ? p.f->name() : "identity";
  std::vector<std::string> comments;
  if (!p.graph.name().empty()) comments.push_back("graph " + p.graph.name());
  comments.push_back("substitution f=" + name + " d=" + std::to_string(d) +
                     " base_vars=" + std::to_string(p.graph.size()));
  return to_dimacs(p.cnf, comments, p.graph.size() * d);
}

int axiom_vertex(const Dag& g, const Clause& axiom) {
  for (Literal l : axiom.lits())
    if (l.positive()) return l.var();
  return g.sink();
}

// ------------------------------------------------------------ pebbling to refutation

Derivation compile_pebbling(const Dag& g, const Pebbling& p, const BooleanFunction& f) {
  if (!p.black_only()) throw Error(ErrorCode::WhitePebblePresent, "compile needs a black pebbling");
  try {
    validate_pebbling(g, p);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPebbling, e.message(), e.index());
  }
  const int z = g.sink();
  ResolutionBuilder b;
  std::map<int, std::vector<int>> held;  // vertex -> ids of v[f]

  auto vertex_set = [&](int v) { return substitute_literal(Literal(v, true), f).clauses(); };
  // Derive every clause of `targets` from the live ids in `have` plus the
  // downloaded clauses of `axiom`, which are erased afterwards.
  auto derive = [&](std::vector<int> have, const Cnf& axiom, const std::vector<Clause>& targets) {
    std::vector<int> downloaded;
    for (const Clause& c : axiom.clauses()) {
      int id = b.download(c);
      have.push_back(id);
      downloaded.push_back(id);
    }
    std::vector<Clause> pool;
    for (int id : have) pool.push_back(b.clause(id));
    std::vector<int> out;
    for (const Clause& t : targets) out.push_back(emit_plan(plan_implied_clause(pool, t), b, &have));
    for (int id : downloaded) b.erase(id);
    return out;
  };

  for (const Move& m : p.moves) {
    int v = m.vertex;
    if (m.kind == MoveKind::RemoveBlack) {
      for (int id : held[v]) b.erase(id);
      held.erase(v);
      continue;
    }
    std::vector<Clause> targets = vertex_set(v);
    if (g.preds(v).empty()) {
      for (const Clause& c : targets) held[v].push_back(b.download(c));
    } else {
      std::vector<int> have;
      std::vector<Literal> axiom;
      for (int u : g.preds(v)) {
        have.insert(have.end(), held[u].begin(), held[u].end());
        axiom.push_back(Literal(u, false));
      }
      axiom.push_back(Literal(v, true));
      held[v] = derive(have, substitute_clause(Clause(axiom), f), targets);
    }
    if (v == z) {
      derive(held[z], substitute_clause(Clause{-z}, f), {Clause()});
      return b.take();
    }
  }
  throw Error(ErrorCode::InvalidPebbling, "the sink is never black-pebbled");
}

// ------------------------------------------------------------ resolution translation

namespace {

std::set<Clause> as_set(const std::vector<Clause>& v) { return {v.begin(), v.end()}; }

// A live id whose clause is a subset of c, preferring c itself.
int live_subclause(const ResolutionBuilder& b, const Clause& c) {
  int best = 0;
  std::size_t best_size = 0;
  for (const auto& [id, x] : b.live_clauses())
    if (x.subset_of(c) && (best == 0 || x.size() > best_size)) {
      best = id;
      best_size = x.size();
    }
  return best;
}

[[noreturn]] void internal(const std::string& what, long step) {
  throw Error(ErrorCode::InvalidInput, "translation: " + what, step);
}

}  // namespace

Derivation translate_refutation(const Derivation& pi_f, const Cnf& F, const BooleanFunction& f,
                                ProjectedSequence* projected) {
  if (pi_f.k != 1) throw Error(ErrorCode::InvalidInput, "translation needs a k = 1 refutation");
  if (!pi_f.initial.empty()) throw Error(ErrorCode::InvalidInput, "preloaded formulas are not supported");
  const Cnf Ff = substitute_formula(F, f);
  try {
    check_refutation(Ff, pi_f);
  } catch (const Error& e) {
    if (is_cap_error(e.code())) throw;
    throw Error(ErrorCode::InvalidInput, e.message(), e.index());
  }
  std::vector<std::vector<Dnf>> configs = configurations(Ff, pi_f);
  std::size_t s = 0;
  while (std::find(configs[s].begin(), configs[s].end(), Dnf()) == configs[s].end()) ++s;

  std::map<Clause, Clause> axiom_of;  // clause of F[f] -> clause of F
  for (const Clause& a : F.clauses())
    for (const Cnf sub = substitute_clause(a, f); const Clause& c : sub.clauses()) axiom_of.emplace(c, a);

  const std::vector<int> base = F.vars();
  auto projector = [&](std::size_t t) {
    return std::make_unique<Projector>(configs[t], base, f, ProjectionMode::Subset);
  };
  std::unique_ptr<Projector> prev = projector(0);
  std::vector<Clause> prev_set = prev->clauses();
  if (!prev_set.empty()) internal("projection of the empty configuration is not empty", 0);
  if (projected) projected->assign(1, prev_set);

  ResolutionBuilder b;
  for (std::size_t t = 1; t <= s; ++t) {
    const Step& st = pi_f.steps[t - 1];
    const long idx = static_cast<long>(t) - 1;
    std::unique_ptr<Projector> cur = projector(t);
    std::vector<Clause> cur_set = cur->clauses();
    std::set<Clause> before = as_set(prev_set), after = as_set(cur_set);
    std::vector<Clause> added;
    for (const Clause& c : cur_set)
      if (!before.count(c)) added.push_back(c);

    if (st.kind == StepKind::Erase && !added.empty()) internal("erasure added a projected clause", idx);
    if (st.kind == StepKind::Infer) {
      for (const Clause& c : added) {
        int id = live_subclause(b, c);
        if (!id) internal("no subclause for " + to_string(c), idx);
        b.weaken(id, c);
      }
    }
    if (st.kind == StepKind::Download && !added.empty()) {
      const Clause D = st.formula.to_clause();
      auto ax = axiom_of.find(D);
      if (ax == axiom_of.end()) internal("download is not an axiom of F[f]", idx);
      const Clause& A = ax->second;
      int aid = 0;
      for (const Clause& c : added) {
        if (prev->implied(c)) {
          int id = live_subclause(b, c);
          if (!id) internal("no subclause for " + to_string(c), idx);
          b.weaken(id, c);
          continue;
        }
        if (!aid) aid = b.download(A);
        if (A.subset_of(c)) {
          if (A != c) b.weaken(aid, c);
          continue;
        }
        std::vector<Literal> rest;
        for (Literal a : A.lits())
          if (!c.contains(a)) rest.push_back(a);
        int cur_id = b.weaken(aid, c.unite(A));
        if (b.clause(cur_id).is_trivial()) internal("weakened axiom is trivial", idx);
        for (Literal a : rest) {
          Clause target = c.with(~a);
          int sid = live_subclause(b, target);
          if (!sid) internal("no subclause for " + to_string(target), idx);
          bool owned = b.clause(sid) != target;
          int tid = owned ? b.weaken(sid, target) : sid;
          int r = b.resolve(cur_id, tid, a.var());
          b.erase(cur_id);
          if (owned) b.erase(tid);
          cur_id = r;
        }
        if (b.clause(cur_id) != c) internal("schedule did not reach " + to_string(c), idx);
      }
    }
    // drop what the projection lost; a downloaded axiom stays only if projected
    std::vector<int> drop;
    std::set<Clause> kept;
    for (const auto& [id, c] : b.live_clauses()) {
      if (!after.count(c) || kept.count(c))
        drop.push_back(id);
      else
        kept.insert(c);
    }
    for (int id : drop) b.erase(id);
    if (kept != after) internal("blackboard differs from the projection", idx);

    if (projected) projected->push_back(cur_set);
    prev = std::move(cur);
    prev_set = std::move(cur_set);
  }
  if (!as_set(prev_set).count(Clause())) internal("final projection lacks the empty clause", -1);
  return b.take();
}

// ------------------------------------------------------------ refutation to pebbling

namespace {

void push(const Dag& g, PebbleConfig& cfg, Pebbling& out, MoveKind k, int v, long step) {
  Move m{k, v};
  try {
    cfg = apply_move(g, cfg, m);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidInput,
                std::string("extracted move ") + to_string(m) + " at proof step " +
                    std::to_string(step) + ": " + e.what());
  }
  out.moves.push_back(m);
}

}  // namespace

Pebbling frugal_to_pebbling(const Dag& g, const Cnf& peb, const Derivation& frugal) {
  const int z = g.sink();
  Replayer r(peb, 1, Mode::Syntactic, frugal.initial);
  PebbleConfig cfg;
  Pebbling out;
  bool sink_kept = false;
  long idx = 0;
  for (const Step& st : frugal.steps) {
    if (st.kind == StepKind::Download) {
      Clause a = st.formula.to_clause();
      int v = axiom_vertex(g, a);
      bool sink_axiom = a == Clause{-z};
      if (sink_axiom) {
        if (!cfg.black.count(z) && !cfg.white.count(z)) push(g, cfg, out, MoveKind::PlaceWhite, z, idx);
      } else {
        for (int u : g.preds(v))
          if (!cfg.black.count(u) && !cfg.white.count(u)) push(g, cfg, out, MoveKind::PlaceWhite, u, idx);
        if (!cfg.black.count(v)) {
          if (cfg.white.count(v)) push(g, cfg, out, MoveKind::RemoveWhite, v, idx);
          push(g, cfg, out, MoveKind::PlaceBlack, v, idx);
        }
        if (v == z) sink_kept = true;
      }
    }
    r.apply(st);

    // the clause-to-pebble translation
    std::set<int> vars, positive;
    for (const Dnf& d : r.distinct())
      for (const Clause c = d.to_clause(); Literal l : c.lits()) {
        vars.insert(l.var());
        if (l.positive()) positive.insert(l.var());
      }
    PebbleConfig want;
    for (int x : vars) {
      if (cfg.black.count(x) || positive.count(x))
        want.black.insert(x);
      else
        want.white.insert(x);
    }
    if (sink_kept) {
      want.white.erase(z);
      want.black.insert(z);
    }
    for (int x : want.white)
      if (!cfg.white.count(x)) push(g, cfg, out, MoveKind::PlaceWhite, x, idx);
    for (int x : want.black)
      if (!cfg.black.count(x)) push(g, cfg, out, MoveKind::PlaceBlack, x, idx);
    std::vector<int> gone_white, gone_black;
    for (int x : cfg.white)
      if (!want.white.count(x)) gone_white.push_back(x);
    for (int x : cfg.black)
      if (!want.black.count(x)) gone_black.push_back(x);
    for (int x : gone_white) push(g, cfg, out, MoveKind::RemoveWhite, x, idx);
    for (int x : gone_black) push(g, cfg, out, MoveKind::RemoveBlack, x, idx);
    ++idx;
  }
  return out;
}

Extraction extract_pebbling(const Derivation& pi, const Dag& g, const BooleanFunction& f,
                            bool require_space_bound) {
  if (require_space_bound && !is_k_non_authoritarian(f, 1))
    throw Error(ErrorCode::AuthoritarianFunction, f.name() + " is authoritarian");
  PebblingFormula pf = pebbling_formula(g, f);
  Extraction ex;
  try {
    ex.source = check_refutation(pf.cnf, pi);
  } catch (const Error& e) {
    if (is_cap_error(e.code())) throw;
    throw Error(ErrorCode::InvalidInput, e.message(), e.index());
  }
  if (f.kind() == FunctionKind::Identity && pi.mode == Mode::Syntactic && pi.k == 1 &&
      pi.initial.empty())
    ex.translated = pi;
  else
    ex.translated = translate_refutation(pi, pf.base, f);
  ex.frugal = make_frugal(pf.base, eliminate_weakening(pf.base, ex.translated));
  // close with erasures so the last configuration is {0}
  {
    Replayer r(pf.base, 1, Mode::Syntactic);
    for (const Step& st : ex.frugal.steps) r.apply(st);
    std::vector<int> ids;
    for (const auto& [id, d] : r.config().formulas)
      if (!d.empty()) ids.push_back(id);
    for (int id : ids) ex.frugal.steps.push_back(Step::erase(id));
  }
  ex.frugal_report = check_refutation(pf.base, ex.frugal);
  ex.pebbling = frugal_to_pebbling(g, pf.base, ex.frugal);
  return ex;
}

// ------------------------------------------------------------ audit

AuditReport project_invariant_audit(const Derivation& pi_f, const Cnf& F, const BooleanFunction& f) {
  if (!is_k_non_authoritarian(f, 1))
    throw Error(ErrorCode::AuthoritarianFunction, f.name() + " is authoritarian");
  const Cnf Ff = substitute_formula(F, f);
  AuditReport rep;
  const int d = f.arity();
  std::vector<std::vector<Dnf>> configs = configurations(Ff, pi_f);
  for (std::size_t t = 0; t < configs.size(); ++t) {
    ++rep.configurations;
    std::vector<Clause> proj = Projector(configs[t], F.vars(), f, ProjectionMode::Subset, true).clauses();
    if (proj.empty()) continue;
    ++rep.nonempty;
    long vs = variable_space(proj);
    rep.max_projection_vars = std::max(rep.max_projection_vars, vs);
    if (static_cast<long>(configs[t].size()) <= vs) {
      ++rep.space_violations;
      rep.messages.push_back("t=" + std::to_string(t) + ": |D|=" + std::to_string(configs[t].size()) +
                             " VarSp=" + std::to_string(vs));
    }
    std::set<int> blocks;
    for (int v : vars_of(configs[t])) blocks.insert(base_var(v, d));
    std::set<int> seen;
    for (const Clause& c : proj)
      for (int x : c.vars())
        if (!blocks.count(x) && seen.insert(x).second) {
          ++rep.presence_violations;
          rep.messages.push_back("t=" + std::to_string(t) + ": block of " + std::to_string(x) +
                                 " untouched");
        }
  }
  return rep;
}

}  // namespace pcw
