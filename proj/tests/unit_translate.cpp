#include <functional>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pcw/error.hpp"
#include "pcw/transform.hpp"
#include "pcw/translate.hpp"

using namespace pcw;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Parse;
}

std::vector<Dnf> dnfs(std::initializer_list<Clause> cs) {
  std::vector<Dnf> out;
  for (const Clause& c : cs) out.push_back(Dnf::from_clause(c));
  return out;
}

std::function<bool(uint32_t)> table_of(const BooleanFunction& f) {
  std::vector<bool> t = f.table();
  return [t](uint32_t x) { return static_cast<bool>(t[x]); };
}

long downloads(const Derivation& pi) {
  long n = 0;
  for (const Step& s : pi.steps) n += s.kind == StepKind::Download;
  return n;
}

}  // namespace

TEST_CASE("pebbling formulas") {
  PebblingFormula p = pebbling_formula(make_pyramid(1));
  CHECK(p.base == Cnf({Clause{1}, Clause{2}, Clause{-1, -2, 3}, Clause{-3}}));
  CHECK(pebbling_formula(make_path(2)).base == Cnf({Clause{1}, Clause{-1, 2}, Clause{-2}}));
  for (const char* name : {"path:3", "pyramid:2", "bitrev:1", "tree:2"}) {
    Dag g = make_graph(name);
    PebblingFormula f = pebbling_formula(g, BooleanFunction::xor_fn(2));
    CHECK(static_cast<int>(f.base.size()) == g.size() + 1);
    CHECK(oracle::unsat(f.base.clauses()));
    if (g.size() <= 6) CHECK(oracle::unsat(f.cnf.clauses()));
  }
  std::string text = to_dimacs(pebbling_formula(make_pyramid(2), BooleanFunction::xor_fn(2)));
  CHECK(text.find("c substitution f=xor:2 d=2 base_vars=6") != std::string::npos);
  CHECK(parse_dimacs(text).declared_vars == 12);
}

TEST_CASE("projection goldens") {
  BooleanFunction x2 = BooleanFunction::xor_fn(2);
  Cnf F({Clause{1, -2}});
  std::vector<Dnf> eq21;
  for (const Cnf sub = substitute_clause(Clause{1, -2}, x2); const Clause& c : sub.clauses()) eq21.push_back(Dnf::from_clause(c));
  CHECK(project(eq21, F, x2) == std::vector<Clause>{Clause{1, -2}});
  CHECK(project({}, F, x2).empty());
  CHECK(project(dnfs({Clause{1, 2}}), Cnf({Clause{1}}), x2).empty());
  CHECK(project(eq21, F, x2, ProjectionMode::WholeSet) == std::vector<Clause>{Clause{1, -2}});
  // the empty clause is projected exactly by unsatisfiable configurations
  CHECK(project(dnfs({Clause{1}, Clause{-1}}), Cnf({Clause{1}}), x2) == std::vector<Clause>{Clause()});
  CHECK(precisely_implies(eq21, Clause{1, -2}, x2));
  CHECK_FALSE(precisely_implies(eq21, Clause{1, -2, 3}, x2));
}

TEST_CASE("projection matches the subset oracle") {
  std::mt19937 rng(7);
  std::vector<BooleanFunction> fs = {BooleanFunction::xor_fn(2), BooleanFunction::or_fn(2),
                                     BooleanFunction::and_fn(2), BooleanFunction::identity()};
  int checked = 0;
  for (const BooleanFunction& f : fs) {
    const int d = f.arity();
    const int nbase = d == 1 ? 3 : 2;
    std::vector<int> base;
    for (int x = 1; x <= nbase; ++x) base.push_back(x);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Dnf> D;
      int m = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < m; ++i) {
        int w = 1 + static_cast<int>(rng() % 3);
        D.push_back(Dnf::from_clause(oracle::random_clause(rng, nbase * d, w)));
      }
      std::sort(D.begin(), D.end());
      D.erase(std::unique(D.begin(), D.end()), D.end());
      for (ProjectionMode mode : {ProjectionMode::Subset, ProjectionMode::WholeSet}) {
        bool whole = mode == ProjectionMode::WholeSet;
        auto expect = oracle::naive_project(D, base, table_of(f), d, whole);
        CHECK(Projector(D, base, f, mode).clauses() == expect);
        CHECK(Projector(D, base, f, mode, true).clauses() == expect);
        ++checked;
      }
    }
  }
  CHECK(checked == 320);
}

TEST_CASE("projection caps") {
  std::vector<Dnf> D;
  for (int i = 1; i <= 13; ++i) D.push_back(Dnf::from_clause(Clause{2 * i - 1, 2 * i}));
  std::vector<int> base;
  for (int x = 1; x <= 13; ++x) base.push_back(x);
  CHECK(code_of([&] { Projector(D, base, BooleanFunction::xor_fn(2), ProjectionMode::Subset); }) ==
        ErrorCode::CapExceeded);
}

TEST_CASE("compile pebblings") {
  BooleanFunction id = BooleanFunction::identity();
  BooleanFunction x2 = BooleanFunction::xor_fn(2);
  Dag p1 = make_pyramid(1);
  Derivation pi = compile_pebbling(p1, trivial_black_pebbling(p1), id);
  MeasureReport r = check_refutation(pebbling_formula(p1).cnf, pi);
  CHECK(r.width <= 3);

  Dag path3 = make_path(3);
  r = check_refutation(pebbling_formula(path3, x2).cnf, compile_pebbling(path3, trivial_black_pebbling(path3), x2));
  CHECK(r.width <= 4);

  for (const char* name : {"path:2", "path:4", "pyramid:2", "bitrev:1", "tree:2"}) {
    Dag g = make_graph(name);
    for (const BooleanFunction& f : {id, x2, BooleanFunction::or_fn(2)}) {
      Derivation c = compile_pebbling(g, trivial_black_pebbling(g), f);
      MeasureReport m = check_refutation(pebbling_formula(g, f).cnf, c);
      CHECK(m.width <= f.arity() * (validate_dag(g).max_indegree + 1));
    }
  }
  Pebbling white{{{MoveKind::PlaceWhite, 1}}};
  CHECK(code_of([&] { compile_pebbling(p1, white, id); }) == ErrorCode::WhitePebblePresent);
  Pebbling bad{{{MoveKind::PlaceBlack, 3}}};
  CHECK(code_of([&] { compile_pebbling(p1, bad, id); }) == ErrorCode::InvalidPebbling);
}

TEST_CASE("translate refutations") {
  BooleanFunction x2 = BooleanFunction::xor_fn(2);
  for (const char* name : {"pyramid:1", "path:3", "bitrev:1", "pyramid:2"}) {
    Dag g = make_graph(name);
    PebblingFormula pf = pebbling_formula(g, x2);
    Derivation pi = compile_pebbling(g, trivial_black_pebbling(g), x2);
    ProjectedSequence seq;
    Derivation t = translate_refutation(pi, pf.base, x2, &seq);
    MeasureReport r = check_refutation(pf.base, t);
    CHECK(seq.front().empty());
    CHECK(std::find(seq.back().begin(), seq.back().end(), Clause()) != seq.back().end());
    CHECK(downloads(t) <= downloads(pi));
    long maxvs = 0;
    for (const auto& s : seq) maxvs = std::max(maxvs, variable_space(s));
    CHECK(r.variable_space <= maxvs);
    Derivation w = eliminate_weakening(pf.base, t);
    CHECK(check_refutation(pf.base, w).refutation);
    for (const Step& s : w.steps) CHECK((s.kind != StepKind::Infer || s.rule == Rule::Cut));
  }
}

TEST_CASE("extract pebblings") {
  BooleanFunction x2 = BooleanFunction::xor_fn(2);
  for (const char* name : {"pyramid:1", "path:2", "path:4", "bitrev:1", "pyramid:2"}) {
    Dag g = make_graph(name);
    const long ell = validate_dag(g).max_indegree;
    for (const BooleanFunction& f : {BooleanFunction::identity(), x2}) {
      Derivation pi = compile_pebbling(g, trivial_black_pebbling(g), f);
      Extraction ex = extract_pebbling(pi, g, f);
      PebblingMetrics m = validate_pebbling(g, ex.pebbling);
      CHECK(is_frugal(pebbling_formula(g).base, ex.frugal));
      CHECK(m.time <= (ell + 1) * ex.source.length);
      CHECK(m.space <= ex.frugal_report.variable_space + 1);
      if (f.kind() != FunctionKind::Identity) CHECK(m.space <= ex.source.formula_space);
    }
  }
  // identity, hand refutation of Peb_path(2)
  Dag p2 = make_path(2);
  Derivation hand;
  hand.steps = {Step::download(Clause{1}),     Step::download(Clause{-1, 2}),
                Step::infer(Rule::Cut, {1, 2}, Dnf::from_clause(Clause{2})), Step::erase(1),
                Step::erase(2),                 Step::download(Clause{-2}),
                Step::infer(Rule::Cut, {3, 4}, Dnf())};
  Extraction ex = extract_pebbling(hand, p2, BooleanFunction::identity());
  PebblingMetrics m = validate_pebbling(p2, ex.pebbling);
  CHECK(m.time <= 2 * ex.source.length);
  CHECK(code_of([&] { extract_pebbling(hand, p2, BooleanFunction::identity(), true); }) ==
        ErrorCode::AuthoritarianFunction);
}

TEST_CASE("clause to pebble translation") {
  // {u, v̄} on path(2) is B = {u}, W = {v}
  Dag p2 = make_path(2);
  Derivation pi;
  pi.steps = {Step::download(Clause{1}), Step::download(Clause{-2})};
  Pebbling p = frugal_to_pebbling(p2, pebbling_formula(p2).base, pi);
  PebbleConfig last = replay(p2, p).back();
  CHECK(last.black == std::set<int>{1});
  CHECK(last.white == std::set<int>{2});
}

TEST_CASE("projection audit") {
  BooleanFunction x2 = BooleanFunction::xor_fn(2);
  Derivation eq21;
  for (const Cnf sub = substitute_clause(Clause{1, -2}, x2); const Clause& c : sub.clauses()) eq21.steps.push_back(Step::download(c));
  AuditReport a = project_invariant_audit(eq21, Cnf({Clause{1, -2}}), x2);
  CHECK(a.ok());
  CHECK(a.max_projection_vars == 2);
  for (const char* name : {"pyramid:1", "path:3", "bitrev:1"}) {
    Dag g = make_graph(name);
    Derivation pi = compile_pebbling(g, trivial_black_pebbling(g), x2);
    AuditReport r = project_invariant_audit(pi, pebbling_formula(g).base, x2);
    CHECK(r.ok());
    CHECK(r.nonempty > 0);
  }
  CHECK(code_of([&] { project_invariant_audit(eq21, Cnf({Clause{1, -2}}), BooleanFunction::or_fn(2)); }) ==
        ErrorCode::AuthoritarianFunction);
}
