// pcw: generation, checking, translation and trade-off experiments.
// Exit codes: 0 success, 1 invariant violation, 2 usage, 3 cap exceeded.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcw/caps.hpp"
#include "pcw/error.hpp"
#include "pcw/mindnf.hpp"
#include "pcw/rk.hpp"
#include "pcw/transform.hpp"
#include "pcw/translate.hpp"

using namespace pcw;

namespace {

struct Violation {
  std::string what;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidParam, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParam, "cannot write " + path);
  out << text;
}

struct GraphArgs {
  std::string spec, file;

  void add(CLI::App* app) {
    app->add_option("--graph", spec, "family: path:n, pyramid:h, tree:h, bitrev:p");
    app->add_option("--graph-file", file, "edge-list graph file");
  }
  Dag load() const {
    if (!file.empty()) return parse_graph_text(read_file(file));
    if (spec.empty()) throw Error(ErrorCode::InvalidParam, "one of --graph, --graph-file is required");
    return make_graph(spec);
  }
};

std::optional<BooleanFunction> function_of(const std::string& name) {
  if (name.empty() || name == "none") return std::nullopt;
  return BooleanFunction::parse(name);
}

BooleanFunction function_or_identity(const std::string& name) {
  auto f = function_of(name);
  return f ? *f : BooleanFunction::identity();
}

std::string slug(std::string s) {
  for (char& c : s)
    if (c == ':' || c == ',' || c == '/' || c == ' ') c = '_';
  return s;
}

void print_report(std::ostream& out, const MeasureReport& r) {
  out << "length " << r.length << "\n"
      << "downloads " << r.downloads << "\n"
      << "inferences " << r.inferences << "\n"
      << "erasures " << r.erasures << "\n"
      << "width " << r.width << "\n"
      << "formula_space " << r.formula_space << "\n"
      << "total_space " << r.total_space << "\n"
      << "variable_space " << r.variable_space << "\n"
      << "refutation " << (r.refutation ? "yes" : "no") << "\n";
}

Cnf target_cnf(const std::string& cnf_file, const GraphArgs& g, const std::string& fname) {
  if (!cnf_file.empty()) return parse_dimacs(read_file(cnf_file)).cnf;
  Dag dag = g.load();
  auto f = function_of(fname);
  return f ? pebbling_formula(dag, *f).cnf : pebbling_formula(dag).cnf;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Violation{what};
}

// ------------------------------------------------------------ subcommands

int cmd_gen(const GraphArgs& ga, const std::string& fname, const std::string& dir, long seed) {
  Dag g = ga.load();
  auto f = function_of(fname);
  PebblingFormula p = f ? pebbling_formula(g, *f) : pebbling_formula(g);
  std::string dimacs = to_dimacs(p);
  if (dir.empty()) {
    std::cout << dimacs;
    return 0;
  }
  std::filesystem::create_directories(dir);
  std::string stem = slug(g.name()) + (f ? "_" + slug(f->name()) : "");
  write_out(dir + "/" + slug(g.name()) + ".graph", to_graph_text(g));
  write_out(dir + "/" + stem + ".cnf", dimacs);
  nlohmann::ordered_json m;
  m["seed"] = seed;
  m["graph"] = g.name();
  m["vertices"] = g.size();
  m["max_indegree"] = validate_dag(g).max_indegree;
  m["function"] = f ? f->name() : "none";
  m["d"] = f ? f->arity() : 1;
  m["variables"] = g.size() * (f ? f->arity() : 1);
  m["clauses"] = p.cnf.size();
  m["files"] = {{"graph", slug(g.name()) + ".graph"}, {"cnf", stem + ".cnf"}};
  write_out(dir + "/manifest.json", m.dump(2) + "\n");
  std::cout << "wrote " << dir << "/" << stem << ".cnf\n";
  return 0;
}

int cmd_pebble(const GraphArgs& ga, const std::string& mode, int space, bool trivial, const std::string& in,
               const std::string& out) {
  Dag g = ga.load();
  if (!in.empty()) {
    PebblingMetrics m = validate_pebbling(g, parse_pebbling_text(read_file(in)));
    std::cout << "time " << m.time << "\nspace " << m.space << "\n";
    return 0;
  }
  PebbleMode pm = mode == "bw" ? PebbleMode::BlackWhite : PebbleMode::Black;
  Pebbling p;
  if (trivial) {
    p = trivial_black_pebbling(g);
  } else if (space > 0) {
    SearchResult r = search_min_time_given_space(g, space, pm);
    std::cout << "min_time " << r.value << "\n";
    p = r.witness;
  } else {
    SearchResult r = search_min_space(g, pm);
    std::cout << "price " << r.value << "\n";
    p = r.witness;
  }
  PebblingMetrics m = validate_pebbling(g, p);
  std::cout << "time " << m.time << "\nspace " << m.space << "\n";
  if (!out.empty()) write_out(out, to_pebbling_text(p));
  return 0;
}

int cmd_compile(const GraphArgs& ga, const std::string& fname, const std::string& peb, bool rk,
                const std::string& out) {
  Dag g = ga.load();
  BooleanFunction f = function_or_identity(fname);
  Pebbling p = peb.empty() ? trivial_black_pebbling(g) : parse_pebbling_text(read_file(peb));
  Derivation pi = rk ? compile_pebbling_rk(g, p, f) : compile_pebbling(g, p, f);
  MeasureReport r = check_refutation(pebbling_formula(g, f).cnf, pi);
  write_out(out, to_trace(pi));
  if (!out.empty() && out != "-") print_report(std::cout, r);
  return 0;
}

int cmd_check(const std::string& proof, const std::string& cnf, const GraphArgs& ga, const std::string& fname,
              bool derivation) {
  Cnf F = target_cnf(cnf, ga, fname);
  Derivation pi = parse_trace(read_file(proof));
  MeasureReport r = derivation ? check_derivation(F, pi) : check_refutation(F, pi);
  print_report(std::cout, r);
  return 0;
}

int cmd_extract(const std::string& proof, const GraphArgs& ga, const std::string& fname, bool bound,
                const std::string& out) {
  Dag g = ga.load();
  Extraction ex = extract_pebbling(parse_trace(read_file(proof)), g, function_or_identity(fname), bound);
  PebblingMetrics m = validate_pebbling(g, ex.pebbling);
  std::cout << "time " << m.time << "\nspace " << m.space << "\n";
  std::cout << "source_formula_space " << ex.source.formula_space << "\n";
  std::cout << "frugal_variable_space " << ex.frugal_report.variable_space << "\n";
  if (!out.empty()) write_out(out, to_pebbling_text(ex.pebbling));
  return 0;
}

int cmd_project(const std::string& config, const std::string& cnf, const GraphArgs& ga, const std::string& fname,
                const std::string& mode) {
  BooleanFunction f = function_or_identity(fname);
  Cnf F = cnf.empty() ? pebbling_formula(ga.load()).base : parse_dimacs(read_file(cnf)).cnf;
  std::vector<Dnf> D;
  std::istringstream in(read_file(config));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == 'c') continue;
    D.push_back(parse_dnf(line));
  }
  ProjectionMode pm = mode == "whole" ? ProjectionMode::WholeSet : ProjectionMode::Subset;
  for (const Clause& c : project(D, F, f, pm)) std::cout << to_string(c) << "\n";
  return 0;
}

int cmd_minunsat(const std::string& check, int k, int n, bool enumerate, int max_vars, int max_formulas,
                 int max_terms) {
  if (!check.empty()) {
    KDnfSet s = parse_kdnf_set(read_file(check));
    bool ok = is_minimally_unsatisfiable(s);
    std::cout << (ok ? "minimal" : "not_minimal") << " vars " << s.vars().size() << " formulas "
              << s.formulas.size() << "\n";
    return ok ? 0 : 1;
  }
  if (enumerate) {
    std::vector<KDnfSet> sets = enumerate_min_unsat(k, max_vars, max_formulas, max_terms);
    std::map<std::size_t, std::size_t> count, most;
    for (const KDnfSet& s : sets) {
      std::cout << to_text(s);
      count[s.formulas.size()]++;
      most[s.formulas.size()] = std::max(most[s.formulas.size()], s.vars().size());
    }
    for (auto [m, c] : count) std::cout << "c k=" << k << " m=" << m << " sets " << c << " max_vars " << most[m] << "\n";
    return 0;
  }
  KDnfSet s = lemma215_construct(k, n);
  std::cout << to_text(s);
  return is_minimally_unsatisfiable(s) ? 0 : 1;
}

int cmd_tradeoff(const GraphArgs& ga, const std::string& fname, int s_min, int s_max, long seed,
                 const std::string& out) {
  Dag g = ga.load();
  BooleanFunction f = function_or_identity(fname);
  const Cnf F = pebbling_formula(g, f).cnf;
  if (s_max <= 0) s_max = g.size();
  std::ostringstream csv;
  csv << "# seed=" << seed << " graph=" << g.name() << " f=" << f.name() << "\n";
  csv << "graph,n,s,oracle_min_time,proof_length,formula_space,total_space,variable_space,status\n";
  long last = -1;
  bool monotone = true;
  for (int s = std::max(1, s_min); s <= s_max; ++s) {
    csv << g.name() << "," << g.size() << "," << s << ",";
    try {
      SearchResult r = search_min_time_given_space(g, s, PebbleMode::Black);
      MeasureReport m = check_refutation(F, compile_pebbling(g, r.witness, f));
      csv << r.value << "," << m.length << "," << m.formula_space << "," << m.total_space << ","
          << m.variable_space << ",OK\n";
      if (last >= 0 && r.value > last) monotone = false;
      last = r.value;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Infeasible) csv << ",,,,,INFEASIBLE\n";
      else if (is_cap_error(e.code())) csv << ",,,,,STATE_SPACE_EXCEEDED\n";
      else throw;
    }
  }
  write_out(out, csv.str());
  require(monotone, "oracle_min_time increases with s");
  return 0;
}

int cmd_pipeline(const GraphArgs& ga, const std::string& fname, const std::string& proof) {
  Dag g = ga.load();
  BooleanFunction f = function_or_identity(fname);
  const long ell = validate_dag(g).max_indegree;
  PebblingFormula pf = pebbling_formula(g, f);
  Derivation pi = proof.empty() ? compile_pebbling(g, trivial_black_pebbling(g), f) : parse_trace(read_file(proof));
  MeasureReport r;
  try {
    r = check_refutation(pf.cnf, pi);
  } catch (const Error& e) {
    throw Violation{"refutation check failed at step " + std::to_string(e.index()) + ": " + e.what()};
  }
  std::cout << "[refutation]\n";
  print_report(std::cout, r);
  if (proof.empty()) require(r.width <= f.arity() * (ell + 1), "width bound d(l+1)");

  Extraction ex = extract_pebbling(pi, g, f);
  PebblingMetrics m = validate_pebbling(g, ex.pebbling);
  std::cout << "[pebbling]\ntime " << m.time << "\nspace " << m.space << "\n";
  require(m.time <= (ell + 1) * r.downloads, "time(P) <= (l+1) * downloads");
  require(m.space <= ex.frugal_report.variable_space + 1, "space(P) <= VarSp(frugal) + 1");
  const bool non_auth = f.kind() != FunctionKind::Identity && is_k_non_authoritarian(f, 1);
  if (non_auth) require(m.space <= r.formula_space, "space(P) <= Sp(pi)");

  if (non_auth) {
    AuditReport a = project_invariant_audit(pi, pf.base, f);
    std::cout << "[audit]\nconfigurations " << a.configurations << "\nnonempty " << a.nonempty
              << "\nspace_violations " << a.space_violations << "\npresence_violations " << a.presence_violations
              << "\n";
    require(a.ok(), "projection audit: " + (a.messages.empty() ? std::string() : a.messages.front()));
  }
  if (g.size() <= caps().pebble_bw_vertices) {
    long bw = search_min_space(g, PebbleMode::BlackWhite).value;
    std::cout << "[oracle]\nbw_price " << bw << "\n";
    if (non_auth) require(r.formula_space >= bw, "Sp(pi) >= BW-Peb(G)");
  }
  std::cout << "status pass\n";
  return 0;
}

int cmd_selftest() {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    failures += !ok;
  };
  BooleanFunction x2 = BooleanFunction::xor_fn(2);
  expect(substitute_clause(Clause{1, -2}, x2).size() == 4, "substitution of x or not-y");
  for (const char* name : {"path:3", "pyramid:1", "bitrev:1"}) {
    Dag g = make_graph(name);
    Derivation pi = compile_pebbling(g, trivial_black_pebbling(g), x2);
    bool ok = check_refutation(pebbling_formula(g, x2).cnf, pi).refutation;
    Derivation back = parse_trace(to_trace(pi));
    ok = ok && check_refutation(pebbling_formula(g, x2).cnf, back).refutation;
    Extraction ex = extract_pebbling(pi, g, x2);
    validate_pebbling(g, ex.pebbling);
    expect(ok, std::string("round trip ") + name);
  }
  Dag p2 = make_path(2);
  expect(check_refutation(pebbling_formula(p2, x2).cnf, compile_pebbling_rk(p2, trivial_black_pebbling(p2), x2))
             .refutation,
         "R(2) compile of path:2");
  expect(is_minimally_unsatisfiable(lemma215_construct(2, 1)), "lemma 2.15 (2,1)");
  expect(search_min_space(make_bit_reversal(1), PebbleMode::Black).value == 3, "bitrev:1 black price");
  return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proof complexity workbench"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);
  app.fallthrough();
  long seed = 0;
  app.add_option("--seed", seed, "recorded in output headers")->capture_default_str();

  GraphArgs ga;
  std::string fname, out, dir, proof, cnf, mode = "black", proj_mode = "subset", pebbling, config, check;
  int space = 0, k = 1, n = 1, max_vars = 4, max_formulas = 3, max_terms = 0, s_min = 1, s_max = 0;
  bool trivial = false, rk = false, derivation = false, bound = false, enumerate = false;

  auto* gen = app.add_subcommand("gen", "write graph, DIMACS formula and manifest");
  ga.add(gen);
  gen->add_option("--f", fname, "substitution function, e.g. xor:2, or identity");
  gen->add_option("--out-dir", dir, "output directory; stdout DIMACS when absent");

  auto* peb = app.add_subcommand("pebble", "optimal pebblings by exhaustive search");
  ga.add(peb);
  peb->add_option("--mode", mode, "black or bw")->check(CLI::IsMember({"black", "bw"}));
  peb->add_option("--space", space, "minimum time within this many pebbles");
  peb->add_flag("--trivial", trivial, "the trivial black pebbling");
  peb->add_option("--validate", pebbling, "validate a pebbling trace instead");
  peb->add_option("--out", out, "write the witness pebbling trace");

  auto* comp = app.add_subcommand("compile", "refutation of Peb_G[f] from a black pebbling");
  ga.add(comp);
  comp->add_option("--f", fname);
  comp->add_option("--pebbling", pebbling, "pebbling trace; trivial pebbling when absent");
  comp->add_flag("--rk", rk, "R(d) refutation with one d-DNF per clause");
  comp->add_option("--out", out, "proof trace output");

  auto* chk = app.add_subcommand("check", "check a proof trace");
  chk->add_option("--proof", proof)->required();
  chk->add_option("--cnf", cnf, "DIMACS formula");
  ga.add(chk);
  chk->add_option("--f", fname);
  chk->add_flag("--derivation", derivation, "accept a derivation that is not a refutation");

  auto* ext = app.add_subcommand("extract", "pebbling from a refutation of Peb_G[f]");
  ext->add_option("--proof", proof)->required();
  ga.add(ext);
  ext->add_option("--f", fname);
  ext->add_flag("--require-space-bound", bound, "fail for authoritarian f");
  ext->add_option("--out", out, "pebbling trace output");

  auto* proj = app.add_subcommand("project", "projection of a configuration onto F");
  proj->add_option("--config", config, "one DNF per line")->required();
  proj->add_option("--cnf", cnf, "DIMACS base formula F");
  ga.add(proj);
  proj->add_option("--f", fname);
  proj->add_option("--mode", proj_mode, "subset or whole")->check(CLI::IsMember({"subset", "whole"}));

  auto* mu = app.add_subcommand("minunsat", "minimally unsatisfiable k-DNF sets");
  mu->add_option("--check", check, "kdnf set file to check");
  mu->add_option("--k", k);
  mu->add_option("--n", n, "size of the blown-up clause family");
  mu->add_flag("--enumerate", enumerate);
  mu->add_option("--max-vars", max_vars);
  mu->add_option("--max-formulas", max_formulas);
  mu->add_option("--max-terms", max_terms);

  auto* tr = app.add_subcommand("tradeoff", "CSV of oracle time and proof measures per space budget");
  ga.add(tr);
  tr->add_option("--f", fname);
  tr->add_option("--s-min", s_min);
  tr->add_option("--s-max", s_max);
  tr->add_option("--out", out, "CSV output");

  auto* pipe = app.add_subcommand("pipeline", "compile, check, extract and audit");
  ga.add(pipe);
  pipe->add_option("--f", fname);
  pipe->add_option("--proof", proof, "use this refutation instead of compiling");

  auto* self = app.add_subcommand("selftest", "quick end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(ga, fname, dir, seed);
    if (*peb) return cmd_pebble(ga, mode, space, trivial, pebbling, out);
    if (*comp) return cmd_compile(ga, fname, pebbling, rk, out);
    if (*chk) return cmd_check(proof, cnf, ga, fname, derivation);
    if (*ext) return cmd_extract(proof, ga, fname, bound, out);
    if (*proj) return cmd_project(config, cnf, ga, fname, proj_mode);
    if (*mu) return cmd_minunsat(check, k, n, enumerate, max_vars, max_formulas, max_terms);
    if (*tr) return cmd_tradeoff(ga, fname, s_min, s_max, seed, out);
    if (*pipe) return cmd_pipeline(ga, fname, proof);
    if (*self) return cmd_selftest();
  } catch (const Violation& v) {
    std::cerr << "violation: " << v.what << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (is_cap_error(e.code())) return 3;
    if (e.code() == ErrorCode::InvalidParam || e.code() == ErrorCode::Parse) {
      std::cerr << app.help();
      return 2;
    }
    return 1;
  }
  return 2;
}
