#include "pcw/proof.hpp"

#include <algorithm>
#include <sstream>

#include "pcw/error.hpp"

namespace pcw {

Step Step::download(const Clause& c) {
  Step s;
  s.kind = StepKind::Download;
  s.formula = Dnf::from_clause(c);
  return s;
}

Step Step::infer(Rule r, std::vector<int> premises, Dnf formula) {
  Step s;
  s.kind = StepKind::Infer;
  s.rule = r;
  s.premises = std::move(premises);
  s.formula = std::move(formula);
  return s;
}

Step Step::erase(int id) {
  Step s;
  s.kind = StepKind::Erase;
  s.erase_id = id;
  return s;
}

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Cut: return "cut";
    case Rule::AndIntro: return "andi";
    case Rule::AndElim: return "ande";
    case Rule::Weak: return "weak";
    case Rule::Sem: return "sem";
  }
  return "?";
}

namespace {

bool sorted_subset(const std::vector<Term>& a, const std::vector<Term>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool check_cut(const Dnf& p1, const Dnf& p2, const Dnf& r) {
  for (const Term& t : p1.terms()) {
    if (t.empty()) continue;
    std::vector<Term> units;
    bool ok = true;
    for (Literal l : t.lits()) {
      Term u(std::vector<Literal>{~l});
      if (!p2.contains(u)) {
        ok = false;
        break;
      }
      units.push_back(u);
    }
    if (!ok) continue;
    Dnf u(units);
    Dnf base = p1.without(t);
    for (const Term& x : p2.terms())
      if (!u.contains(x)) base = base.with(x);
    if (!base.subset_of(r) || !r.subset_of(p1.unite(p2))) continue;
    bool extra_ok = true;
    for (const Term& x : r.terms())
      if (!base.contains(x) && x != t && !u.contains(x)) extra_ok = false;
    if (extra_ok) return true;
  }
  return false;
}

bool check_and_intro(const Dnf& p1, const Dnf& p2, const Dnf& r, int k) {
  for (const Term& tt : r.terms()) {
    if (static_cast<int>(tt.size()) > k) continue;
    for (const Dnf& a : {r.without(tt), r}) {
      for (const Term& t : p1.terms()) {
        if (!t.subset_of(tt) || p1 != a.with(t)) continue;
        for (const Term& t2 : p2.terms())
          if (t.unite(t2) == tt && p2 == a.with(t2)) return true;
      }
    }
  }
  return false;
}

bool check_and_elim(const Dnf& p1, const Dnf& r) {
  for (const Term& t : p1.terms())
    for (const Term& t2 : r.terms()) {
      if (!t2.subset_of(t)) continue;
      if (r == p1.without(t).with(t2) || r == p1.with(t2)) return true;
    }
  return false;
}

const Dnf& premise(const Configuration& c, int id) {
  auto it = c.formulas.find(id);
  if (it == c.formulas.end()) throw Error(ErrorCode::BadPremises, "premise " + std::to_string(id) + " not live");
  return it->second;
}

}  // namespace

void apply_step(const Cnf& F, Configuration& config, const Step& step, int k, Mode mode) {
  switch (step.kind) {
    case StepKind::Download: {
      if (!step.formula.is_clause() || !F.contains(step.formula.to_clause()))
        throw Error(ErrorCode::NotAnAxiom, to_string(step.formula));
      config.formulas.emplace(config.next_id++, step.formula);
      return;
    }
    case StepKind::Erase: {
      if (!config.formulas.erase(step.erase_id))
        throw Error(ErrorCode::BadPremises, "erased id " + std::to_string(step.erase_id) + " not live");
      return;
    }
    case StepKind::Infer:
      break;
  }
  const Dnf& r = step.formula;
  if (static_cast<int>(r.width()) > k)
    throw Error(ErrorCode::WidthExceeded, "width " + std::to_string(r.width()) + " exceeds k=" + std::to_string(k));
  std::vector<const Dnf*> ps;
  for (int id : step.premises) ps.push_back(&premise(config, id));
  auto arity = [&](std::size_t n) {
    if (ps.size() != n)
      throw Error(ErrorCode::BadPremises, std::string(rule_name(step.rule)) + " takes " + std::to_string(n) + " premises");
  };
  bool ok = false;
  switch (step.rule) {
    case Rule::Cut:
      arity(2);
      ok = check_cut(*ps[0], *ps[1], r) || check_cut(*ps[1], *ps[0], r);
      break;
    case Rule::AndIntro:
      arity(2);
      ok = check_and_intro(*ps[0], *ps[1], r, k) || check_and_intro(*ps[1], *ps[0], r, k);
      break;
    case Rule::AndElim:
      arity(1);
      ok = check_and_elim(*ps[0], r);
      break;
    case Rule::Weak:
      arity(1);
      ok = sorted_subset(ps[0]->terms(), r.terms());
      break;
    case Rule::Sem: {
      if (mode != Mode::Semantic) throw Error(ErrorCode::RuleMismatch, "semantic step in syntactic mode");
      std::vector<Dnf> from;
      if (ps.empty()) {
        for (const auto& [id, d] : config.formulas) from.push_back(d);
      } else {
        for (const Dnf* d : ps) from.push_back(*d);
      }
      if (!implies(from, {r})) throw Error(ErrorCode::NotImplied, to_string(r));
      ok = true;
      break;
    }
  }
  if (!ok) throw Error(ErrorCode::RuleMismatch, std::string(rule_name(step.rule)) + " does not yield " + to_string(r));
  config.formulas.emplace(config.next_id++, r);
}

Configuration check_step(const Cnf& F, const Configuration& config, const Step& step, int k, Mode mode) {
  Configuration c = config;
  apply_step(F, c, step, k, mode);
  return c;
}

Replayer::Replayer(const Cnf& F, int k, Mode mode, const std::vector<Dnf>& initial)
    : F_(F), k_(k), mode_(mode) {
  for (const Dnf& d : initial) {
    config_.formulas.emplace(config_.next_id++, d);
    add(d);
  }
  account();
}

void Replayer::add(const Dnf& d) {
  if (count_[d]++ > 0) return;
  total_ += static_cast<long>(d.total_size());
  for (int v : d.vars()) ++var_count_[v];
}

void Replayer::remove(const Dnf& d) {
  auto it = count_.find(d);
  if (--it->second > 0) return;
  count_.erase(it);
  total_ -= static_cast<long>(d.total_size());
  for (int v : d.vars())
    if (--var_count_[v] == 0) var_count_.erase(v);
}

void Replayer::account() {
  MeasureReport& m = report_;
  m.formula_space = std::max<long>(m.formula_space, static_cast<long>(count_.size()));
  m.total_space = std::max(m.total_space, total_);
  m.variable_space = std::max<long>(m.variable_space, static_cast<long>(var_count_.size()));
  if (!m.refutation && count_.count(Dnf())) {
    m.refutation = true;
    m.first_refutation_step = index_ - 1;
  }
}

int Replayer::apply(const Step& step) {
  Dnf erased;
  if (step.kind == StepKind::Erase) {
    auto it = config_.formulas.find(step.erase_id);
    if (it != config_.formulas.end()) erased = it->second;
  }
  try {
    apply_step(F_, config_, step, k_, mode_);
  } catch (const Error& e) {
    throw Error(e.code(), e.message(), index_);
  }
  ++index_;
  int id = 0;
  if (step.kind == StepKind::Erase) {
    remove(erased);
    ++report_.erasures;
  } else {
    id = config_.next_id - 1;
    add(step.formula);
    ++report_.length;
    ++(step.kind == StepKind::Download ? report_.downloads : report_.inferences);
    const Dnf& d = step.formula;
    if (k_ == 1 && d.is_clause()) report_.width = std::max<long>(report_.width, static_cast<long>(d.size()));
    report_.max_terms = std::max<long>(report_.max_terms, static_cast<long>(d.size()));
    report_.max_formula_size = std::max<long>(report_.max_formula_size, static_cast<long>(d.total_size()));
  }
  account();
  return id;
}

std::vector<Dnf> Replayer::distinct() const {
  std::vector<Dnf> out;
  for (const auto& [d, c] : count_) out.push_back(d);
  return out;
}

int Replayer::id_of(const Dnf& d) const {
  for (const auto& [id, f] : config_.formulas)
    if (f == d) return id;
  return 0;
}

MeasureReport check_derivation(const Cnf& F, const Derivation& pi) {
  Replayer r(F, pi.k, pi.mode, pi.initial);
  for (const Step& s : pi.steps) r.apply(s);
  MeasureReport m = r.report();
  if (pi.k == 1)
    for (const Dnf& d : pi.initial)
      if (d.is_clause()) m.width = std::max<long>(m.width, static_cast<long>(d.size()));
  return m;
}

MeasureReport check_refutation(const Cnf& F, const Derivation& pi) {
  MeasureReport m = check_derivation(F, pi);
  if (!m.refutation) throw Error(ErrorCode::NotARefutation, "empty formula never derived");
  return m;
}

std::vector<std::vector<Dnf>> configurations(const Cnf& F, const Derivation& pi) {
  Replayer r(F, pi.k, pi.mode, pi.initial);
  std::vector<std::vector<Dnf>> out{r.distinct()};
  for (const Step& s : pi.steps) {
    r.apply(s);
    out.push_back(r.distinct());
  }
  return out;
}

std::string to_trace(const Derivation& pi) {
  std::ostringstream out;
  out << "p proof k=" << pi.k << " mode=" << (pi.mode == Mode::Semantic ? "semantic" : "syntactic") << "\n";
  for (const Dnf& d : pi.initial) out << "h " << to_string(d) << "\n";
  for (const Step& s : pi.steps) {
    switch (s.kind) {
      case StepKind::Download:
        out << "a " << to_string(s.formula.to_clause()) << "\n";
        break;
      case StepKind::Infer:
        out << "i " << rule_name(s.rule);
        for (int id : s.premises) out << " " << id;
        out << " : " << to_string(s.formula) << "\n";
        break;
      case StepKind::Erase:
        out << "e " << s.erase_id << "\n";
        break;
    }
  }
  return out.str();
}

Derivation parse_trace(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Derivation pi;
  bool header = false;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    std::string rest;
    std::getline(ls, rest);
    if (tag == "p") {
      std::istringstream hs(rest);
      std::string kind, kk, mm;
      hs >> kind >> kk >> mm;
      if (kind != "proof" || kk.rfind("k=", 0) != 0 || mm.rfind("mode=", 0) != 0)
        throw Error(ErrorCode::Parse, "bad proof header", lineno);
      try {
        pi.k = std::stoi(kk.substr(2));
      } catch (...) {
        throw Error(ErrorCode::Parse, "bad k in header", lineno);
      }
      if (pi.k < 1) throw Error(ErrorCode::Parse, "k must be positive", lineno);
      std::string m = mm.substr(5);
      if (m == "syntactic") pi.mode = Mode::Syntactic;
      else if (m == "semantic") pi.mode = Mode::Semantic;
      else throw Error(ErrorCode::Parse, "bad mode", lineno);
      header = true;
      continue;
    }
    if (!header) throw Error(ErrorCode::Parse, "step before proof header", lineno);
    if (tag == "h") {
      if (!pi.steps.empty()) throw Error(ErrorCode::Parse, "preloaded formula after first step", lineno);
      pi.initial.push_back(parse_dnf(rest));
    } else if (tag == "a") {
      pi.steps.push_back(Step::download(parse_clause(rest)));
    } else if (tag == "e") {
      std::istringstream es(rest);
      int id = 0;
      std::string extra;
      if (!(es >> id) || (es >> extra)) throw Error(ErrorCode::Parse, "bad erasure", lineno);
      pi.steps.push_back(Step::erase(id));
    } else if (tag == "i") {
      auto colon = rest.find(':');
      if (colon == std::string::npos) throw Error(ErrorCode::Parse, "inference without ':'", lineno);
      std::istringstream is(rest.substr(0, colon));
      std::string rule;
      is >> rule;
      Rule r;
      if (rule == "cut") r = Rule::Cut;
      else if (rule == "andi") r = Rule::AndIntro;
      else if (rule == "ande") r = Rule::AndElim;
      else if (rule == "weak") r = Rule::Weak;
      else if (rule == "sem") r = Rule::Sem;
      else throw Error(ErrorCode::Parse, "unknown rule '" + rule + "'", lineno);
      std::vector<int> ids;
      std::string tok;
      while (is >> tok) {
        try {
          std::size_t pos = 0;
          ids.push_back(std::stoi(tok, &pos));
          if (pos != tok.size()) throw 0;
        } catch (...) {
          throw Error(ErrorCode::Parse, "bad premise id '" + tok + "'", lineno);
        }
      }
      pi.steps.push_back(Step::infer(r, std::move(ids), parse_dnf(rest.substr(colon + 1))));
    } else {
      throw Error(ErrorCode::Parse, "unknown line tag '" + tag + "'", lineno);
    }
  }
  if (!header) throw Error(ErrorCode::Parse, "missing proof header");
  return pi;
}

}  // namespace pcw
