#include "pcw/projection.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <unordered_set>

#include "pcw/caps.hpp"
#include "pcw/error.hpp"

namespace pcw {

Dnf substituted_disjunction(const Clause& c, const BooleanFunction& f) {
  Dnf out;
  for (Literal l : c.lits()) out = out.unite(literal_dnf(l, f));
  return out;
}

bool precisely_implies(const std::vector<Dnf>& s, const Clause& c, const BooleanFunction& f) {
  if (!implies(s, {substituted_disjunction(c, f)})) return false;
  for (Literal l : c.lits())
    if (implies(s, {substituted_disjunction(c.without(l), f)})) return false;
  return true;
}

namespace {

bool contained(uint64_t m, const std::vector<uint64_t>& in) {
  for (uint64_t x : in)
    if ((m & ~x) == 0) return true;
  return false;
}

std::vector<uint64_t> maximal(std::vector<uint64_t> masks) {
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::stable_sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });
  std::vector<uint64_t> out;
  for (uint64_t m : masks)
    if (!contained(m, out)) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Projector::Projector(const std::vector<Dnf>& d, const std::vector<int>& base_vars,
                     const BooleanFunction& f, ProjectionMode mode, bool all_blocks)
    : mode_(mode), d_(f.arity()) {
  const Caps& cap = caps();
  if (static_cast<int>(base_vars.size()) > cap.projection_base_vars)
    throw Error(ErrorCode::CapExceeded, "projection: " + std::to_string(base_vars.size()) +
                                            " base variables");
  if (static_cast<int>(d.size()) > cap.projection_formulas)
    throw Error(ErrorCode::CapExceeded, "projection: " + std::to_string(d.size()) + " formulas");

  std::set<int> base(base_vars.begin(), base_vars.end());
  std::set<int> touched;
  std::vector<int> extras;
  for (int v : vars_of(d)) {
    int x = base_var(v, d_);
    if (base.count(x))
      touched.insert(x);
    else
      extras.push_back(v);
  }
  if (all_blocks)
    cand_.assign(base.begin(), base.end());
  else
    cand_.assign(touched.begin(), touched.end());

  std::vector<int> alpha_vars;
  for (int x : cand_)
    for (int j = 1; j <= d_; ++j) alpha_vars.push_back(fresh_var(x, j, d_));
  alpha_vars.insert(alpha_vars.end(), extras.begin(), extras.end());
  if (static_cast<int>(alpha_vars.size()) > cap.projection_block_vars)
    throw Error(ErrorCode::CapExceeded,
                "projection: " + std::to_string(alpha_vars.size()) + " block variables");

  const std::size_t m = d.size();
  full_ = m == 64 ? ~uint64_t{0} : ((uint64_t{1} << m) - 1);
  MaskEvaluator ev(d, alpha_vars);
  const uint32_t nshadow = uint32_t{1} << cand_.size();
  const uint32_t block = (uint32_t{1} << d_) - 1;
  std::vector<std::unordered_set<uint64_t>> seen(mode_ == ProjectionMode::Subset ? nshadow : 0);
  std::vector<bool> full_seen(nshadow, false);

  const uint64_t total = uint64_t{1} << alpha_vars.size();
  for (uint64_t a = 0; a < total; ++a) {
    uint32_t alpha = static_cast<uint32_t>(a);
    uint64_t sat = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (ev.eval(i, alpha)) sat |= uint64_t{1} << i;
    uint32_t beta = 0;
    for (std::size_t i = 0; i < cand_.size(); ++i)
      if (f((alpha >> (i * d_)) & block)) beta |= uint32_t{1} << i;
    if (sat == full_) full_seen[beta] = true;
    if (mode_ == ProjectionMode::Subset) seen[beta].insert(sat);
  }
  for (uint32_t b = 0; b < nshadow; ++b)
    if (full_seen[b]) full_shadows_.push_back(b);
  if (mode_ == ProjectionMode::Subset) {
    by_shadow_.resize(nshadow);
    for (uint32_t b = 0; b < nshadow; ++b)
      by_shadow_[b] = maximal(std::vector<uint64_t>(seen[b].begin(), seen[b].end()));
  }
}

int Projector::index_of(int base) const {
  auto it = std::lower_bound(cand_.begin(), cand_.end(), base);
  if (it == cand_.end() || *it != base) return -1;
  return static_cast<int>(it - cand_.begin());
}

// Shadow region falsifying c, except that *flip (if given) is satisfied.
void Projector::region(const Clause& c, const Literal* flip, uint32_t& care,
                       uint32_t& val) const {
  care = val = 0;
  for (Literal l : c.lits()) {
    uint32_t bit = uint32_t{1} << index_of(l.var());
    bool value = !l.positive();
    if (flip && *flip == l) value = !value;
    care |= bit;
    if (value) val |= bit;
  }
}

const Projector::Masks& Projector::up(uint32_t care, uint32_t val) const {
  uint64_t key = (uint64_t{care} << 32) | val;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const uint32_t all = (uint32_t{1} << cand_.size()) - 1;
  Masks out;
  if (care == all) {
    out = by_shadow_[val];
  } else {
    uint32_t bit = ~care & all & (0u - (~care & all));
    Masks lo = up(care | bit, val);
    const Masks& hi = up(care | bit, val | bit);
    lo.insert(lo.end(), hi.begin(), hi.end());
    out = maximal(std::move(lo));
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

namespace {

bool falsifies(uint32_t beta, uint32_t care, uint32_t val) { return (beta & care) == val; }

}  // namespace

bool Projector::implied(const Clause& c) const {
  Clause inner;
  for (Literal l : c.lits()) {
    if (index_of(l.var()) < 0) return implied(c.without(l));  // free shadow bit
    inner = inner.with(l);
  }
  uint32_t care, val;
  region(inner, nullptr, care, val);
  for (uint32_t b : full_shadows_)
    if (falsifies(b, care, val)) return false;
  return true;
}

bool Projector::projects(const Clause& c) const {
  if (c.is_trivial()) return false;
  for (Literal l : c.lits())
    if (index_of(l.var()) < 0) return false;
  if (!implied(c)) return false;
  return mode_ == ProjectionMode::Subset ? projects_subset(c) : projects_whole(c);
}

bool Projector::projects_subset(const Clause& c) const {
  uint32_t care, val;
  region(c, nullptr, care, val);
  const Masks& forbidden = up(care, val);
  std::vector<const Masks*> options;
  for (Literal l : c.lits()) {
    region(c, &l, care, val);
    const Masks& o = up(care, val);
    if (o.empty()) return false;
    options.push_back(&o);
  }
  std::function<bool(std::size_t, uint64_t)> dfs = [&](std::size_t i, uint64_t m) {
    if (contained(m, forbidden)) return false;
    if (i == options.size()) return true;
    for (uint64_t s : *options[i])
      if (dfs(i + 1, m & s)) return true;
    return false;
  };
  return dfs(0, full_);
}

bool Projector::projects_whole(const Clause& c) const {
  for (Literal l : c.lits()) {
    uint32_t care, val;
    region(c, &l, care, val);
    bool found = false;
    for (uint32_t b : full_shadows_)
      if (falsifies(b, care, val)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

std::vector<Clause> Projector::clauses() const {
  std::vector<Clause> out;
  std::vector<Literal> lits;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == cand_.size()) {
      Clause c(lits);
      if (projects(c)) out.push_back(c);
      return;
    }
    walk(i + 1);
    for (bool pos : {false, true}) {
      lits.push_back(Literal(cand_[i], pos));
      walk(i + 1);
      lits.pop_back();
    }
  };
  walk(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Clause> project(const std::vector<Dnf>& d, const Cnf& F, const BooleanFunction& f,
                            ProjectionMode mode) {
  return Projector(d, F.vars(), f, mode).clauses();
}

long variable_space(const std::vector<Clause>& clauses) {
  std::set<int> v;
  for (const Clause& c : clauses)
    for (Literal l : c.lits()) v.insert(l.var());
  return static_cast<long>(v.size());
}

}  // namespace pcw
