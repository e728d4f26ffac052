#include "pcw/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

#include "pcw/error.hpp"

namespace pcw {

Dag::Dag(int n, std::vector<std::pair<int, int>> edges, int max_indegree, int sink)
    : n_(n), ell_(max_indegree), edges_(std::move(edges)) {
  if (n < 1) throw Error(ErrorCode::InvalidParam, "graph needs at least one vertex");
  preds_.assign(n + 1, {});
  succs_.assign(n + 1, {});
  for (auto [u, v] : edges_) {
    if (u < 1 || u > n || v < 1 || v > n)
      throw Error(ErrorCode::InvalidParam, "edge endpoint out of range");
    preds_[v].push_back(u);
    succs_[u].push_back(v);
  }
  for (int v = 1; v <= n; ++v) {
    std::sort(preds_[v].begin(), preds_[v].end());
    std::sort(succs_[v].begin(), succs_[v].end());
  }
  sink_ = sink;
  if (sink_ == 0) {
    for (int v = n; v >= 1; --v)
      if (succs_[v].empty()) {
        sink_ = v;
        break;
      }
  }
}

int Dag::indegree_max_observed() const {
  std::size_t m = 0;
  for (int v = 1; v <= n_; ++v) m = std::max(m, preds_[v].size());
  return static_cast<int>(m);
}

std::vector<int> Dag::sources() const {
  std::vector<int> s;
  for (int v = 1; v <= n_; ++v)
    if (preds_[v].empty()) s.push_back(v);
  return s;
}

namespace {

// Kahn with a min-heap; returns fewer than n vertices on a cycle.
std::vector<int> kahn(const Dag& g) {
  std::vector<int> indeg(g.size() + 1, 0);
  for (int v = 1; v <= g.size(); ++v) indeg[v] = static_cast<int>(g.preds(v).size());
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 1; v <= g.size(); ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : g.succs(v))
      if (--indeg[w] == 0) ready.push(w);
  }
  return order;
}

}  // namespace

DagReport validate_dag(const Dag& g) {
  DagReport r;
  r.topological_order = kahn(g);
  if (static_cast<int>(r.topological_order.size()) != g.size())
    throw Error(ErrorCode::Cycle, "graph has a cycle");
  int sinks = 0;
  for (int v = 1; v <= g.size(); ++v)
    if (g.succs(v).empty()) ++sinks;
  if (sinks != 1) throw Error(ErrorCode::MultipleSinks, std::to_string(sinks) + " sinks");
  if (!g.succs(g.sink()).empty())
    throw Error(ErrorCode::MultipleSinks, "declared sink has successors");
  r.sink = g.sink();
  r.max_indegree = g.indegree_max_observed();
  if (r.max_indegree > g.max_indegree())
    throw Error(ErrorCode::IndegreeExceeded,
                "indegree " + std::to_string(r.max_indegree) + " > " +
                    std::to_string(g.max_indegree()));
  return r;
}

std::vector<int> topological_order(const Dag& g) { return validate_dag(g).topological_order; }

Dag make_path(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidParam, "path needs n >= 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  Dag g(n, std::move(e), 1);
  g.set_name("path:" + std::to_string(n));
  return g;
}

Dag make_pyramid(int h) {
  if (h < 1) throw Error(ErrorCode::InvalidParam, "pyramid needs h >= 1");
  // row r (0 = bottom) has h+1-r vertices
  std::vector<std::vector<int>> id(h + 1);
  int next = 1;
  for (int r = 0; r <= h; ++r)
    for (int i = 0; i < h + 1 - r; ++i) id[r].push_back(next++);
  std::vector<std::pair<int, int>> e;
  for (int r = 1; r <= h; ++r)
    for (int i = 0; i < h + 1 - r; ++i) {
      e.emplace_back(id[r - 1][i], id[r][i]);
      e.emplace_back(id[r - 1][i + 1], id[r][i]);
    }
  Dag g(next - 1, std::move(e), 2);
  g.set_name("pyramid:" + std::to_string(h));
  return g;
}

Dag make_binary_tree(int h) {
  if (h < 1) throw Error(ErrorCode::InvalidParam, "tree needs h >= 1");
  std::vector<std::vector<int>> id(h + 1);
  int next = 1;
  for (int level = 0; level <= h; ++level)
    for (int i = 0; i < (1 << (h - level)); ++i) id[level].push_back(next++);
  std::vector<std::pair<int, int>> e;
  for (int level = 1; level <= h; ++level)
    for (int i = 0; i < (1 << (h - level)); ++i) {
      e.emplace_back(id[level - 1][2 * i], id[level][i]);
      e.emplace_back(id[level - 1][2 * i + 1], id[level][i]);
    }
  Dag g(next - 1, std::move(e), 2);
  g.set_name("tree:" + std::to_string(h));
  return g;
}

Dag make_bit_reversal(int p) {
  if (p < 1 || p > 10) throw Error(ErrorCode::InvalidParam, "bit reversal needs 1 <= p <= 10");
  int m = 1 << p;
  auto rev = [p](int i) {
    int r = 0;
    for (int b = 0; b < p; ++b)
      if (i & (1 << b)) r |= 1 << (p - 1 - b);
    return r;
  };
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < m; ++i) {
    e.emplace_back(i, i + 1);
    e.emplace_back(m + i, m + i + 1);
  }
  for (int i = 0; i < m; ++i) e.emplace_back(rev(i) + 1, m + i + 1);
  std::sort(e.begin(), e.end());
  Dag g(2 * m, std::move(e), 2);
  g.set_name("bitrev:" + std::to_string(p));
  return g;
}

Dag make_graph(const std::string& family) {
  auto colon = family.find(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidParam, "graph family needs a parameter: '" + family + "'");
  std::string name = family.substr(0, colon);
  int param = 0;
  try {
    std::size_t pos = 0;
    param = std::stoi(family.substr(colon + 1), &pos);
    if (pos != family.size() - colon - 1) throw 0;
  } catch (...) {
    throw Error(ErrorCode::InvalidParam, "bad graph parameter in '" + family + "'");
  }
  if (name == "path") return make_path(param);
  if (name == "pyramid") return make_pyramid(param);
  if (name == "tree" || name == "binary_tree") return make_binary_tree(param);
  if (name == "bitrev" || name == "bit_reversal") return make_bit_reversal(param);
  throw Error(ErrorCode::InvalidParam, "unknown graph family '" + name + "'");
}

std::string to_graph_text(const Dag& g) {
  std::ostringstream out;
  if (!g.name().empty()) out << "c graph " << g.name() << "\n";
  out << "n " << g.size() << "\n";
  for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
  return out.str();
}

Dag parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0, declared = 0;
  std::vector<std::pair<int, int>> e;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "e") {
      int u = 0, v = 0;
      if (!(ls >> u >> v) || u < 1 || v < 1) throw Error(ErrorCode::Parse, "bad edge line: " + line);
      e.emplace_back(u, v);
      n = std::max({n, u, v});
    } else if (tag == "n") {
      if (!(ls >> declared) || declared < 1) throw Error(ErrorCode::Parse, "bad vertex count: " + line);
    } else {
      throw Error(ErrorCode::Parse, "unknown graph line: " + line);
    }
  }
  if (declared) {
    if (declared < n) throw Error(ErrorCode::Parse, "edge endpoint exceeds vertex count");
    n = declared;
  }
  if (n == 0) throw Error(ErrorCode::Parse, "empty graph");
  int ell = 0;
  Dag probe(n, e, n);
  ell = std::max(1, probe.indegree_max_observed());
  return Dag(n, std::move(e), ell);
}

}  // namespace pcw
