#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pcw {

// DAG over vertices 1..n. Edges are (predecessor, successor). Construction
// does not validate; call validate_dag.
class Dag {
 public:
  Dag() = default;
  Dag(int n, std::vector<std::pair<int, int>> edges, int max_indegree = 2, int sink = 0);

  int size() const { return n_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& preds(int v) const { return preds_[v]; }
  const std::vector<int>& succs(int v) const { return succs_[v]; }
  // Declared sink, or the unique outdegree-0 vertex when none was declared.
  int sink() const { return sink_; }
  int max_indegree() const { return ell_; }
  int indegree_max_observed() const;
  std::vector<int> sources() const;
  std::string name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  int n_ = 0;
  int ell_ = 2;
  int sink_ = 0;
  std::string name_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> preds_, succs_;
};

struct DagReport {
  std::vector<int> topological_order;
  int sink = 0;
  int max_indegree = 0;
};

// Throws CYCLE, MULTIPLE_SINKS or INDEGREE_EXCEEDED.
DagReport validate_dag(const Dag& g);

// Lowest id first among ready vertices.
std::vector<int> topological_order(const Dag& g);

Dag make_path(int n);
Dag make_pyramid(int h);
Dag make_binary_tree(int h);
Dag make_bit_reversal(int p);
// "path:4", "pyramid:2", "tree:2", "bitrev:2" (also "binary_tree", "bit_reversal").
Dag make_graph(const std::string& family);

// Lines "e <from> <to>", optional "n <count>", comments "c ...".
std::string to_graph_text(const Dag& g);
Dag parse_graph_text(const std::string& text);

}  // namespace pcw
