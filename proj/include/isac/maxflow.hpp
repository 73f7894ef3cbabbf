#pragma once
#include <vector>

namespace isac {

// Dinic max-flow specialized for the small unit-capacity crossing graphs.
// Undirected unit edges are modeled as antiparallel arc pairs with
// capacity 1 each; unit path extraction cancels opposite flow first.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  // Adds a directed arc u->v with the given capacity and its reverse with
  // rev_cap. Returns the arc index of the forward arc.
  int add_edge(int u, int v, int cap, int rev_cap = 0);

  int solve(int source, int sink);

  // After solve: net flow on the forward arc (positive = along u->v).
  int net_flow(int arc_index) const;

  int node_count() const { return static_cast<int>(head_.size()); }

  // Decomposes the computed flow into unit source->sink paths; each path is
  // the node sequence from source to sink. Consumes the flow bookkeeping.
  std::vector<std::vector<int>> unit_paths(int source, int sink);

 private:
  struct Arc {
    int to;
    int cap;
    int orig;  // capacity at construction (net flow = orig - cap)
    int rev;   // index of the reverse arc in graph_[to]
  };
  std::vector<std::vector<Arc>> graph_;
  std::vector<int> head_;  // BFS level / iterator scratch
  std::vector<int> level_;
  std::vector<std::pair<int, int>> arc_index_;  // forward arc -> (u, pos)

  bool bfs(int s, int t);
  int dfs(int u, int t, int pushed);
};

}  // namespace isac
