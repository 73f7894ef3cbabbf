#include "isac/maxflow.hpp"

#include <algorithm>
#include <queue>

#include "isac/errors.hpp"

namespace isac {

MaxFlow::MaxFlow(int node_count)
    : graph_(node_count), head_(node_count, 0), level_(node_count, -1) {}

int MaxFlow::add_edge(int u, int v, int cap, int rev_cap) {
  const int fwd_pos = static_cast<int>(graph_[u].size());
  const int rev_pos = static_cast<int>(graph_[v].size()) + (u == v ? 1 : 0);
  graph_[u].push_back(Arc{v, cap, cap, rev_pos});
  graph_[v].push_back(Arc{u, rev_cap, rev_cap, fwd_pos});
  arc_index_.push_back({u, fwd_pos});
  return static_cast<int>(arc_index_.size()) - 1;
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Arc& a : graph_[u]) {
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        q.push(a.to);
      }
    }
  }
  return level_[t] >= 0;
}

int MaxFlow::dfs(int u, int t, int pushed) {
  if (u == t) return pushed;
  for (int& it = head_[u]; it < static_cast<int>(graph_[u].size()); ++it) {
    Arc& a = graph_[u][it];
    if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
    const int got = dfs(a.to, t, std::min(pushed, a.cap));
    if (got > 0) {
      a.cap -= got;
      graph_[a.to][a.rev].cap += got;
      return got;
    }
  }
  return 0;
}

int MaxFlow::solve(int source, int sink) {
  if (source == sink) throw InvariantViolation("max-flow source equals sink");
  int flow = 0;
  while (bfs(source, sink)) {
    std::fill(head_.begin(), head_.end(), 0);
    while (int got = dfs(source, sink, 1 << 30)) flow += got;
  }
  return flow;
}

int MaxFlow::net_flow(int arc_index) const {
  const auto [u, pos] = arc_index_[static_cast<std::size_t>(arc_index)];
  const Arc& fwd = graph_[u][pos];
  return fwd.orig - fwd.cap;
}

std::vector<std::vector<int>> MaxFlow::unit_paths(int source, int sink) {
  // Build the net unit-flow multigraph: antiparallel pushes cancel, so each
  // arc contributes max(0, orig - cap) units in its own direction.
  const int n = node_count();
  std::vector<std::vector<std::pair<int, int>>> out(n);  // (to, units)
  for (int u = 0; u < n; ++u) {
    for (const Arc& a : graph_[u]) {
      const int units = a.orig - a.cap;
      if (units > 0) out[u].push_back({a.to, units});
    }
  }
  std::vector<int> cursor(n, 0);
  std::vector<std::vector<int>> paths;
  while (true) {
    // Walk from the source consuming one unit per step. Conservation at
    // intermediate nodes guarantees the walk can only stop at the sink.
    std::vector<int> walk{source};
    int u = source;
    bool moved = false;
    while (u != sink || walk.size() == 1) {
      int& it = cursor[u];
      while (it < static_cast<int>(out[u].size()) && out[u][it].second == 0) {
        ++it;
      }
      if (it >= static_cast<int>(out[u].size())) break;
      --out[u][it].second;
      u = out[u][it].first;
      walk.push_back(u);
      moved = true;
      if (u == sink) break;
    }
    if (!moved || walk.back() != sink) break;
    // Splice out any cycles so the reported path is simple.
    std::vector<int> seen(n, -1);
    std::vector<int> simple;
    for (int node : walk) {
      if (seen[node] >= 0) {
        for (std::size_t k = simple.size(); k-- > static_cast<std::size_t>(seen[node]) + 1;) {
          seen[simple[k]] = -1;
          simple.pop_back();
        }
      } else {
        seen[node] = static_cast<int>(simple.size());
        simple.push_back(node);
      }
    }
    paths.push_back(std::move(simple));
  }
  return paths;
}

}  // namespace isac
