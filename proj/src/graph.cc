// SPDX-License-Identifier: Apache-2.0
#include "rzk/graph.h"

#include <fstream>
#include <sstream>

#include "rzk/errors.h"

namespace rzk {

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges)
    : n_(vertex_count),
      incident_(static_cast<std::size_t>(std::max(vertex_count, 0))),
      index_(static_cast<std::size_t>(std::max(vertex_count, 0)) *
                 static_cast<std::size_t>(std::max(vertex_count, 0)),
             -1) {
  if (n_ < 1) throw ConfigError("graph needs at least one vertex");
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw ConfigError("edge endpoint out of range");
    if (a == b) throw ConfigError("self-loop at vertex " + std::to_string(a));
    const Edge e{std::min(a, b), std::max(a, b)};
    auto& slot = index_[static_cast<std::size_t>(e.u * n_ + e.v)];
    if (slot >= 0) {
      throw ConfigError("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
    slot = static_cast<int>(edges_.size());
    index_[static_cast<std::size_t>(e.v * n_ + e.u)] = slot;
    incident_[static_cast<std::size_t>(e.u)].push_back(slot);
    incident_[static_cast<std::size_t>(e.v)].push_back(slot);
    edges_.push_back(e);
  }
}

Graph Graph::parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long a = 0, b = 0;
    std::string rest;
    if (!(ls >> a >> b) || (ls >> rest)) {
      throw ConfigError("edge list line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    if (a < 0 || b < 0 || a > 1 << 20 || b > 1 << 20) {
      throw ConfigError("edge list line " + std::to_string(line_no) + ": vertex out of range");
    }
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
    max_vertex = std::max({max_vertex, static_cast<int>(a), static_cast<int>(b)});
  }
  if (edges.empty()) throw ConfigError("edge list is empty");
  return Graph(max_vertex + 1, edges);
}

Graph Graph::load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open graph file " + path);
  return parse_edge_list(in);
}

Graph Graph::complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph(n, edges);
}

Graph Graph::cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, edges);
}

Graph Graph::path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph Graph::star(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph(n, edges);
}

int Graph::edge_index(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
  return index_[static_cast<std::size_t>(u * n_ + v)];
}

bool is_hamiltonian_cycle(const Graph& g, const std::vector<int>& cycle) {
  const int n = g.vertex_count();
  if (static_cast<int>(cycle.size()) != n || n < 3) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : cycle) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (int k = 0; k < n; ++k) {
    if (!g.has_edge(cycle[static_cast<std::size_t>(k)], cycle[static_cast<std::size_t>((k + 1) % n)])) {
      return false;
    }
  }
  return true;
}

bool is_proper_coloring(const Graph& g, const std::vector<int>& colors) {
  if (static_cast<int>(colors.size()) != g.vertex_count()) return false;
  for (int c : colors) {
    if (c < 0 || c > 2) return false;
  }
  for (const Edge& e : g.edges()) {
    if (colors[static_cast<std::size_t>(e.u)] == colors[static_cast<std::size_t>(e.v)]) return false;
  }
  return true;
}

}  // namespace rzk
