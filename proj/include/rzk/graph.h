// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace rzk {

/// Undirected edge stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
  bool touches(int x) const { return u == x || v == x; }
};

class Graph {
 public:
  /// Throws ConfigError on self-loops, duplicate edges or out-of-range
  /// endpoints. Edge order is preserved; endpoints are normalized to u < v.
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  /// 0-indexed "u v" lines, blank lines ignored; vertex count is one more
  /// than the largest index. Throws ConfigError on malformed input.
  static Graph parse_edge_list(std::istream& in);
  static Graph load_edge_list(const std::string& path);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph star(int n);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }
  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }
  /// -1 when absent.
  int edge_index(int u, int v) const;
  /// Indices of edges incident to v.
  const std::vector<int>& incident(int v) const { return incident_[static_cast<std::size_t>(v)]; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<int> index_;  // n*n lookup
};

/// Cyclic vertex order visiting every vertex once along edges of g.
bool is_hamiltonian_cycle(const Graph& g, const std::vector<int>& cycle);
bool is_proper_coloring(const Graph& g, const std::vector<int>& colors);

}  // namespace rzk
