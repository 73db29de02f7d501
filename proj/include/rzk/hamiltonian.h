// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rzk/field.h"
#include "rzk/graph.h"
#include "rzk/sigma.h"

namespace rzk {

/// Square matrix over a prime field, row-major.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  explicit FieldMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  int size() const { return n_; }
  FieldElement& at(int i, int j) { return data_[index(i, j)]; }
  const FieldElement& at(int i, int j) const { return data_[index(i, j)]; }
  const std::vector<FieldElement>& data() const { return data_; }

  static FieldMatrix uniform(const FieldSpec& field, int n, Rng& rng);
  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }
  int n_ = 0;
  std::vector<FieldElement> data_;
};

/// images[v] is the image of vertex v.
struct Permutation {
  std::vector<int> images;

  bool is_valid() const;
  /// Throws ExtractionError if not a permutation.
  Permutation inverse() const;
  int operator()(int v) const { return images[static_cast<std::size_t>(v)]; }
  static Permutation identity(int n);
  static Permutation uniform(int n, Rng& rng);
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Directed edges (u, v) in traversal order.
using CycleEdges = std::vector<std::pair<int, int>>;

/// 0/1 adjacency matrix of the relabeled graph pi(G).
FieldMatrix adjacency_matrix(const FieldSpec& field, const Graph& g, const Permutation& pi);

/// Y = A + B ∘ M entrywise, M the adjacency matrix of pi(G).
/// Throws ConfigError on dimension mismatch.
FieldMatrix hc_commit_matrix(const FieldSpec& field, const Graph& g, const Permutation& pi,
                             const FieldMatrix& b, const FieldMatrix& a);

struct HcOpenAll {
  Permutation pi;
  FieldMatrix a;
  friend bool operator==(const HcOpenAll&, const HcOpenAll&) = default;
};

struct HcOpenCycle {
  CycleEdges cycle;
  std::vector<FieldElement> values;  // A entries on the cycle, in order
  friend bool operator==(const HcOpenCycle&, const HcOpenCycle&) = default;
};

using HcResponse = std::variant<HcOpenAll, HcOpenCycle>;

/// The provers' shared secret: a Hamiltonian cycle, a relabeling and the
/// one-time pad A.
struct HamiltonianWitness {
  std::vector<int> cycle;
  Permutation pi;
  FieldMatrix a;
};

/// ch = 0 opens (pi, A); ch = 1 opens pi(cycle) and the A entries on it.
/// Throws DomainError unless ch is 0 or 1.
HcResponse hc_respond(int ch, const HamiltonianWitness& witness);

Check hc_verify(const FieldSpec& field, const Graph& g, const FieldMatrix& b, const FieldMatrix& y,
                int ch, const HcResponse& resp);

/// Follows the edge list as a successor map; nullopt unless it is a single
/// cycle through every vertex of an n-vertex graph exactly once.
std::optional<std::vector<int>> cycle_vertices(const CycleEdges& edges, int n);

/// pi^{-1} applied to the opened cycle. Validity is the caller's business.
/// Throws ExtractionError if pi is not a permutation or an endpoint is out of range.
CycleEdges k0_hc(const HcOpenAll& open_all, const HcOpenCycle& open_cycle);

/// True when the edges form a Hamiltonian cycle of g.
bool is_hamiltonian_cycle_edges(const Graph& g, const CycleEdges& edges);

class HamiltonianCycleProtocol {
 public:
  using Rand = FieldMatrix;
  using Com = FieldMatrix;
  using Challenge = int;
  using Response = HcResponse;

  HamiltonianCycleProtocol(FieldSpec field, Graph graph)
      : field_(field), graph_(std::move(graph)) {}

  Rand sample_rand(Rng& rng) const { return FieldMatrix::uniform(field_, graph_.vertex_count(), rng); }
  std::vector<Challenge> challenges() const { return {0, 1}; }
  Check verify(const Rand& b, const Com& y, const Challenge& ch, const Response& resp) const {
    return hc_verify(field_, graph_, b, y, ch, resp);
  }

  const FieldSpec& field() const { return field_; }
  const Graph& graph() const { return graph_; }

 private:
  FieldSpec field_;
  Graph graph_;
};

struct HcCommitter {
  FieldSpec field;
  Graph graph;
  Permutation pi;
  FieldMatrix a;
  FieldMatrix commit(const FieldMatrix& b) const { return hc_commit_matrix(field, graph, pi, b, a); }
};

struct HcResponder {
  HamiltonianWitness witness;
  HcResponse respond(int ch) const { return hc_respond(ch, witness); }
};

/// Honest provers sharing a uniformly random relabeling and pad drawn from rng.
std::pair<HcCommitter, HcResponder> make_honest_hc_provers(const HamiltonianCycleProtocol& protocol,
                                                           const std::vector<int>& cycle, Rng& rng);

/// Provers that send uniformly random messages of the right shape.
struct HcRandomCommitter {
  FieldSpec field;
  int n;
  Rng rng;
  FieldMatrix commit(const FieldMatrix&) { return FieldMatrix::uniform(field, n, rng); }
};

struct HcRandomResponder {
  FieldSpec field;
  int n;
  Rng rng;
  HcResponse respond(int ch);
};

/// Answers ch = 0 honestly and ch = 1 with a corrupted opening.
struct HcFirstChallengeOnlyResponder {
  HamiltonianWitness witness;
  FieldSpec field;
  HcResponse respond(int ch) const;
};

void to_json(nlohmann::json& j, const FieldMatrix& m);
void to_json(nlohmann::json& j, const Permutation& p);
void to_json(nlohmann::json& j, const HcResponse& r);

}  // namespace rzk
