// SPDX-License-Identifier: Apache-2.0
#include "rzk/hamiltonian.h"

#include <numeric>
#include <string>

#include "rzk/errors.h"

namespace rzk {

FieldMatrix FieldMatrix::uniform(const FieldSpec& field, int n, Rng& rng) {
  FieldMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = field.sample(rng);
  }
  return m;
}

bool Permutation::is_valid() const {
  std::vector<bool> hit(images.size(), false);
  for (int v : images) {
    if (v < 0 || static_cast<std::size_t>(v) >= images.size() || hit[static_cast<std::size_t>(v)]) {
      return false;
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation Permutation::inverse() const {
  if (!is_valid()) throw ExtractionError("opened relabeling is not a permutation");
  Permutation inv{std::vector<int>(images.size())};
  for (std::size_t v = 0; v < images.size(); ++v) {
    inv.images[static_cast<std::size_t>(images[v])] = static_cast<int>(v);
  }
  return inv;
}

Permutation Permutation::identity(int n) {
  Permutation p{std::vector<int>(static_cast<std::size_t>(n))};
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation Permutation::uniform(int n, Rng& rng) {
  Permutation p = identity(n);
  rng.shuffle(p.images);
  return p;
}

FieldMatrix adjacency_matrix(const FieldSpec& field, const Graph& g, const Permutation& pi) {
  const int n = g.vertex_count();
  if (static_cast<int>(pi.images.size()) != n || !pi.is_valid()) {
    throw ConfigError("relabeling must be a permutation of the vertices");
  }
  FieldMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.at(i, j) = field.zero();
  }
  for (const Edge& e : g.edges()) {
    m.at(pi(e.u), pi(e.v)) = field.one();
    m.at(pi(e.v), pi(e.u)) = field.one();
  }
  return m;
}

FieldMatrix hc_commit_matrix(const FieldSpec& field, const Graph& g, const Permutation& pi,
                             const FieldMatrix& b, const FieldMatrix& a) {
  const int n = g.vertex_count();
  if (a.size() != n || b.size() != n) throw ConfigError("matrix dimension does not match the graph");
  const FieldMatrix m = adjacency_matrix(field, g, pi);
  FieldMatrix y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) y.at(i, j) = field.add(a.at(i, j), field.mul(b.at(i, j), m.at(i, j)));
  }
  return y;
}

HcResponse hc_respond(int ch, const HamiltonianWitness& witness) {
  if (ch == 0) return HcOpenAll{witness.pi, witness.a};
  if (ch != 1) throw DomainError("challenge must be 0 or 1");
  HcOpenCycle open;
  const std::size_t n = witness.cycle.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int u = witness.pi(witness.cycle[k]);
    const int v = witness.pi(witness.cycle[(k + 1) % n]);
    open.cycle.emplace_back(u, v);
    open.values.push_back(witness.a.at(u, v));
  }
  return open;
}

std::optional<std::vector<int>> cycle_vertices(const CycleEdges& edges, int n) {
  if (n < 3 || static_cast<int>(edges.size()) != n) return std::nullopt;
  std::vector<int> next(static_cast<std::size_t>(n), -1);
  std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return std::nullopt;
    if (next[static_cast<std::size_t>(u)] >= 0) return std::nullopt;
    next[static_cast<std::size_t>(u)] = v;
    if (++in_degree[static_cast<std::size_t>(v)] > 1) return std::nullopt;
  }
  std::vector<int> order;
  int v = edges.front().first;
  for (int step = 0; step < n; ++step) {
    order.push_back(v);
    v = next[static_cast<std::size_t>(v)];
    if (v < 0) return std::nullopt;
  }
  if (v != edges.front().first) return std::nullopt;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int x : order) {
    if (seen[static_cast<std::size_t>(x)]) return std::nullopt;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return order;
}

Check hc_verify(const FieldSpec& field, const Graph& g, const FieldMatrix& b, const FieldMatrix& y,
                int ch, const HcResponse& resp) {
  const int n = g.vertex_count();
  if (b.size() != n || y.size() != n) return Check::fail("shape: matrix dimension");
  for (const auto* m : {&b, &y}) {
    for (const FieldElement& x : m->data()) {
      if (!field.contains(x.value())) return Check::fail("shape: entry outside the field");
    }
  }
  if (ch == 0) {
    const auto* open = std::get_if<HcOpenAll>(&resp);
    if (open == nullptr) return Check::fail("shape: expected full opening");
    if (static_cast<int>(open->pi.images.size()) != n || !open->pi.is_valid()) {
      return Check::fail("relabeling is not a permutation");
    }
    if (open->a.size() != n) return Check::fail("shape: opened pad dimension");
    const FieldMatrix expected = hc_commit_matrix(field, g, open->pi, b, open->a);
    if (!(expected == y)) return Check::fail("commitment does not open to pi(G)");
    return Check::pass();
  }
  if (ch == 1) {
    const auto* open = std::get_if<HcOpenCycle>(&resp);
    if (open == nullptr) return Check::fail("shape: expected cycle opening");
    if (open->values.size() != open->cycle.size()) return Check::fail("shape: value count");
    if (!cycle_vertices(open->cycle, n)) return Check::fail("opened edges are not a Hamiltonian cycle");
    for (std::size_t k = 0; k < open->cycle.size(); ++k) {
      const auto [u, v] = open->cycle[k];
      if (y.at(u, v) != field.add(open->values[k], b.at(u, v))) {
        return Check::fail("cycle entry does not open to 1");
      }
    }
    return Check::pass();
  }
  return Check::fail("challenge outside {0,1}");
}

CycleEdges k0_hc(const HcOpenAll& open_all, const HcOpenCycle& open_cycle) {
  const Permutation inv = open_all.pi.inverse();
  const int n = static_cast<int>(inv.images.size());
  CycleEdges out;
  for (auto [u, v] : open_cycle.cycle) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw ExtractionError("cycle endpoint out of range");
    out.emplace_back(inv(u), inv(v));
  }
  return out;
}

bool is_hamiltonian_cycle_edges(const Graph& g, const CycleEdges& edges) {
  const auto order = cycle_vertices(edges, g.vertex_count());
  return order && is_hamiltonian_cycle(g, *order);
}

std::pair<HcCommitter, HcResponder> make_honest_hc_provers(const HamiltonianCycleProtocol& protocol,
                                                           const std::vector<int>& cycle, Rng& rng) {
  const int n = protocol.graph().vertex_count();
  if (!is_hamiltonian_cycle(protocol.graph(), cycle)) {
    throw ConfigError("witness is not a Hamiltonian cycle of the graph");
  }
  Permutation pi = Permutation::uniform(n, rng);
  FieldMatrix a = FieldMatrix::uniform(protocol.field(), n, rng);
  HcCommitter committer{protocol.field(), protocol.graph(), pi, a};
  HcResponder responder{HamiltonianWitness{cycle, pi, a}};
  return {std::move(committer), std::move(responder)};
}

HcResponse HcRandomResponder::respond(int ch) {
  if (ch == 0) return HcOpenAll{Permutation::uniform(n, rng), FieldMatrix::uniform(field, n, rng)};
  const Permutation order = Permutation::uniform(n, rng);
  HcOpenCycle open;
  for (int k = 0; k < n; ++k) {
    open.cycle.emplace_back(order(k), order((k + 1) % n));
    open.values.push_back(field.sample(rng));
  }
  return open;
}

HcResponse HcFirstChallengeOnlyResponder::respond(int ch) const {
  HcResponse r = hc_respond(ch, witness);
  if (ch == 1) {
    auto& open = std::get<HcOpenCycle>(r);
    open.values.front() = field.add(open.values.front(), field.one());
  }
  return r;
}

void to_json(nlohmann::json& j, const FieldMatrix& m) {
  j = nlohmann::json::array();
  for (int i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.size(); ++c) row.push_back(m.at(i, c).value());
    j.push_back(std::move(row));
  }
}

void to_json(nlohmann::json& j, const Permutation& p) { j = p.images; }

void to_json(nlohmann::json& j, const HcResponse& r) {
  if (const auto* all = std::get_if<HcOpenAll>(&r)) {
    j = {{"pi", all->pi}, {"a", all->a}};
  } else {
    const auto& open = std::get<HcOpenCycle>(r);
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : open.values) values.push_back(v.value());
    j = {{"cycle", open.cycle}, {"a", values}};
  }
}

}  // namespace rzk
