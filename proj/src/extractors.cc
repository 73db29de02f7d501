// SPDX-License-Identifier: Apache-2.0
#include "rzk/extractors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace rzk {

namespace {

template <class Want, class Variant>
const Want* pick(const Variant& a, const Variant& b) {
  if (const auto* x = std::get_if<Want>(&a)) return x;
  return std::get_if<Want>(&b);
}

int int_power(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > (std::int64_t{1} << 40)) throw CapacityError("enumeration too large");
  }
  return static_cast<int>(r);
}

/// Digits of `code` in base q, least significant first.
void decode(std::int64_t code, int q, std::vector<int>& digits) {
  for (auto& d : digits) {
    d = static_cast<int>(code % q);
    code /= q;
  }
}

/// A unitary whose first column is the unit vector u.
Matrix unitary_with_first_column(const Vector& u) {
  const auto m = static_cast<int>(u.size());
  Matrix basis = Matrix::Identity(m, m);
  basis.col(0) = u;
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ();
  const Complex phase = q.col(0).dot(u);
  q.col(0) *= phase / std::abs(phase);
  return q;
}

Matrix hermitian_exp(const Matrix& h, double angle) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  Vector phases(vals.size());
  for (int i = 0; i < vals.size(); ++i) phases(i) = std::polar(1.0, angle * vals(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

SpecialExtraction<CycleEdges> HcSpecialExtractor::operator()(const HcResponse& first,
                                                             const HcResponse& second) const {
  const auto* all = pick<HcOpenAll>(first, second);
  const auto* cycle = pick<HcOpenCycle>(first, second);
  if (all == nullptr || cycle == nullptr) return {};
  try {
    CycleEdges edges = k0_hc(*all, *cycle);
    const bool valid = is_hamiltonian_cycle_edges(*graph, edges);
    return {std::move(edges), valid};
  } catch (const ExtractionError&) {
    return {};
  }
}

SpecialExtraction<Bits> SubsetSpecialExtractor::operator()(const SubsetResponse& first,
                                                           const SubsetResponse& second) const {
  const auto* all = pick<SubsetOpenAll>(first, second);
  const auto* sum = pick<SubsetOpenSum>(first, second);
  if (all == nullptr || sum == nullptr) return {};
  try {
    Bits w = k0_subset(*all, *sum);
    const bool valid = is_subset_witness(*instance, w);
    return {std::move(w), valid};
  } catch (const ExtractionError&) {
    return {};
  }
}

nlohmann::json witness_json(const CycleEdges& edges) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [u, v] : edges) j.push_back({u, v});
  return j;
}

nlohmann::json witness_json(const Bits& bits) { return bits; }

DoubleOpeningReport enumerate_hc_double_openings(const FieldSpec& field, const Graph& g, EnumerationMode mode) {
  const int n = g.vertex_count();
  const int q = static_cast<int>(field.q());
  if (n < 3) throw DomainError("double-opening enumeration needs at least 3 vertices");
  const int pad_entries = mode == EnumerationMode::full ? n * n : n;
  const int b_entries = pad_entries;
  const int pads = int_power(q, pad_entries);
  const int opened = int_power(q, n);
  const int bs = int_power(q, b_entries);
  int perms = 1, cycles = 1;
  for (int i = 2; i <= n; ++i) perms *= i;
  for (int i = 2; i < n; ++i) cycles *= i;
  const double work = static_cast<double>(perms) * cycles * pads * static_cast<double>(opened) * bs;
  if (work > 2.5e8) throw CapacityError("double-opening enumeration exceeds the work limit");

  DoubleOpeningReport rep;
  rep.q = field.q();
  rep.full = mode == EnumerationMode::full;
  rep.b_count = bs;

  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<int> a_digits(static_cast<std::size_t>(pad_entries));
  std::vector<int> o_digits(static_cast<std::size_t>(n));
  std::vector<int> b_digits(static_cast<std::size_t>(b_entries));
  std::vector<int> on_pi(static_cast<std::size_t>(n));       // M entry on each cycle edge
  std::vector<int> slot(static_cast<std::size_t>(n));        // pad/B slot of each cycle edge
  do {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    do {
      CycleEdges cycle;
      for (int i = 0; i < n; ++i) cycle.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>((i + 1) % n)]);
      bool k0_valid = true;
      for (int i = 0; i < n; ++i) {
        const auto [u, v] = cycle[static_cast<std::size_t>(i)];
        // M(Pi(G))_{uv} = 1 iff (pi^{-1}(u), pi^{-1}(v)) is an edge of G.
        const int pu = static_cast<int>(std::find(pi.begin(), pi.end(), u) - pi.begin());
        const int pv = static_cast<int>(std::find(pi.begin(), pi.end(), v) - pi.begin());
        on_pi[static_cast<std::size_t>(i)] = g.has_edge(pu, pv) ? 1 : 0;
        if (on_pi[static_cast<std::size_t>(i)] == 0) k0_valid = false;
        slot[static_cast<std::size_t>(i)] = mode == EnumerationMode::full ? u * n + v : i;
      }
      for (std::int64_t a_code = 0; a_code < pads; ++a_code) {
        decode(a_code, q, a_digits);
        for (std::int64_t o_code = 0; o_code < opened; ++o_code) {
          decode(o_code, q, o_digits);
          std::int64_t both = 0;
          for (std::int64_t b_code = 0; b_code < bs; ++b_code) {
            decode(b_code, q, b_digits);
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
              const auto s = static_cast<std::size_t>(slot[static_cast<std::size_t>(i)]);
              const int y = (a_digits[s] + b_digits[s] * on_pi[static_cast<std::size_t>(i)]) % q;
              ok = y == (o_digits[static_cast<std::size_t>(i)] + b_digits[s]) % q;
            }
            if (ok) ++both;
          }
          if (both == 0) continue;
          ++rep.adversaries;
          rep.both_accepting += both;
          const std::int64_t fails = k0_valid ? 0 : both;
          rep.failures += fails;
          // fail/both <= 1/(q * both/bs)  <=>  fails * q <= bs
          const Rational ratio(fails * q, bs);
          if (ratio > Rational(1)) ++rep.violations;
          rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        }
      }
    } while (std::next_permutation(order.begin() + 1, order.end()));
  } while (std::next_permutation(pi.begin(), pi.end()));
  return rep;
}

Vector project_coordinates(const Vector& psi, const std::vector<int>& dims, int site, const std::vector<int>& keep) {
  int left = 1, right = 1;
  for (int i = 0; i < site; ++i) left *= dims[static_cast<std::size_t>(i)];
  for (std::size_t i = static_cast<std::size_t>(site) + 1; i < dims.size(); ++i) right *= dims[i];
  const int d = dims[static_cast<std::size_t>(site)];
  Vector out = Vector::Zero(psi.size());
  for (int l = 0; l < left; ++l) {
    for (int k : keep) {
      const int base = (l * d + k) * right;
      out.segment(base, right) = psi.segment(base, right);
    }
  }
  return out;
}

nlohmann::json to_json(const QuantumExtractionReport& r, bool include_ledger) {
  nlohmann::json j;
  j["name"] = r.name;
  j["witness"] = r.sampled_witness ? *r.sampled_witness : nlohmann::json(nullptr);
  j["sampled_success"] = r.sampled_success;
  j["success_probability"] = r.success;
  j["acceptance_probability"] = r.acceptance;
  j["both_accept_probability"] = r.both_accept;
  j["delta_ss"] = r.delta_ss;
  j["ra_max"] = r.ra_max;
  j["bound_rhs"] = r.bound_rhs;
  j["ledger_total"] = r.ledger_total;
  if (include_ledger) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : r.ledger) {
      rows.push_back({{"rand", e.rand}, {"com", e.com}, {"ch", e.ch}, {"ch2", e.ch2}, {"resp", e.resp},
                      {"resp2", e.resp2}, {"probability", e.probability}, {"both_accept", e.both_accept},
                      {"valid", e.valid}});
    }
    j["branch_ledger"] = rows;
  }
  return j;
}

QuantumProverSpec<SubsetSumProtocol> subset_quantum_spec(const SubsetSumProtocol& protocol,
                                                         const std::vector<SubsetBranch>& branches,
                                                         std::string name) {
  const SubsetSumInstance& inst = protocol.instance();
  const FieldSpec& f = inst.field;
  const int q = static_cast<int>(f.q());
  const int branch_count = static_cast<int>(branches.size());
  if (branch_count < 1) throw ConfigError("a spec needs at least one branch");

  // Commitment tables per branch and rand.
  std::vector<std::vector<SubsetCommitment>> coms(static_cast<std::size_t>(branch_count));
  std::vector<std::vector<SubsetCommitment>> slots(static_cast<std::size_t>(branch_count));
  std::vector<std::array<SubsetResponse, 4>> answers;
  for (const auto& br : branches) {
    const SubsetSecret& sec = br.secret;
    SubsetResponse open_all = subset_respond(0, inst, sec);
    SubsetResponse open_sum = subset_respond(1, inst, sec);
    auto bad_all = std::get<SubsetOpenAll>(open_all);
    bad_all.c0[0] = f.add(bad_all.c0[0], f.one());
    auto bad_sum = std::get<SubsetOpenSum>(open_sum);
    bad_sum.c_sum = f.add(bad_sum.c_sum, f.one());
    answers.push_back({open_all, open_sum, bad_all, bad_sum});

    auto& table = coms[answers.size() - 1];
    auto& distinct = slots[answers.size() - 1];
    for (int a = 0; a < q; ++a) {
      const FieldElement fa = f.element(static_cast<std::uint64_t>(a));
      SubsetCommitment c = subset_commit(inst, fa, sec);
      if (br.forged_challenge == 1) {
        const auto& open = std::get<SubsetOpenSum>(open_sum);
        FieldElement total = f.zero();
        for (std::size_t i = 0; i < open.x.size(); ++i) total = f.add(total, open.x[i] ? c.w1[i] : c.w0[i]);
        const FieldElement fix = f.sub(f.add(f.mul(fa, inst.k), open.c_sum), total);
        auto& w = open.x[0] ? c.w1 : c.w0;
        w[0] = f.add(w[0], fix);
      }
      table.push_back(c);
      if (std::find(distinct.begin(), distinct.end(), c) == distinct.end()) distinct.push_back(c);
    }
  }
  int m1 = 1;
  for (const auto& s : slots) m1 = std::max(m1, static_cast<int>(s.size()));
  const int m2 = 4;

  QuantumProverSpec<SubsetSumProtocol> spec;
  spec.name = std::move(name);
  spec.first_dim = branch_count * m1;
  spec.second_dim = branch_count * m2;
  spec.initial = Vector::Zero(spec.first_dim * spec.second_dim);
  double total_weight = 0.0;
  for (const auto& br : branches) total_weight += br.weight;
  for (int k = 0; k < branch_count; ++k) {
    const double amp = std::sqrt(branches[static_cast<std::size_t>(k)].weight / total_weight);
    spec.initial((k * m1) * spec.second_dim + k * m2) = amp;
    for (int j = 0; j < m1; ++j) {
      const auto& s = slots[static_cast<std::size_t>(k)];
      spec.com_labels.push_back(s[static_cast<std::size_t>(std::min<int>(j, static_cast<int>(s.size()) - 1))]);
    }
  }
  for (int k = 0; k < branch_count; ++k) {
    for (int r = 0; r < m2; ++r) spec.resp_labels.push_back(answers[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)]);
  }
  for (int a = 0; a < q; ++a) {
    spec.rands.push_back(f.element(static_cast<std::uint64_t>(a)));
    Matrix u = Matrix::Identity(spec.first_dim, spec.first_dim);
    for (int k = 0; k < branch_count; ++k) {
      const auto& s = slots[static_cast<std::size_t>(k)];
      const auto& c = coms[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)];
      const int target = static_cast<int>(std::find(s.begin(), s.end(), c) - s.begin());
      if (target != 0) {
        const int i0 = k * m1, i1 = k * m1 + target;
        u(i0, i0) = 0.0;
        u(i1, i1) = 0.0;
        u(i0, i1) = 1.0;
        u(i1, i0) = 1.0;
      }
    }
    spec.first_unitaries.push_back(u);
  }
  for (int ch = 0; ch < 2; ++ch) {
    spec.challenges.push_back(ch);
    Matrix v = Matrix::Identity(spec.second_dim, spec.second_dim);
    for (int k = 0; k < branch_count; ++k) {
      const auto& amp = branches[static_cast<std::size_t>(k)].answer[static_cast<std::size_t>(ch)];
      Vector u = Vector::Zero(m2);
      u(ch) = amp[0];
      u(ch + 2) = amp[1];
      if (u.norm() == 0.0) throw ConfigError("answer amplitudes must not both vanish");
      u /= u.norm();
      v.block(k * m2, k * m2, m2, m2) = unitary_with_first_column(u);
    }
    spec.second_unitaries.push_back(v);
  }
  return spec;
}

std::vector<std::pair<SubsetSumProtocol, QuantumProverSpec<SubsetSumProtocol>>> subset_spec_catalogue(
    int count, std::uint64_t seed) {
  static constexpr std::array<std::uint64_t, 3> kFields{3, 5, 7};
  const Rng root(seed);
  std::vector<std::pair<SubsetSumProtocol, QuantumProverSpec<SubsetSumProtocol>>> out;
  for (int i = 0; i < count; ++i) {
    Rng rng = root.split(static_cast<std::uint64_t>(i));
    const FieldSpec f(kFields[static_cast<std::size_t>(i % 3)]);
    const int kind = (i / 3) % 6;
    const FieldElement s = f.element(1 + rng.uniform_below(f.q() - 1));
    const bool solvable = kind != 5;
    FieldElement k = s;
    if (!solvable) {
      // k outside {0, s} has no subset solution for n = 1.
      do {
        k = f.sample(rng);
      } while (k == f.zero() || k == s);
    }
    SubsetSumProtocol protocol(SubsetSumInstance{f, {s}, k});
    const Bits witness{static_cast<std::uint8_t>(solvable ? 1 : rng.uniform_below(2))};
    auto branch = [&](double weight) {
      SubsetBranch b;
      b.weight = weight;
      b.secret = SubsetSecret::random(protocol.instance(), witness, rng);
      return b;
    };
    auto rotation = [&](double theta) {
      const double phase = 2.0 * std::numbers::pi * rng.uniform01();
      return std::array<Complex, 2>{Complex(std::cos(theta)), std::polar(std::sin(theta), phase)};
    };
    std::vector<SubsetBranch> branches;
    std::string name;
    switch (kind) {
      case 0:
        name = "honest";
        branches.push_back(branch(1.0));
        break;
      case 1: {
        name = "one-branch";
        SubsetBranch b = branch(1.0);
        b.answer[1] = rotation(1.2 * rng.uniform01());
        branches.push_back(b);
        break;
      }
      case 2: {
        name = "superposed";
        SubsetBranch b = branch(1.0);
        b.answer[0] = rotation(0.6 * rng.uniform01());
        b.answer[1] = rotation(0.6 * rng.uniform01());
        branches.push_back(b);
        break;
      }
      case 3:
        name = "entangled-honest";
        branches.push_back(branch(0.2 + 0.6 * rng.uniform01()));
        branches.push_back(branch(1.0 - branches.back().weight));
        break;
      case 4: {
        name = "entangled-mixed";
        branches.push_back(branch(0.3 + 0.6 * rng.uniform01()));
        SubsetBranch cheat = branch(1.0 - branches.back().weight);
        cheat.answer[1] = {Complex(0), Complex(1)};
        branches.push_back(cheat);
        break;
      }
      default: {
        name = "guessing";
        SubsetBranch b = branch(1.0);
        b.forged_challenge = static_cast<int>(rng.uniform_below(2));
        branches.push_back(b);
        break;
      }
    }
    name += "-q" + std::to_string(f.q()) + "-" + std::to_string(i);
    auto spec = subset_quantum_spec(protocol, branches, name);
    out.emplace_back(std::move(protocol), std::move(spec));
  }
  return out;
}

ColoringExtraction extract_3col_from_tables(const Graph& g, const PairDistribution& d, const AnswerTable& first,
                                            const AnswerTable& second) {
  const int n = g.vertex_count();
  const auto nv = static_cast<std::size_t>(n);
  std::vector<int> mark(nv, -1);
  std::vector<bool> question(nv, false);
  std::vector<std::array<int, 3>> seen(nv, {0, 0, 0});

  for (const auto& e : d.support()) {
    const Question q1 = Question::from_index(e.q1);
    const Question q2 = Question::from_index(e.q2);
    const Answer& a1 = first[static_cast<std::size_t>(e.q1)];
    const Answer& a2 = second[static_cast<std::size_t>(e.q2)];
    const bool pass = threecol_2p_verify(g, q1, q2, a1, a2);
    const Edge& edge = g.edge(q1.edge);
    if (q1.edge == q2.edge && q1.b != q2.b) {
      const std::array<int, 2> ends{edge.u, edge.v};
      for (int side = 0; side < 2; ++side) {
        const auto v = static_cast<std::size_t>(ends[static_cast<std::size_t>(side)]);
        const int color = (a1[static_cast<std::size_t>(side)] + a2[static_cast<std::size_t>(side)]) % 3;
        ++seen[v][static_cast<std::size_t>(color)];
        if (!pass) {
          question[v] = true;
        } else if (mark[v] < 0) {
          mark[v] = color;
        } else if (mark[v] != color) {
          question[v] = true;
        }
      }
    } else if (!pass) {
      const Edge& other = g.edge(q2.edge);
      for (int side = 0; side < 2; ++side) {
        const int x = side == 0 ? edge.u : edge.v;
        if (!other.touches(x)) continue;
        const int other_side = other.u == x ? 0 : 1;
        if (a1[static_cast<std::size_t>(side)] != a2[static_cast<std::size_t>(other_side)]) {
          question[static_cast<std::size_t>(x)] = true;
        }
      }
    }
  }

  ColoringExtraction out;
  out.coloring.assign(nv, 0);
  out.question_marked = question;
  std::vector<int> open;
  std::vector<std::vector<int>> choices;
  for (std::size_t v = 0; v < nv; ++v) {
    if (!question[v] && mark[v] >= 0) {
      out.coloring[v] = mark[v];
      continue;
    }
    std::vector<int> c;
    for (int color = 0; color < 3; ++color) {
      if (seen[v][static_cast<std::size_t>(color)] > 0) c.push_back(color);
    }
    if (c.empty()) c = {0, 1, 2};
    std::stable_sort(c.begin(), c.end(), [&](int x, int y) {
      return seen[v][static_cast<std::size_t>(x)] > seen[v][static_cast<std::size_t>(y)];
    });
    out.coloring[v] = c.front();
    open.push_back(static_cast<int>(v));
    choices.push_back(std::move(c));
  }

  if (!open.empty() && open.size() <= 12) {
    std::vector<std::size_t> choice(open.size(), 0);
    std::vector<int> trial = out.coloring;
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < open.size(); ++i) trial[static_cast<std::size_t>(open[i])] = choices[i][choice[i]];
      if (is_proper_coloring(g, trial)) {
        out.coloring = trial;
        break;
      }
      more = false;
      for (std::size_t i = open.size(); i-- > 0;) {
        if (++choice[i] < choices[i].size()) {
          more = true;
          break;
        }
        choice[i] = 0;
      }
    }
  }
  out.proper = is_proper_coloring(g, out.coloring);
  return out;
}

void ThreeColQuantumStrategy::validate(const Graph& g) const {
  if (local_dim < 1 || local_dim > 4) throw CapacityError("3-coloring strategies are limited to local dimension 4");
  if (state.size() != local_dim * local_dim * local_dim) throw ConfigError("shared state has the wrong dimension");
  if (std::abs(state.norm() - 1.0) > kStructuralTolerance) throw ConfigError("shared state is not normalized");
  if (static_cast<int>(families.size()) != 2 * g.edge_count()) throw ConfigError("one family per question is required");
  for (const auto& fam : families) {
    if (fam.size() != 9 || fam.dim() != local_dim) throw ConfigError("families need 9 members of the local dimension");
    fam.validate();
    if (!fam.is_complete()) throw ConfigError("answer families must sum to the identity");
  }
}

ThreeColQuantumStrategy embed_labelings(const Graph& g, const std::vector<Labeling>& labelings,
                                        const std::vector<double>& weights) {
  const int k = static_cast<int>(labelings.size());
  if (k < 1 || weights.size() != labelings.size()) throw ConfigError("one weight per labeling is required");
  ThreeColQuantumStrategy s;
  s.local_dim = k;
  s.state = Vector::Zero(k * k * k);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (int i = 0; i < k; ++i) s.state((i * k + i) * k + i) = std::sqrt(weights[static_cast<std::size_t>(i)] / total);
  for (int qi = 0; qi < 2 * g.edge_count(); ++qi) {
    std::vector<Matrix> members(9, Matrix::Zero(k, k));
    for (int i = 0; i < k; ++i) {
      const Answer a = labelings[static_cast<std::size_t>(i)].answer(g, Question::from_index(qi));
      members[static_cast<std::size_t>(answer_index(a))](i, i) = 1.0;
    }
    s.families.emplace_back(std::move(members));
  }
  return s;
}

ThreeColQuantumStrategy rotate_families(const ThreeColQuantumStrategy& s, double angle, Rng& rng) {
  ThreeColQuantumStrategy out = s;
  out.families.clear();
  const int d = s.local_dim;
  for (const auto& fam : s.families) {
    Matrix h(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) h(i, j) = Complex(rng.normal(), rng.normal());
    }
    h = (h + h.adjoint()).eval();
    const double norm = h.operatorNorm();
    if (norm > 0.0) h /= norm;
    const Matrix u = hermitian_exp(h, angle);
    std::vector<Matrix> members;
    for (const auto& w : fam.projectors()) {
      Matrix r = u * w * u.adjoint();
      r = (0.5 * (r + r.adjoint())).eval();
      members.push_back(r);
    }
    out.families.emplace_back(std::move(members), 1e-9);
  }
  return out;
}

double quantum_acceptance_3p(const Graph& g, const TripleDistribution& d, const ThreeColQuantumStrategy& s) {
  s.validate(g);
  const std::vector<int> dims{s.local_dim, s.local_dim, s.local_dim};
  double total = 0.0;
  for (const auto& e : d.support()) {
    const QuestionTriple q{Question::from_index(e.q1), Question::from_index(e.q2), Question::from_index(e.q3)};
    const auto& f1 = s.families[static_cast<std::size_t>(e.q1)];
    const auto& f2 = s.families[static_cast<std::size_t>(e.q2)];
    const auto& f3 = s.families[static_cast<std::size_t>(e.q3)];
    double accepted = 0.0;
    for (int x = 0; x < 9; ++x) {
      if (f1[x].squaredNorm() == 0.0) continue;
      const Vector v1 = apply_local(s.state, f1[x], dims, 0);
      if (v1.squaredNorm() < 1e-30) continue;
      for (int y = 0; y < 9; ++y) {
        if (f2[y].squaredNorm() == 0.0) continue;
        const Vector v2 = apply_local(v1, f2[y], dims, 1);
        if (v2.squaredNorm() < 1e-30) continue;
        for (int z = 0; z < 9; ++z) {
          if (f3[z].squaredNorm() == 0.0) continue;
          if (!threecol_3p_verify(g, q, {answer_from_index(x), answer_from_index(y), answer_from_index(z)})) continue;
          accepted += apply_local(v2, f3[z], dims, 2).squaredNorm();
        }
      }
    }
    total += accepted * static_cast<double>(e.weight);
  }
  return total / static_cast<double>(d.denominator());
}

QuantumColoringExtraction extract_3col_quantum(const Graph& g, const Rational& epsilon,
                                               const ThreeColQuantumStrategy& s, Rng& rng) {
  s.validate(g);
  const PairDistribution pairs(g, epsilon);
  const TripleDistribution triples(g, epsilon);
  const int d = s.local_dim;
  const int n = pairs.question_count();
  const std::vector<int> dims3{d, d, d};
  const std::vector<int> dims2{d, d};

  QuantumColoringExtraction out;
  out.acceptance_3p = quantum_acceptance_3p(g, triples, s);

  // rho(i, j): the reduced state of the first two provers after the first
  // prover was measured on questions 0..i-1 and the second on 0..j-1.
  const Matrix rho12 = partial_trace(density(s.state), dims3, {0, 1});
  auto channel = [&](const Matrix& rho, int question, int site) {
    Matrix acc = Matrix::Zero(rho.rows(), rho.cols());
    for (const auto& w : s.families[static_cast<std::size_t>(question)].projectors()) {
      if (w.squaredNorm() == 0.0) continue;
      const Matrix lifted = embed(w, dims2, site);
      acc += lifted * rho * lifted;
    }
    return acc;
  };
  std::vector<Matrix> rows(static_cast<std::size_t>(n));
  rows[0] = rho12;
  for (int i = 1; i < n; ++i) rows[static_cast<std::size_t>(i)] = channel(rows[static_cast<std::size_t>(i - 1)], i - 1, 0);
  std::map<std::pair<int, int>, Matrix> needed;
  for (const auto& e : pairs.support()) needed.emplace(std::make_pair(e.q1, e.q2), Matrix());
  for (int i = 0; i < n; ++i) {
    Matrix cur = rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      auto it = needed.find({i, j});
      if (it != needed.end()) it->second = cur;
      if (j + 1 < n) cur = channel(cur, j, 1);
    }
  }
  double classical = 0.0;
  for (const auto& e : pairs.support()) {
    const Matrix& rho = needed.at({e.q1, e.q2});
    const auto& f1 = s.families[static_cast<std::size_t>(e.q1)];
    const auto& f2 = s.families[static_cast<std::size_t>(e.q2)];
    double accepted = 0.0;
    for (int x = 0; x < 9; ++x) {
      if (f1[x].squaredNorm() == 0.0) continue;
      for (int y = 0; y < 9; ++y) {
        if (f2[y].squaredNorm() == 0.0) continue;
        if (!threecol_2p_verify(g, Question::from_index(e.q1), Question::from_index(e.q2), answer_from_index(x),
                                answer_from_index(y))) {
          continue;
        }
        accepted += (kron(f1[x], f2[y]) * rho).trace().real();
      }
    }
    classical += accepted * static_cast<double>(e.weight);
  }
  out.classical_value = classical / static_cast<double>(pairs.denominator());
  out.distance_bound = 16.0 * g.edge_count() * std::sqrt(std::max(0.0, 1.0 - out.acceptance_3p));
  out.within_bound = std::abs(out.acceptance_3p - out.classical_value) <= out.distance_bound + kBoundTolerance;

  Vector state = s.state;
  for (int site = 0; site < 2; ++site) {
    QuantumRewindHandle handle(state, dims3, site);
    AnswerTable& table = site == 0 ? out.first : out.second;
    for (int i = 0; i < n; ++i) {
      table.push_back(answer_from_index(handle.measure(s.families[static_cast<std::size_t>(i)], rng)));
    }
  }
  out.coloring = extract_3col_from_tables(g, pairs, out.first, out.second);
  return out;
}

}  // namespace rzk
