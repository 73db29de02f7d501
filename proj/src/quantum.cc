// SPDX-License-Identifier: Apache-2.0
#include "rzk/quantum.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "rzk/errors.h"

namespace rzk {

namespace {

int product(const std::vector<int>& dims, std::size_t begin, std::size_t end) {
  int p = 1;
  for (std::size_t i = begin; i < end; ++i) p *= dims[i];
  return p;
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) g(r, c) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

template <class Result, class State, class Branch>
Result sample_branch(const State& state, const ProjectorFamily& family, Rng& rng,
                     Branch branch_probability) {
  if (!family.is_complete()) throw ConfigError("measurement family does not sum to identity");
  const double u = rng.uniform01();
  double acc = 0.0;
  int last_nonzero = -1;
  for (int s = 0; s < family.size(); ++s) {
    const double p = branch_probability(state, family[s]);
    if (p <= 0.0) continue;
    last_nonzero = s;
    acc += p;
    if (u < acc) return Result{s, p, {}};
  }
  // Rounding left u above the accumulated mass; fall back to the last branch.
  return Result{last_nonzero, branch_probability(state, family[last_nonzero]), {}};
}

}  // namespace

ProjectorFamily::ProjectorFamily(std::vector<Matrix> projectors, double tolerance)
    : projectors_(std::move(projectors)) {
  validate(tolerance);
}

ProjectorFamily ProjectorFamily::unchecked(std::vector<Matrix> projectors) {
  ProjectorFamily f;
  f.projectors_ = std::move(projectors);
  return f;
}

ProjectorFamily ProjectorFamily::computational_basis(int dim) {
  std::vector<Matrix> ps;
  for (int i = 0; i < dim; ++i) {
    Matrix p = Matrix::Zero(dim, dim);
    p(i, i) = 1.0;
    ps.push_back(std::move(p));
  }
  return ProjectorFamily(std::move(ps));
}

int ProjectorFamily::dim() const {
  return projectors_.empty() ? 0 : static_cast<int>(projectors_.front().rows());
}

void ProjectorFamily::validate(double tolerance) const {
  if (projectors_.empty()) throw ConfigError("projector family is empty");
  const int d = dim();
  for (std::size_t s = 0; s < projectors_.size(); ++s) {
    const Matrix& w = projectors_[s];
    const std::string tag = "projector " + std::to_string(s);
    if (w.rows() != d || w.cols() != d) throw ConfigError(tag + " has mismatched dimension");
    if (!is_hermitian(w, tolerance)) throw ConfigError(tag + " is not Hermitian");
    if ((w * w - w).norm() > tolerance) throw ConfigError(tag + " is not idempotent");
    for (std::size_t t = 0; t < s; ++t) {
      if ((w * projectors_[t]).norm() > tolerance) {
        throw ConfigError(tag + " is not orthogonal to projector " + std::to_string(t));
      }
    }
  }
}

bool ProjectorFamily::is_complete(double tolerance) const {
  if (projectors_.empty()) return false;
  return (total() - identity(dim())).norm() <= tolerance;
}

Matrix ProjectorFamily::total() const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (const auto& w : projectors_) sum += w;
  return sum;
}

Matrix ProjectorFamily::total(const std::vector<int>& outcomes) const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (int s : outcomes) sum += (*this)[s];
  return sum;
}

MeasurementResult measure_projective(const Matrix& rho, const ProjectorFamily& family, Rng& rng) {
  auto r = sample_branch<MeasurementResult>(
      rho, family, rng, [](const Matrix& m, const Matrix& w) { return (w * m).trace().real(); });
  const Matrix& w = family[r.outcome];
  r.post_state = w * rho * w / r.probability;
  return r;
}

VectorMeasurementResult measure_projective(const Vector& psi, const ProjectorFamily& family,
                                           Rng& rng) {
  auto r = sample_branch<VectorMeasurementResult>(
      psi, family, rng, [](const Vector& v, const Matrix& w) { return (w * v).squaredNorm(); });
  r.post_state = family[r.outcome] * psi / std::sqrt(r.probability);
  return r;
}

MeasurementResult measure_branch(const Matrix& rho, const ProjectorFamily& family, int outcome) {
  if (outcome < 0 || outcome >= family.size()) throw DomainError("no such measurement outcome");
  const Matrix& w = family[outcome];
  const double p = (w * rho).trace().real();
  if (p <= kStructuralTolerance) throw DomainError("requested branch has zero probability");
  return MeasurementResult{outcome, p, w * rho * w / p};
}

Matrix density(const Vector& psi) { return psi * psi.adjoint(); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix embed(const Matrix& op, const std::vector<int>& dims, int site) {
  const auto k = static_cast<std::size_t>(site);
  if (k >= dims.size() || op.rows() != dims[k] || op.cols() != dims[k]) {
    throw ConfigError("embed: operator does not match the site dimension");
  }
  return kron(kron(identity(product(dims, 0, k)), op), identity(product(dims, k + 1, dims.size())));
}

Vector apply_local(const Vector& psi, const Matrix& op, const std::vector<int>& dims, int site) {
  const auto k = static_cast<std::size_t>(site);
  if (k >= dims.size() || op.rows() != dims[k] || op.cols() != dims[k]) {
    throw ConfigError("apply_local: operator does not match the site dimension");
  }
  const int left = product(dims, 0, k);
  const int d = dims[k];
  const int right = product(dims, k + 1, dims.size());
  if (psi.size() != left * d * right) throw ConfigError("apply_local: state dimension mismatch");
  Vector out = Vector::Zero(psi.size());
  for (int l = 0; l < left; ++l) {
    for (int r = 0; r < right; ++r) {
      for (int i = 0; i < d; ++i) {
        Complex acc = 0.0;
        for (int j = 0; j < d; ++j) acc += op(i, j) * psi((l * d + j) * right + r);
        out((l * d + i) * right + r) = acc;
      }
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  const int total = product(dims, 0, dims.size());
  if (rho.rows() != total || rho.cols() != total) {
    throw ConfigError("partial_trace: dimension mismatch");
  }
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) kept.at(static_cast<std::size_t>(k)) = true;
  int kept_dim = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (kept[i]) kept_dim *= dims[i];
  }
  std::vector<int> kept_index(static_cast<std::size_t>(total));
  std::vector<int> traced_index(static_cast<std::size_t>(total));
  for (int idx = 0; idx < total; ++idx) {
    int rem = idx;
    int kept_acc = 0, kept_stride = 1, traced_acc = 0, traced_stride = 1;
    for (std::size_t i = dims.size(); i-- > 0;) {
      const int digit = rem % dims[i];
      rem /= dims[i];
      if (kept[i]) {
        kept_acc += digit * kept_stride;
        kept_stride *= dims[i];
      } else {
        traced_acc += digit * traced_stride;
        traced_stride *= dims[i];
      }
    }
    kept_index[static_cast<std::size_t>(idx)] = kept_acc;
    traced_index[static_cast<std::size_t>(idx)] = traced_acc;
  }
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (int r = 0; r < total; ++r) {
    for (int c = 0; c < total; ++c) {
      if (traced_index[static_cast<std::size_t>(r)] == traced_index[static_cast<std::size_t>(c)]) {
        out(kept_index[static_cast<std::size_t>(r)], kept_index[static_cast<std::size_t>(c)]) +=
            rho(r, c);
      }
    }
  }
  return out;
}

double trace_norm(const Matrix& hermitian) {
  const Matrix h = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double trace_norm_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ConfigError("trace_norm_distance: dimension mismatch");
  }
  return trace_norm(rho - sigma);
}

Matrix psd_sqrt(const Matrix& x) {
  const Matrix h = (x + x.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

bool is_hermitian(const Matrix& m, double tolerance) {
  return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tolerance;
}

bool is_unitary(const Matrix& m, double tolerance) {
  return m.rows() == m.cols() &&
         (m.adjoint() * m - identity(static_cast<int>(m.rows()))).norm() <= tolerance;
}

bool is_density(const Matrix& rho, double tolerance) {
  if (!is_hermitian(rho, tolerance)) return false;
  if (std::abs(rho.trace() - Complex(1.0)) > tolerance) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tolerance;
}

bool is_effect(const Matrix& x, double tolerance) {
  if (!is_hermitian(x, tolerance)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tolerance &&
         solver.eigenvalues().maxCoeff() <= 1.0 + tolerance;
}

Matrix haar_unitary(int dim, Rng& rng) {
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * identity(dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

Vector random_state(int dim, Rng& rng) {
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_density(int dim, Rng& rng) {
  const int rank = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(dim)));
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ProjectorFamily random_family(int dim, int outcomes, bool complete, Rng& rng) {
  if (outcomes < 1 || outcomes > dim) throw ConfigError("random_family: need 1 <= outcomes <= dim");
  const int rank = complete ? dim
                            : outcomes + static_cast<int>(rng.uniform_below(
                                             static_cast<std::uint64_t>(dim - outcomes + 1)));
  std::vector<int> coords(static_cast<std::size_t>(dim));
  std::iota(coords.begin(), coords.end(), 0);
  rng.shuffle(coords);
  std::vector<int> owner(static_cast<std::size_t>(dim), -1);
  for (int i = 0; i < rank; ++i) {
    owner[static_cast<std::size_t>(coords[static_cast<std::size_t>(i)])] =
        i < outcomes ? i : static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(outcomes)));
  }
  const Matrix u = haar_unitary(dim, rng);
  std::vector<Matrix> ps(static_cast<std::size_t>(outcomes), Matrix::Zero(dim, dim));
  for (int c = 0; c < dim; ++c) {
    const int s = owner[static_cast<std::size_t>(c)];
    if (s >= 0) ps[static_cast<std::size_t>(s)] += u.col(c) * u.col(c).adjoint();
  }
  return ProjectorFamily(std::move(ps));
}

Matrix random_effect(int dim, Rng& rng) {
  const Matrix u = haar_unitary(dim, rng);
  Eigen::VectorXd eig(dim);
  for (int i = 0; i < dim; ++i) eig(i) = rng.uniform01();
  return u * eig.cast<Complex>().asDiagonal() * u.adjoint();
}

Vector random_symmetric_state(int local_dim, Rng& rng) {
  const int d = local_dim;
  static constexpr std::array<std::array<int, 3>, 6> kPerms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (;;) {
    const Vector psi = random_state(d * d * d, rng);
    Vector sym = Vector::Zero(psi.size());
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          const std::array<int, 3> idx = {i, j, k};
          for (const auto& p : kPerms) {
            sym((i * d + j) * d + k) += psi((idx[p[0]] * d + idx[p[1]]) * d + idx[p[2]]);
          }
        }
      }
    }
    const double n = sym.norm();
    if (n > 1e-6) return sym / n;
  }
}

}  // namespace rzk
