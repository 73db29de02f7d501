// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "rzk/random.h"

namespace rzk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kStructuralTolerance = 1e-10;
inline constexpr double kBoundTolerance = 1e-9;
inline constexpr int kMaxDimension = 512;

/// Orthogonal projectors {W^s}. Their sum need not be the identity; use
/// is_complete() when a full measurement is required.
class ProjectorFamily {
 public:
  ProjectorFamily() = default;
  /// Throws ConfigError unless every member is a Hermitian idempotent of
  /// the same dimension and members are pairwise orthogonal.
  explicit ProjectorFamily(std::vector<Matrix> projectors,
                           double tolerance = kStructuralTolerance);
  /// Skips validation; used to build deliberately broken families.
  static ProjectorFamily unchecked(std::vector<Matrix> projectors);
  static ProjectorFamily computational_basis(int dim);

  /// Throws ConfigError describing the first violated invariant.
  void validate(double tolerance = kStructuralTolerance) const;
  bool is_complete(double tolerance = kStructuralTolerance) const;

  int size() const { return static_cast<int>(projectors_.size()); }
  int dim() const;
  const Matrix& operator[](int s) const { return projectors_[static_cast<std::size_t>(s)]; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  /// Sum of all members.
  Matrix total() const;
  /// Sum of the members whose indices are listed.
  Matrix total(const std::vector<int>& outcomes) const;

 private:
  std::vector<Matrix> projectors_;
};

struct MeasurementResult {
  int outcome = -1;
  double probability = 0.0;
  Matrix post_state;
};

struct VectorMeasurementResult {
  int outcome = -1;
  double probability = 0.0;
  Vector post_state;
};

/// Born-rule sampling; throws ConfigError if the family is not complete.
MeasurementResult measure_projective(const Matrix& rho, const ProjectorFamily& family, Rng& rng);
VectorMeasurementResult measure_projective(const Vector& psi, const ProjectorFamily& family,
                                           Rng& rng);
/// The named branch; throws DomainError if it has zero probability.
MeasurementResult measure_branch(const Matrix& rho, const ProjectorFamily& family, int outcome);

Matrix density(const Vector& psi);
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Matrix identity(int dim);

/// op acting on tensor factor `site` of a product space with the given dims.
Matrix embed(const Matrix& op, const std::vector<int>& dims, int site);
/// Same as embed(op, dims, site) * psi without forming the big matrix.
Vector apply_local(const Vector& psi, const Matrix& op, const std::vector<int>& dims, int site);
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep);

/// Schatten-1 norm of a Hermitian matrix.
double trace_norm(const Matrix& hermitian);
/// ||rho - sigma||_1 with no factor 1/2.
double trace_norm_distance(const Matrix& rho, const Matrix& sigma);
/// Principal square root of a positive semidefinite matrix.
Matrix psd_sqrt(const Matrix& x);

bool is_hermitian(const Matrix& m, double tolerance = kStructuralTolerance);
bool is_unitary(const Matrix& m, double tolerance = kStructuralTolerance);
bool is_density(const Matrix& rho, double tolerance = kStructuralTolerance);
/// 0 <= x <= Id.
bool is_effect(const Matrix& x, double tolerance = kStructuralTolerance);

Matrix haar_unitary(int dim, Rng& rng);
Vector random_state(int dim, Rng& rng);
/// Mixed state of random rank in [1, dim].
Matrix random_density(int dim, Rng& rng);
/// Haar-rotated coordinate projectors with `outcomes` nonempty members.
/// Requires outcomes <= dim. If complete, every coordinate is used;
/// otherwise the total rank is drawn from [outcomes, dim].
ProjectorFamily random_family(int dim, int outcomes, bool complete, Rng& rng);
/// Random effect 0 <= X <= Id with Haar eigenbasis.
Matrix random_effect(int dim, Rng& rng);
/// Random pure state on (C^d)^{⊗3}, symmetric under permuting the factors.
Vector random_symmetric_state(int local_dim, Rng& rng);

}  // namespace rzk
