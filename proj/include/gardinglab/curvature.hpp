#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gardinglab/symfun.hpp"

namespace gardinglab {

/// One component R_{ijkl} with 0-based orthonormal-frame indices.
struct TensorComponent {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  std::size_t l = 0;
  double value = 0.0;
};

/// Algebraic curvature tensor in an orthonormal frame, stored densely.
/// Invariants (checked on construction, 1e-12 relative to the largest entry):
///   R_ijkl = -R_jikl = -R_ijlk,  R_ijkl = R_klij,  R_ijkl + R_iklj + R_iljk = 0.
/// After validation the pair symmetries hold exactly.
class CurvatureTensor {
 public:
  static CurvatureTensor from_dense(std::size_t n, std::vector<double> data);

  /// Fills the symmetry orbit of every listed component; unlisted orbits are
  /// zero. Conflicting duplicates throw ValidationError.
  static CurvatureTensor from_components(std::size_t n, std::span<const TensorComponent> comps);

  [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j, std::size_t k,
                                  std::size_t l) const noexcept {
    return data_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

 private:
  CurvatureTensor(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {}

  std::size_t n_;
  std::vector<double> data_;
};

/// Constant curvature c: R_ijkl = c (d_ik d_jl - d_il d_jk). Requires n >= 2.
[[nodiscard]] CurvatureTensor model_space_form(std::size_t n, double curvature);

/// Product of unit spheres S^p x S^q (block space forms, no mixed terms).
[[nodiscard]] CurvatureTensor model_product_spheres(std::size_t p, std::size_t q);

/// R expressed in another orthonormal frame: R'_abcd = Q_ai Q_bj Q_ck Q_dl R_ijkl.
/// `q` is row-major n x n and must be orthogonal.
[[nodiscard]] CurvatureTensor change_frame(const CurvatureTensor& r, std::span<const double> q);

/// sum_{i,j} R_ijij.
[[nodiscard]] double scalar_curvature(const CurvatureTensor& r) noexcept;

enum class OperatorKind { first_kind, second_kind, kaehler, generic };

[[nodiscard]] std::string_view to_string(OperatorKind kind) noexcept;

/// n(n-1)/2, (n-1)(n+2)/2, n^2 (complex dimension n) respectively.
[[nodiscard]] std::size_t operator_size(OperatorKind kind, std::size_t n);

/// Dense symmetric matrix. Construction rejects asymmetry above 1e-12 relative
/// to the largest entry and then symmetrizes exactly.
class OperatorMatrix {
 public:
  OperatorMatrix(std::size_t size, std::vector<double> entries,
                 OperatorKind kind = OperatorKind::generic, std::size_t dimension = 0);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] OperatorKind kind() const noexcept { return kind_; }
  /// Underlying manifold dimension (0 for generic matrices).
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] double operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * size_ + c];
  }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] double trace() const noexcept;
  [[nodiscard]] double frobenius_norm() const noexcept;

 private:
  std::size_t size_;
  std::vector<double> entries_;
  OperatorKind kind_;
  std::size_t dimension_;
};

/// Matrix of R on 2-forms over the basis {e_i ^ e_j : i < j} (lexicographic),
/// declared orthonormal: entry ((ij),(kl)) = R_ijkl.
[[nodiscard]] OperatorMatrix assemble_first_kind(const CurvatureTensor& r);

/// Matrix of h -> pr_0 (sum_kl R_iklj h_kl) on trace-free symmetric 2-tensors.
/// Orthonormal basis: the n-1 orthogonalized diagonal differences
/// diag(1,..,1,-k,0,..)/sqrt(k(k+1)), then (e_i e_j + e_j e_i)/sqrt 2, i < j.
[[nodiscard]] OperatorMatrix assemble_second_kind(const CurvatureTensor& r);

/// Same operator on all of S^2 (no projection): the second-kind basis followed
/// by the trace direction I/sqrt(n) as the last basis vector.
[[nodiscard]] OperatorMatrix assemble_full_symmetric(const CurvatureTensor& r);

struct EigenDecomposition {
  std::vector<double> values;   ///< non-decreasing
  std::vector<double> vectors;  ///< row-major N x N; column c belongs to values[c]
  std::size_t sweeps = 0;
};

inline constexpr std::size_t kMaxJacobiSweeps = 100;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm is below
/// 1e-14 |A|_F. Throws NumericError after kMaxJacobiSweeps sweeps.
[[nodiscard]] EigenDecomposition jacobi_eigen(const OperatorMatrix& a);

/// Ordered eigenvalues tagged with the operator kind and dimension.
struct Spectrum {
  SortedVector eigenvalues;
  OperatorKind kind;
  std::size_t dimension;
};

[[nodiscard]] Spectrum eigen_spectrum(const OperatorMatrix& a);

/// Builds a Spectrum from externally supplied eigenvalues; the length must
/// match operator_size(kind, dimension).
[[nodiscard]] Spectrum make_spectrum(const RealVector& eigenvalues, OperatorKind kind,
                                     std::size_t dimension);

struct ScalarCurvatureReport {
  std::size_t dimension = 0;
  double scalar = 0.0;              ///< sum R_ijij
  double first_kind_sum = 0.0;      ///< sum of first-kind eigenvalues
  double second_kind_sum = 0.0;     ///< sum of second-kind eigenvalues
  double first_kind_trace = 0.0;    ///< matrix trace before eigensolving
  double second_kind_trace = 0.0;
  bool first_kind_identity = false;   ///< scalar == 2 * first_kind_sum
  bool second_kind_identity = false;  ///< scalar == 2n/(n+2) * second_kind_sum
  bool trace_identities = false;      ///< same two relations on matrix traces

  [[nodiscard]] bool ok() const noexcept {
    return first_kind_identity && second_kind_identity && trace_identities;
  }
};

inline constexpr double kScalarIdentityTolerance = 1e-8;

[[nodiscard]] ScalarCurvatureReport scalar_curvature_checks(const CurvatureTensor& r);

}  // namespace gardinglab
