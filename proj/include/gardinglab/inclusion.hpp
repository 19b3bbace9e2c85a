#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gardinglab/cones.hpp"
#include "gardinglab/symfun.hpp"

namespace gardinglab {

/// Shift and positivity index tied to one epsilon in (0, 1):
///   alpha = (1 - epsilon) / N,  m = N (N - 1) epsilon^2 / (1 + (N - 1) epsilon^2).
/// m lies in (0, N - 1) and increases strictly with epsilon.
struct EpsilonParams {
  double epsilon = 0.0;
  std::size_t dimension = 0;
  double alpha = 0.0;
  double m = 0.0;

  [[nodiscard]] ShiftParams shift() const { return ShiftParams(alpha, dimension); }
};

/// Closed form for m without domain checks; valid for epsilon in (0, 1].
[[nodiscard]] double m_epsilon_formula(double epsilon, std::size_t dimension) noexcept;

/// Throws DomainError unless 0 < epsilon < 1 and N >= 2.
[[nodiscard]] EpsilonParams epsilon_to_params(double epsilon, std::size_t dimension);

/// Inverse of the m map: epsilon = sqrt(m / ((N - 1)(N - m))) for 0 < m < N - 1.
[[nodiscard]] double epsilon_for_target_m(double m_target, std::size_t dimension);

/// 2 sigma_2(v_alpha) - [ (1 + (N-1) eps^2)/N * (sum v)^2 - sum v^2 ].
/// The bracket is an exact rewrite of the left side, so this is rounding
/// noise only; sigma_2 is evaluated with the product recurrence.
[[nodiscard]] double sigma2_identity_residual(const RealVector& v, const EpsilonParams& p);

enum class DichotomyCase {
  strict_positive,  ///< m-partial sum is positive
  boundary_rigid,   ///< partial sum vanishes; sorted vector is (0,...,0,c,...,c)
  not_member,       ///< outside the closed shifted cone of order 2
  zero_vector,      ///< v = 0, the only member with vanishing coordinate sum
  inconsistent,     ///< member whose partial sum vanishes without the rigid shape
};

[[nodiscard]] std::string_view to_string(DichotomyCase c) noexcept;

struct DichotomyVerdict {
  DichotomyCase kind = DichotomyCase::not_member;
  double c0 = 0.0;         ///< m-partial sum of the sorted vector
  double c0_margin = 0.0;  ///< c0 / (m |v|)
  std::optional<std::size_t> rigid_m;
  double rigid_deviation = 0.0;  ///< max normalized distance from the rigid shape
  ConeMembership membership;     ///< closed shifted cone of order 2
};

/// Classifies v against the closed shifted cone and, for members, decides
/// whether the m-partial sum is strictly positive or the vector is the rigid
/// equality shape. Comparisons are made on margins normalized by |v| so the
/// case is scale invariant.
[[nodiscard]] DichotomyVerdict check_dichotomy(const RealVector& v, const EpsilonParams& p,
                                               double tol = kDefaultTol);

/// (0, ..., 0, 1, ..., 1) with m zeros: the equality vector for integer m.
[[nodiscard]] RealVector sharp_witness(std::size_t dimension, std::size_t m);

enum class Sampler { rejection, hit_and_run };

[[nodiscard]] std::string_view to_string(Sampler s) noexcept;

struct SamplingOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::rejection;
  double tol = kDefaultTol;
  unsigned threads = 1;
};

struct InclusionViolation {
  std::size_t draw = 0;
  double margin = 0.0;
  std::vector<double> vector;
};

struct SamplingReport {
  std::size_t dimension = 0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double m = 0.0;
  Sampler sampler = Sampler::rejection;
  std::uint64_t seed = 0;
  std::size_t draws = 0;
  std::size_t accepted = 0;
  std::optional<double> min_margin;  ///< smallest c0 / (m |v|) over accepted draws
  std::vector<InclusionViolation> violations;

  [[nodiscard]] double acceptance_rate() const noexcept {
    return draws == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(draws);
  }
  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// Draws `samples` vectors, keeps open members of the shifted cone of order 2
/// and checks each lies in the open m-positivity cone.
///
/// rejection: i.i.d. standard Gaussian coordinates, rejected by membership.
/// hit_and_run: Markov chains on the slice {sum v = 1} of the cone (a ball
/// around (1/N, ..., 1/N)), each point rescaled by a random positive factor.
/// Chain points within tol of the boundary are skipped, so every draw is an
/// open member and thin cones at large N are reached.
///
/// Work is split into fixed blocks with their own sub-seeds; the report does
/// not depend on the thread count.
[[nodiscard]] SamplingReport verify_inclusion_sampling(std::size_t dimension, double epsilon,
                                                       const SamplingOptions& options);

struct BoundarySearchOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  double step = 1e-2;
  std::size_t max_iterations = 10000;
  double tol = kDefaultTol;
  unsigned threads = 1;
};

struct BoundarySearchReport {
  std::size_t dimension = 0;
  double epsilon = 0.0;
  double m = 0.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  double min_c0 = 0.0;
  std::vector<double> minimizer;  ///< sorted, coordinate sum 1
  bool converged = false;         ///< every restart met the step criterion
  std::size_t iterations = 0;     ///< largest iteration count over restarts
  std::optional<std::size_t> rigid_m;  ///< set when m is an integer
  double rigid_deviation = 0.0;        ///< entrywise distance to (0,..,0,c,..,c)
  double tol = kDefaultTol;

  /// Minimum not below -10 tol, all restarts converged, and for integer m the
  /// minimizer matches the rigid shape within 1e-6.
  [[nodiscard]] bool passed() const noexcept;
};

inline constexpr double kRigidMatchTolerance = 1e-6;

/// Minimizes the m-partial sum over {sum v = 1} intersected with the closed
/// shifted cone of order 2 by projected supergradient descent with random
/// restarts. On that slice sigma_1(v_alpha) = epsilon > 0 and the sigma_2
/// constraint is the ball |v|^2 <= 1 / (N - m), so the projection is exact.
[[nodiscard]] BoundarySearchReport boundary_search(std::size_t dimension, double epsilon,
                                                   const BoundarySearchOptions& options);

}  // namespace gardinglab
