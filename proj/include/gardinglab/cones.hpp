#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gardinglab/symfun.hpp"

namespace gardinglab {

inline constexpr double kDefaultTol = 1e-9;

/// Result of a cone membership test. `margin` is the smallest normalized
/// constraint value; `binding_constraint` names the constraint attaining it.
/// member_open <=> margin > tol, member_closed <=> margin >= -tol.
struct ConeMembership {
  bool member_open = false;
  bool member_closed = false;
  double margin = 0.0;
  std::string binding_constraint;
};

[[nodiscard]] ConeMembership membership_from_margin(double margin, std::string binding,
                                                    double tol);

/// Shift coefficient alpha with 0 <= alpha < 1/N.
class ShiftParams {
 public:
  ShiftParams(double alpha, std::size_t dimension);

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }

 private:
  double alpha_;
  std::size_t dimension_;
};

/// v - alpha * (sum v) * (1, ..., 1).
[[nodiscard]] RealVector shift(const RealVector& v, const ShiftParams& p);

/// sigma_j(v) / (binomial(N, j) |v|^j) for j = 1..k. Empty for the zero vector.
[[nodiscard]] std::vector<double> normalized_sigma_values(const RealVector& v, std::size_t k);

/// Membership in the Garding cone {sigma_1 > 0, ..., sigma_k > 0}. Each sigma_j
/// is normalized by binomial(N, j) |v|^j so margins are scale free and lie in
/// [-1, 1]. The zero vector is a closed, non-open member with margin 0.
[[nodiscard]] ConeMembership in_garding_cone(const RealVector& v, std::size_t k,
                                             double tol = kDefaultTol);

/// Membership of shift(v, p) in the Garding cone of order k.
[[nodiscard]] ConeMembership in_shifted_cone(const RealVector& v, std::size_t k,
                                             const ShiftParams& p, double tol = kDefaultTol);

/// Membership in the m-positivity cone: the smallest floor(m) entries plus the
/// fractional weight of the next one sum positively. Margin is that partial
/// sum divided by m |v|. Accepts 0 < m <= N.
[[nodiscard]] ConeMembership in_positivity_cone(const RealVector& v, double m,
                                                double tol = kDefaultTol);

struct NestingViolation {
  std::size_t sample = 0;
  std::string relation;
  std::vector<double> vector;
};

struct NestingReport {
  std::size_t dimension = 0;
  std::size_t samples = 0;
  std::size_t checks = 0;
  std::vector<NestingViolation> violations;

  [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Randomized audit of the cone chains: Garding cones nested in k (plain and
/// shifted), positivity cones nested in m, Gamma_N = P_1 and P_N = Gamma_1.
/// An inclusion A in B is violated when v is an open member of A but not a
/// closed member of B. Each sample uses its own sub-seed.
[[nodiscard]] NestingReport nesting_check(std::size_t dimension, std::size_t samples,
                                          std::uint64_t seed, double tol = kDefaultTol,
                                          unsigned threads = 1);

}  // namespace gardinglab
