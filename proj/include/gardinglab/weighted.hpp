#pragma once

#include <cstddef>

#include "gardinglab/cones.hpp"
#include "gardinglab/symfun.hpp"

namespace gardinglab {

/// Admissible weights: 0 <= w_i <= omega (highest weight), sum w_i = total.
/// Feasible iff total <= N * omega.
class WeightBudget {
 public:
  WeightBudget(double omega, double total, std::size_t dimension);

  [[nodiscard]] double omega() const noexcept { return omega_; }
  [[nodiscard]] double total() const noexcept { return total_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  /// total / omega, the number of "full" weights.
  [[nodiscard]] double ratio() const noexcept { return total_ / omega_; }

 private:
  double omega_;
  double total_;
  std::size_t dimension_;
};

// The extremal weighted sums are linear programs over a slice of a box; the
// optimum puts full weight on the largest (resp. smallest) entries and the
// remainder on the next one.

/// sup of sum w_i nu_i over admissible weights.
[[nodiscard]] double weighted_sup(const SortedVector& spectrum, const WeightBudget& budget);

/// inf of sum w_i nu_i over admissible weights.
[[nodiscard]] double weighted_inf(const SortedVector& spectrum, const WeightBudget& budget);

/// (S - m Omega) nu_{m+1} + Omega (nu_1 + ... + nu_m) for integer 1 <= m <= N.
/// m = N is accepted only when S = N Omega (the first term then vanishes).
/// Every admissible weighted sum, in particular weighted_inf, dominates it.
[[nodiscard]] double split_index_lower_bound(const SortedVector& spectrum,
                                             const WeightBudget& budget, std::size_t m);

/// S * normalized_partial_sum(spectrum, S / Omega). Requires 1 <= S/Omega <= N.
/// Equals weighted_inf exactly; weighted_sup dominates it.
[[nodiscard]] double fractional_partial_bound(const SortedVector& spectrum,
                                              const WeightBudget& budget);

/// Weight data for p-forms in dimension n:
///   S_p = 3/2 p (n - p),
///   Omega_p = (n^2 p - n p^2 - 2 n p + 2 n^2 + 2 n - 4 p) / (n (n + 2)),
///   C_p = S_p / Omega_p.
struct FormDegreeCoeffs {
  int n = 0;
  int p = 0;
  double c_p = 0.0;
  double omega_p = 0.0;
  double s_p = 0.0;
};

/// Throws DomainError unless n >= 3 and 1 <= p <= floor(n/2).
[[nodiscard]] FormDegreeCoeffs form_degree_coefficients(int n, int p);

/// Sharper 1-form coefficient 3(n-1)/2 * (n+2)/(2n-1); at least 3n/4.
[[nodiscard]] double improved_one_form_coefficient(int n);

/// Second-kind spectrum length (n - 1)(n + 2)/2.
[[nodiscard]] std::size_t second_kind_dimension(int n);

/// Whether nu_1 + ... + (C_p - floor C_p) nu_{floor C_p + 1} >= C_p kappa,
/// up to tol relative to the spectrum scale. Spectrum length must be N_2(n).
[[nodiscard]] bool form_degree_hypothesis_holds(const SortedVector& spectrum, int n, int p,
                                                double kappa, double tol = kDefaultTol);

/// Same with C_p replaced by 3n/4.
[[nodiscard]] bool three_quarter_hypothesis_holds(const SortedVector& spectrum, int n,
                                                  double kappa, double tol = kDefaultTol);

}  // namespace gardinglab
