#include "gardinglab/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gardinglab/errors.hpp"

namespace gardinglab {

namespace {

constexpr double kBudgetSlack = 1e-12;

void require_matching(const SortedVector& spectrum, const WeightBudget& budget) {
  if (spectrum.size() != budget.dimension()) {
    throw DomainError("spectrum length " + std::to_string(spectrum.size()) +
                      " does not match budget dimension " + std::to_string(budget.dimension()));
  }
}

/// Number of full weights, clamped to N against rounding in S / Omega.
std::size_t full_weights(const WeightBudget& budget) {
  return std::min(static_cast<std::size_t>(std::floor(budget.ratio())), budget.dimension());
}

}  // namespace

WeightBudget::WeightBudget(double omega, double total, std::size_t dimension)
    : omega_(omega), total_(total), dimension_(dimension) {
  if (dimension == 0) throw DomainError("weight budget needs N >= 1");
  if (!(omega > 0.0) || !(total > 0.0) || !std::isfinite(omega) || !std::isfinite(total)) {
    throw DomainError("weight budget requires Omega > 0 and S > 0");
  }
  if (total > static_cast<double>(dimension) * omega * (1.0 + kBudgetSlack)) {
    throw DomainError("infeasible weight budget: S=" + std::to_string(total) + " > N*Omega=" +
                      std::to_string(static_cast<double>(dimension) * omega));
  }
}

double weighted_sup(const SortedVector& spectrum, const WeightBudget& budget) {
  require_matching(spectrum, budget);
  const std::size_t n = spectrum.size();
  const std::size_t full = full_weights(budget);
  double value = 0.0;
  for (std::size_t r = 0; r < full; ++r) value += budget.omega() * spectrum[n - 1 - r];
  const double remainder = budget.total() - static_cast<double>(full) * budget.omega();
  if (full < n) value += remainder * spectrum[n - 1 - full];
  return value;
}

double weighted_inf(const SortedVector& spectrum, const WeightBudget& budget) {
  require_matching(spectrum, budget);
  const std::size_t full = full_weights(budget);
  double value = 0.0;
  for (std::size_t r = 0; r < full; ++r) value += budget.omega() * spectrum[r];
  const double remainder = budget.total() - static_cast<double>(full) * budget.omega();
  if (full < spectrum.size()) value += remainder * spectrum[full];
  return value;
}

double split_index_lower_bound(const SortedVector& spectrum, const WeightBudget& budget,
                               std::size_t m) {
  require_matching(spectrum, budget);
  const std::size_t n = spectrum.size();
  if (m < 1 || m > n) {
    throw DomainError("split index m=" + std::to_string(m) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  const double excess = budget.total() - static_cast<double>(m) * budget.omega();
  double head = 0.0;
  for (std::size_t i = 0; i < m; ++i) head += spectrum[i];
  if (m == n) {
    if (std::abs(excess) > kBudgetSlack * budget.total()) {
      throw DomainError("split index m=N requires S = N*Omega");
    }
    return budget.omega() * head;
  }
  return excess * spectrum[m] + budget.omega() * head;
}

double fractional_partial_bound(const SortedVector& spectrum, const WeightBudget& budget) {
  require_matching(spectrum, budget);
  double ratio = budget.ratio();
  const auto n = static_cast<double>(spectrum.size());
  if (ratio < 1.0 || ratio > n * (1.0 + kBudgetSlack)) {
    throw DomainError("S/Omega=" + std::to_string(ratio) + " outside [1, N]");
  }
  ratio = std::min(ratio, n);
  return budget.total() * normalized_partial_sum(spectrum, ratio);
}

FormDegreeCoeffs form_degree_coefficients(int n, int p) {
  if (n < 3) throw DomainError("form degree coefficients require n >= 3");
  if (p < 1 || p > n / 2) {
    throw DomainError("form degree p=" + std::to_string(p) + " outside [1, floor(n/2)]");
  }
  const double nd = n;
  const double pd = p;
  FormDegreeCoeffs c;
  c.n = n;
  c.p = p;
  c.s_p = 1.5 * pd * (nd - pd);
  c.omega_p = (nd * nd * pd - nd * pd * pd - 2.0 * nd * pd + 2.0 * nd * nd + 2.0 * nd - 4.0 * pd) /
              (nd * (nd + 2.0));
  c.c_p = c.s_p / c.omega_p;
  return c;
}

double improved_one_form_coefficient(int n) {
  if (n < 3) throw DomainError("improved coefficient requires n >= 3");
  const double nd = n;
  return 1.5 * (nd - 1.0) * (nd + 2.0) / (2.0 * nd - 1.0);
}

std::size_t second_kind_dimension(int n) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  return static_cast<std::size_t>((n - 1) * (n + 2) / 2);
}

namespace {

bool partial_hypothesis(const SortedVector& spectrum, int n, double index, double kappa,
                        double tol) {
  if (spectrum.size() != second_kind_dimension(n)) {
    throw DomainError("spectrum length " + std::to_string(spectrum.size()) +
                      " does not match (n-1)(n+2)/2 for n=" + std::to_string(n));
  }
  const double lhs = partial_sum_fractional(spectrum, index);
  const double rhs = index * kappa;
  double scale = std::abs(kappa);
  for (double x : spectrum.entries()) scale = std::max(scale, std::abs(x));
  return lhs >= rhs - tol * index * scale;
}

}  // namespace

bool form_degree_hypothesis_holds(const SortedVector& spectrum, int n, int p, double kappa,
                                  double tol) {
  return partial_hypothesis(spectrum, n, form_degree_coefficients(n, p).c_p, kappa, tol);
}

bool three_quarter_hypothesis_holds(const SortedVector& spectrum, int n, double kappa,
                                    double tol) {
  if (n < 3) throw DomainError("three-quarter hypothesis requires n >= 3");
  return partial_hypothesis(spectrum, n, 0.75 * n, kappa, tol);
}

}  // namespace gardinglab
