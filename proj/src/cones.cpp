#include "gardinglab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "gardinglab/errors.hpp"
#include "gardinglab/parallel.hpp"

namespace gardinglab {

ConeMembership membership_from_margin(double margin, std::string binding, double tol) {
  return ConeMembership{margin > tol, margin >= -tol, margin, std::move(binding)};
}

ShiftParams::ShiftParams(double alpha, std::size_t dimension)
    : alpha_(alpha), dimension_(dimension) {
  if (dimension == 0) throw DomainError("shift dimension must be positive");
  if (!(alpha >= 0.0) || !(alpha < 1.0 / static_cast<double>(dimension))) {
    throw DomainError("shift alpha=" + std::to_string(alpha) + " outside [0, 1/N) for N=" +
                      std::to_string(dimension));
  }
}

RealVector shift(const RealVector& v, const ShiftParams& p) {
  if (v.size() != p.dimension()) {
    throw DomainError("shift: vector length " + std::to_string(v.size()) +
                      " does not match N=" + std::to_string(p.dimension()));
  }
  double total = 0.0;
  for (double x : v) total += x;
  const double offset = p.alpha() * total;
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(x - offset);
  return RealVector(std::move(out));
}

std::vector<double> normalized_sigma_values(const RealVector& v, std::size_t k) {
  const double norm = euclidean_norm(v.entries());
  if (norm == 0.0) return {};
  std::vector<double> unit;
  unit.reserve(v.size());
  for (double x : v) unit.push_back(x / norm);
  const std::vector<double> sigma = elementary_symmetric_upto(unit, k);
  std::vector<double> out(k);
  for (std::size_t j = 1; j <= k; ++j) out[j - 1] = sigma[j] / binomial(v.size(), j);
  return out;
}

ConeMembership in_garding_cone(const RealVector& v, std::size_t k, double tol) {
  if (k < 1 || k > v.size()) {
    throw DomainError("Garding cone order k=" + std::to_string(k) + " outside [1, " +
                      std::to_string(v.size()) + "]");
  }
  const std::vector<double> values = normalized_sigma_values(v, k);
  if (values.empty()) return membership_from_margin(0.0, "zero_vector", tol);
  const auto it = std::min_element(values.begin(), values.end());
  const auto j = static_cast<std::size_t>(it - values.begin()) + 1;
  return membership_from_margin(*it, "sigma_" + std::to_string(j), tol);
}

ConeMembership in_shifted_cone(const RealVector& v, std::size_t k, const ShiftParams& p,
                               double tol) {
  return in_garding_cone(shift(v, p), k, tol);
}

ConeMembership in_positivity_cone(const RealVector& v, double m, double tol) {
  const SortedVector sorted(v);
  const double partial = partial_sum_fractional(sorted, m);
  const double norm = euclidean_norm(v.entries());
  if (norm == 0.0) return membership_from_margin(0.0, "zero_vector", tol);
  return membership_from_margin(partial / (m * norm), "partial_sum", tol);
}

namespace {

struct SampleOutcome {
  std::size_t checks = 0;
  std::vector<NestingViolation> violations;
};

SampleOutcome audit_sample(std::size_t dimension, std::size_t index, std::uint64_t seed,
                           double tol) {
  std::mt19937_64 rng(sub_seed(seed, index));
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Offsetting along (1,...,1) spreads samples across all the cones.
  const double offset = -0.5 + 3.0 * unit(rng);
  std::vector<double> raw(dimension);
  for (double& x : raw) x = gauss(rng) + offset;
  const RealVector v(raw);

  const double alpha = unit(rng) / static_cast<double>(dimension);
  double m1 = 1.0 + unit(rng) * static_cast<double>(dimension - 1);
  double m2 = 1.0 + unit(rng) * static_cast<double>(dimension - 1);
  if (m1 > m2) std::swap(m1, m2);

  SampleOutcome out;
  auto require_inclusion = [&](const ConeMembership& inner, const ConeMembership& outer,
                               const std::string& relation) {
    ++out.checks;
    if (inner.member_open && !outer.member_closed) {
      out.violations.push_back(NestingViolation{index, relation, raw});
    }
  };

  const auto n = dimension;
  const std::vector<double> plain = normalized_sigma_values(v, n);
  const std::vector<double> shifted = normalized_sigma_values(shift(v, ShiftParams(alpha, n)), n);
  auto prefix_membership = [&](const std::vector<double>& values, std::size_t k) {
    if (values.empty()) return membership_from_margin(0.0, "zero_vector", tol);
    const double margin = *std::min_element(values.begin(), values.begin() + static_cast<long>(k));
    return membership_from_margin(margin, "sigma", tol);
  };

  for (std::size_t k = 1; k < n; ++k) {
    require_inclusion(prefix_membership(plain, k + 1), prefix_membership(plain, k),
                      "Gamma_" + std::to_string(k + 1) + " in Gamma_" + std::to_string(k));
    require_inclusion(prefix_membership(shifted, k + 1), prefix_membership(shifted, k),
                      "Gamma_" + std::to_string(k + 1) + "(alpha) in Gamma_" +
                          std::to_string(k) + "(alpha)");
    require_inclusion(in_positivity_cone(v, static_cast<double>(k), tol),
                      in_positivity_cone(v, static_cast<double>(k + 1), tol),
                      "P_" + std::to_string(k) + " in P_" + std::to_string(k + 1));
  }
  require_inclusion(in_positivity_cone(v, m1, tol), in_positivity_cone(v, m2, tol),
                    "P_m1 in P_m2");

  const ConeMembership gamma_n = prefix_membership(plain, n);
  const ConeMembership gamma_1 = prefix_membership(plain, 1);
  const ConeMembership p_1 = in_positivity_cone(v, 1.0, tol);
  const ConeMembership p_n = in_positivity_cone(v, static_cast<double>(n), tol);
  require_inclusion(gamma_n, p_1, "Gamma_N in P_1");
  require_inclusion(p_1, gamma_n, "P_1 in Gamma_N");
  require_inclusion(p_n, gamma_1, "P_N in Gamma_1");
  require_inclusion(gamma_1, p_n, "Gamma_1 in P_N");
  return out;
}

}  // namespace

NestingReport nesting_check(std::size_t dimension, std::size_t samples, std::uint64_t seed,
                            double tol, unsigned threads) {
  if (dimension < 2) throw DomainError("nesting_check requires N >= 2");
  std::vector<SampleOutcome> outcomes(samples);
  run_tasks(samples, threads,
            [&](std::size_t i) { outcomes[i] = audit_sample(dimension, i, seed, tol); });

  NestingReport report;
  report.dimension = dimension;
  report.samples = samples;
  for (auto& outcome : outcomes) {
    report.checks += outcome.checks;
    for (auto& violation : outcome.violations) report.violations.push_back(std::move(violation));
  }
  return report;
}

}  // namespace gardinglab
