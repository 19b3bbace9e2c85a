#include "gardinglab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gardinglab/errors.hpp"
#include "gardinglab/inclusion.hpp"
#include "gardinglab/weighted.hpp"

namespace gardinglab {

namespace threshold_forms {

double first_kind_by_size(std::size_t n1) {
  const auto n = static_cast<double>(n1);
  return std::sqrt(2.0 / ((n - 1.0) * (n - 2.0)));
}

double first_kind_by_dimension(int n) {
  const double d = n;
  return std::sqrt(8.0 / ((d * d - d - 2.0) * (d * d - d - 4.0)));
}

double second_kind_by_size(std::size_t n2) {
  const auto n = static_cast<double>(n2);
  return std::sqrt(3.0 / ((n - 1.0) * (n - 3.0)));
}

double second_kind_by_dimension(int n) {
  const double d = n;
  return std::sqrt(12.0 / ((d * d + d - 4.0) * (d * d + d - 8.0)));
}

double kaehler_cohomology_by_size(std::size_t n3, int n) {
  const auto size = static_cast<double>(n3);
  const double m = kaehler_cohomology_target(n);
  return std::sqrt(m / ((size - 1.0) * (size - m)));
}

double kaehler_cohomology_by_dimension(int n) {
  const double d = n;
  return std::sqrt((3.0 * d - 2.0) / ((d * d * d - 3.0 * d + 2.0) * (d * d - 1.0)));
}

double kaehler_biholomorphic_by_size(std::size_t n3) {
  const auto n = static_cast<double>(n3);
  return std::sqrt(2.0 / ((n - 1.0) * (n - 2.0)));
}

double kaehler_biholomorphic_by_dimension(int n) {
  const double d = n;
  return std::sqrt(2.0 / ((d * d - 1.0) * (d * d - 2.0)));
}

}  // namespace threshold_forms

double kaehler_cohomology_target(int n) { return 3.0 - 2.0 / n; }

ThresholdTable thresholds(int n, std::optional<int> kaehler_n) {
  if (n < 3) throw DomainError("threshold table requires n >= 3");
  const int complex_dim = kaehler_n.value_or(n);
  if (complex_dim < 2) throw DomainError("Kaehler thresholds require complex dimension >= 2");
  ThresholdTable table;
  table.n = n;
  table.kaehler_n = complex_dim;
  table.first_kind_space_form = threshold_forms::first_kind_by_dimension(n);
  table.second_kind_space_form = threshold_forms::second_kind_by_dimension(n);
  table.kaehler_cohomology = threshold_forms::kaehler_cohomology_by_dimension(complex_dim);
  table.kaehler_biholomorphic = threshold_forms::kaehler_biholomorphic_by_dimension(complex_dim);
  return table;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::spherical_space_form: return "spherical_space_form";
    case Verdict::rational_cohomology_cpn: return "rational_cohomology_CPn";
    case Verdict::biholomorphic_cpn: return "biholomorphic_CPn";
  }
  return "unknown";
}

bool CheckedInequality::holds() const noexcept {
  if (relation == ">") return lhs > rhs;
  if (relation == "<=") return lhs <= rhs;
  return false;
}

namespace {

constexpr double kThresholdSlack = 1e-12;

bool at_most(double value, double bound, double slack) {
  return value <= bound + slack * std::max(1.0, std::abs(bound));
}

/// ceil(m), treating m within tol of an integer as that integer.
int snapped_ceil(double m, double tol) {
  const double rounded = std::round(m);
  if (std::abs(m - rounded) <= tol * std::max(1.0, m)) return static_cast<int>(rounded);
  return static_cast<int>(std::ceil(m));
}

struct Core {
  ClassificationReport report;
  bool eligible = false;
};

Core evaluate_hypothesis(const Spectrum& spectrum, double epsilon, double tol) {
  Core core;
  auto& r = core.report;
  r.kind = spectrum.kind;
  r.dimension = spectrum.dimension;
  r.size = spectrum.eigenvalues.size();
  r.epsilon = epsilon;
  const EpsilonParams p = epsilon_to_params(epsilon, r.size);
  r.alpha = p.alpha;
  r.m = p.m;

  const RealVector values(std::vector<double>(spectrum.eigenvalues.entries().begin(),
                                              spectrum.eigenvalues.entries().end()));
  r.hypothesis = in_shifted_cone(values, 2, p.shift(), tol);
  r.m_positivity = in_positivity_cone(values, p.m, tol);

  if (!r.hypothesis.member_open) {
    r.notes.push_back(r.hypothesis.member_closed
                          ? "boundary: spectrum is in the closed shifted cone but not the open "
                            "one; no conclusion is drawn"
                          : "spectrum is outside the shifted cone; no conclusion is drawn");
    return core;
  }
  if (!r.m_positivity.member_open) {
    r.notes.push_back("inconsistent: open shifted-cone member is not m-positive");
    return core;
  }
  core.eligible = true;
  return core;
}

CheckedInequality epsilon_check(double epsilon, double threshold) {
  return CheckedInequality{"epsilon / threshold <= 1 + 1e-12", epsilon / threshold, "<=",
                           1.0 + kThresholdSlack};
}

CheckedInequality membership_check(const ConeMembership& m, double tol) {
  return CheckedInequality{"shifted cone margin > tol", m.margin, ">", tol};
}

CheckedInequality partial_sum_check(const Spectrum& s, double index, std::string description) {
  return CheckedInequality{std::move(description), partial_sum_fractional(s.eigenvalues, index),
                           ">", 0.0};
}

void emit_if_all_hold(ClassificationReport& report, VerdictRecord record) {
  for (const auto& check : record.checks) {
    if (!check.holds()) {
      if (check.description.rfind("epsilon", 0) != 0) {
        report.notes.push_back("verdict " + std::string(to_string(record.verdict)) +
                               " withheld: " + check.description + " fails");
      }
      return;
    }
  }
  report.verdicts.push_back(std::move(record));
}

void require_kind(const Spectrum& s, OperatorKind kind) {
  if (s.kind != kind) {
    throw DomainError("expected a " + std::string(to_string(kind)) + "-kind spectrum, got " +
                      std::string(to_string(s.kind)));
  }
}

}  // namespace

ClassificationReport classify_first_kind(const Spectrum& spectrum, double epsilon, double tol) {
  require_kind(spectrum, OperatorKind::first_kind);
  const int n = static_cast<int>(spectrum.dimension);
  if (n < 3) throw DomainError("classification requires n >= 3");
  Core core = evaluate_hypothesis(spectrum, epsilon, tol);
  auto& r = core.report;
  if (!core.eligible) return r;

  const int k = snapped_ceil(r.m, tol);
  const int half_up = (n + 1) / 2;
  if (k <= half_up) {
    r.betti_zero_ranges.push_back({1, n - 1});
    if (n % 2 == 1 && k == half_up) {
      r.notes.push_back("ceil(m) = ceil(n/2) > floor(n/2): full vanishing uses the ceil(n/2) "
                        "form of the 2-form rule");
    }
  } else if (k <= n - 1) {
    r.betti_zero_ranges.push_back({1, n - k});
    r.betti_zero_ranges.push_back({k, n - 1});
  }

  const double threshold = threshold_forms::first_kind_by_dimension(n);
  if (ThresholdTable::vacuous(threshold)) {
    r.notes.push_back("space-form threshold for n=" + std::to_string(n) + " is >= 1 (vacuous)");
  }
  VerdictRecord record{Verdict::spherical_space_form, "first_kind.space_form",
                       "2-positive curvature operator (Chen; Boehm-Wilking)",
                       {epsilon_check(epsilon, threshold), membership_check(r.hypothesis, tol),
                        partial_sum_check(spectrum, 2.0, "lambda_1 + lambda_2 > 0")}};
  emit_if_all_hold(r, std::move(record));
  return r;
}

ClassificationReport classify_second_kind(const Spectrum& spectrum, double epsilon, double tol) {
  require_kind(spectrum, OperatorKind::second_kind);
  const int n = static_cast<int>(spectrum.dimension);
  if (n < 3) throw DomainError("classification requires n >= 3");
  Core core = evaluate_hypothesis(spectrum, epsilon, tol);
  auto& r = core.report;
  if (!core.eligible) return r;

  if (at_most(r.m, 0.75 * n, tol)) r.betti_zero_ranges.push_back({1, n - 1});
  for (int p = 1; p <= n / 2; ++p) {
    if (at_most(r.m, form_degree_coefficients(n, p).c_p, tol)) {
      r.betti_zero_ranges.push_back({p, n - p});
    }
  }

  const double threshold = threshold_forms::second_kind_by_dimension(n);
  VerdictRecord record{Verdict::spherical_space_form, "second_kind.space_form",
                       "3-positive curvature operator of the second kind (Li)",
                       {epsilon_check(epsilon, threshold), membership_check(r.hypothesis, tol),
                        partial_sum_check(spectrum, 3.0, "nu_1 + nu_2 + nu_3 > 0")}};
  emit_if_all_hold(r, std::move(record));
  return r;
}

ClassificationReport classify_kaehler(const RealVector& spectrum, int complex_dim, double epsilon,
                                      double tol) {
  if (complex_dim < 2) throw DomainError("Kaehler classification requires complex dimension >= 2");
  const Spectrum s =
      make_spectrum(spectrum, OperatorKind::kaehler, static_cast<std::size_t>(complex_dim));
  Core core = evaluate_hypothesis(s, epsilon, tol);
  auto& r = core.report;
  if (!core.eligible) return r;

  const double cohomology_m = kaehler_cohomology_target(complex_dim);
  VerdictRecord cohomology{
      Verdict::rational_cohomology_cpn, "kaehler.rational_cohomology",
      "rho_1 + rho_2 + (1 - 2/n) rho_3 > 0 for the Kaehler curvature operator (Petersen-Wink)",
      {epsilon_check(epsilon, threshold_forms::kaehler_cohomology_by_dimension(complex_dim)),
       membership_check(r.hypothesis, tol),
       partial_sum_check(s, cohomology_m, "rho_1 + rho_2 + (1 - 2/n) rho_3 > 0")}};
  emit_if_all_hold(r, std::move(cohomology));

  VerdictRecord biholomorphic{
      Verdict::biholomorphic_cpn, "kaehler.biholomorphic",
      "2-positive Kaehler curvature operator: positive orthogonal bisectional curvature",
      {epsilon_check(epsilon, threshold_forms::kaehler_biholomorphic_by_dimension(complex_dim)),
       membership_check(r.hypothesis, tol), partial_sum_check(s, 2.0, "rho_1 + rho_2 > 0")}};
  emit_if_all_hold(r, std::move(biholomorphic));
  return r;
}

ClassificationReport classify(const Spectrum& spectrum, double epsilon, double tol) {
  switch (spectrum.kind) {
    case OperatorKind::first_kind: return classify_first_kind(spectrum, epsilon, tol);
    case OperatorKind::second_kind: return classify_second_kind(spectrum, epsilon, tol);
    case OperatorKind::kaehler:
      return classify_kaehler(RealVector(std::vector<double>(spectrum.eigenvalues.entries().begin(),
                                                             spectrum.eigenvalues.entries().end())),
                              static_cast<int>(spectrum.dimension), epsilon, tol);
    case OperatorKind::generic: break;
  }
  throw DomainError("generic spectra cannot be classified");
}

}  // namespace gardinglab
