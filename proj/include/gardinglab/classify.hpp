#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gardinglab/cones.hpp"
#include "gardinglab/curvature.hpp"

namespace gardinglab {

/// Closed forms of the epsilon thresholds, once in terms of the operator size
/// N and once in terms of the dimension n. Both forms of each pair agree.
namespace threshold_forms {
/// sqrt(2 / ((N1 - 1)(N1 - 2))) with N1 = n(n-1)/2.
[[nodiscard]] double first_kind_by_size(std::size_t n1);
/// sqrt(8 / ((n^2 - n - 2)(n^2 - n - 4))).
[[nodiscard]] double first_kind_by_dimension(int n);
/// sqrt(3 / ((N2 - 1)(N2 - 3))) with N2 = (n-1)(n+2)/2.
[[nodiscard]] double second_kind_by_size(std::size_t n2);
/// sqrt(12 / ((n^2 + n - 4)(n^2 + n - 8))).
[[nodiscard]] double second_kind_by_dimension(int n);
/// sqrt(m / ((N3 - 1)(N3 - m))) with N3 = n^2, m = 3 - 2/n.
[[nodiscard]] double kaehler_cohomology_by_size(std::size_t n3, int n);
/// sqrt((3n - 2) / ((n^3 - 3n + 2)(n^2 - 1))).
[[nodiscard]] double kaehler_cohomology_by_dimension(int n);
/// sqrt(2 / ((N3 - 1)(N3 - 2))).
[[nodiscard]] double kaehler_biholomorphic_by_size(std::size_t n3);
/// sqrt(2 / ((n^2 - 1)(n^2 - 2))).
[[nodiscard]] double kaehler_biholomorphic_by_dimension(int n);
}  // namespace threshold_forms

/// Largest epsilon for each classification rule, with the positivity index m
/// it is calibrated to: 2, 3, 3 - 2/n and 2 respectively.
struct ThresholdTable {
  int n = 0;          ///< real dimension
  int kaehler_n = 0;  ///< complex dimension for the Kaehler rows
  double first_kind_space_form = 0.0;
  double second_kind_space_form = 0.0;
  double kaehler_cohomology = 0.0;
  double kaehler_biholomorphic = 0.0;

  /// A threshold >= 1 admits every epsilon in (0, 1); the bound says nothing.
  [[nodiscard]] static bool vacuous(double threshold) noexcept { return threshold >= 1.0; }
};

/// Throws DomainError when n < 3 or kaehler_n < 2. kaehler_n defaults to n.
[[nodiscard]] ThresholdTable thresholds(int n, std::optional<int> kaehler_n = std::nullopt);

/// Target m of each rule (used to calibrate the thresholds).
[[nodiscard]] double kaehler_cohomology_target(int n);

enum class Verdict { spherical_space_form, rational_cohomology_cpn, biholomorphic_cpn };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

/// One numeric comparison backing a verdict, kept so a reader can re-check it.
struct CheckedInequality {
  std::string description;
  double lhs = 0.0;
  std::string relation;  ///< ">" or "<="
  double rhs = 0.0;

  [[nodiscard]] bool holds() const noexcept;
};

struct VerdictRecord {
  Verdict verdict = Verdict::spherical_space_form;
  std::string rule;   ///< identifier of the classification rule applied
  std::string basis;  ///< the positivity statement the conclusion rests on
  std::vector<CheckedInequality> checks;
};

/// Inclusive range of Betti indices forced to vanish.
struct BettiRange {
  int low = 0;
  int high = 0;
  friend bool operator==(const BettiRange&, const BettiRange&) = default;
};

struct ClassificationReport {
  OperatorKind kind = OperatorKind::first_kind;
  std::size_t dimension = 0;  ///< real n, or complex n for Kaehler
  std::size_t size = 0;       ///< number of eigenvalues N
  double epsilon = 0.0;
  double alpha = 0.0;
  double m = 0.0;
  ConeMembership hypothesis;    ///< shifted cone of order 2
  ConeMembership m_positivity;  ///< m-positivity cone
  std::vector<BettiRange> betti_zero_ranges;
  std::vector<VerdictRecord> verdicts;
  std::vector<std::string> notes;
};

/// Shifted-cone hypothesis, m-positivity and the conclusions for the curvature
/// operator on 2-forms. Betti vanishing follows from k = ceil(m): full range
/// for k <= ceil(n/2), [1, n-k] and [k, n-1] for ceil(n/2) < k <= n-1.
[[nodiscard]] ClassificationReport classify_first_kind(const Spectrum& spectrum, double epsilon,
                                                       double tol = kDefaultTol);

/// Same for the curvature operator of the second kind: full range when
/// m <= 3n/4, [p, n-p] whenever m <= C_p(n).
[[nodiscard]] ClassificationReport classify_second_kind(const Spectrum& spectrum, double epsilon,
                                                        double tol = kDefaultTol);

/// Kaehler curvature operator on u(n), spectrum of length n^2.
[[nodiscard]] ClassificationReport classify_kaehler(const RealVector& spectrum, int complex_dim,
                                                    double epsilon, double tol = kDefaultTol);

/// Dispatch on spectrum.kind.
[[nodiscard]] ClassificationReport classify(const Spectrum& spectrum, double epsilon,
                                            double tol = kDefaultTol);

}  // namespace gardinglab
