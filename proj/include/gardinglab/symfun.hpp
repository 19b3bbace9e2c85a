#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gardinglab {

/// Non-empty vector of finite reals. Construction throws DomainError when the
/// input is empty or contains NaN/infinity.
class RealVector {
 public:
  explicit RealVector(std::vector<double> entries);
  RealVector(std::initializer_list<double> entries);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return entries_; }
  [[nodiscard]] auto begin() const noexcept { return entries_.begin(); }
  [[nodiscard]] auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  std::vector<double> entries_;
};

/// Entries in non-decreasing order together with the permutation that produced
/// them: entries()[i] == source[permutation()[i]]. Ties keep source order.
class SortedVector {
 public:
  explicit SortedVector(const RealVector& source);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] std::span<const std::size_t> permutation() const noexcept { return permutation_; }

 private:
  std::vector<double> entries_;
  std::vector<std::size_t> permutation_;
};

/// sigma_k(v): sum over k-subsets of the product of their entries.
/// Computed as the t^k coefficient of prod(1 + t v_i), O(N k).
/// Throws DomainError unless 1 <= k <= N.
[[nodiscard]] double elementary_symmetric(const RealVector& v, std::size_t k);

/// All of sigma_0 = 1, sigma_1, ..., sigma_kmax in one pass.
[[nodiscard]] std::vector<double> elementary_symmetric_upto(std::span<const double> v,
                                                            std::size_t k_max);

/// ((sum v)^2 - sum v^2) / 2. Throws DomainError when N < 2.
[[nodiscard]] double sigma2_via_power_sums(const RealVector& v);

/// v_1 + ... + v_floor(m) + (m - floor(m)) v_{floor(m)+1} on the sorted
/// entries. For integer m the fractional entry is never read, so m = N is
/// valid. Accepts 0 < m <= N; for m < 1 this is m * v_1.
[[nodiscard]] double partial_sum_fractional(const SortedVector& v, double m);

/// partial_sum_fractional(v, m) / m. Non-decreasing in m.
[[nodiscard]] double normalized_partial_sum(const SortedVector& v, double m);

[[nodiscard]] double euclidean_norm(std::span<const double> v) noexcept;

/// Binomial coefficient as a double (exact for the sizes used here).
[[nodiscard]] double binomial(std::size_t n, std::size_t k) noexcept;

}  // namespace gardinglab
