#include "gardinglab/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gardinglab/errors.hpp"

namespace gardinglab {

namespace {

std::vector<double> validated(std::vector<double> entries) {
  if (entries.empty()) throw DomainError("vector must have at least one entry");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!std::isfinite(entries[i])) {
      throw DomainError("entry " + std::to_string(i) + " is not finite");
    }
  }
  return entries;
}

}  // namespace

RealVector::RealVector(std::vector<double> entries) : entries_(validated(std::move(entries))) {}

RealVector::RealVector(std::initializer_list<double> entries)
    : entries_(validated(std::vector<double>(entries))) {}

SortedVector::SortedVector(const RealVector& source) : permutation_(source.size()) {
  std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
  std::stable_sort(permutation_.begin(), permutation_.end(),
                   [&](std::size_t a, std::size_t b) { return source[a] < source[b]; });
  entries_.reserve(source.size());
  for (std::size_t idx : permutation_) entries_.push_back(source[idx]);
}

std::vector<double> elementary_symmetric_upto(std::span<const double> v, std::size_t k_max) {
  std::vector<double> coeff(k_max + 1, 0.0);
  coeff[0] = 1.0;
  std::size_t seen = 0;
  for (double x : v) {
    ++seen;
    // Descending j so coeff[j - 1] still holds the previous product.
    for (std::size_t j = std::min(seen, k_max); j >= 1; --j) coeff[j] += x * coeff[j - 1];
  }
  return coeff;
}

double elementary_symmetric(const RealVector& v, std::size_t k) {
  if (k < 1 || k > v.size()) {
    throw DomainError("sigma_k requires 1 <= k <= N (k=" + std::to_string(k) +
                      ", N=" + std::to_string(v.size()) + ")");
  }
  return elementary_symmetric_upto(v.entries(), k)[k];
}

double sigma2_via_power_sums(const RealVector& v) {
  if (v.size() < 2) throw DomainError("sigma_2 requires N >= 2");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : v) {
    sum += x;
    sum_sq += x * x;
  }
  return 0.5 * (sum * sum - sum_sq);
}

double partial_sum_fractional(const SortedVector& v, double m) {
  const auto n = static_cast<double>(v.size());
  if (!(m > 0.0) || m > n) {
    throw DomainError("partial sum index m=" + std::to_string(m) + " outside (0, " +
                      std::to_string(v.size()) + "]");
  }
  const double whole = std::floor(m);
  const double frac = m - whole;
  const auto count = static_cast<std::size_t>(whole);
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) total += v[i];
  if (frac != 0.0) total += frac * v[count];
  return total;
}

double normalized_partial_sum(const SortedVector& v, double m) {
  return partial_sum_fractional(v, m) / m;
}

double euclidean_norm(std::span<const double> v) noexcept {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) {
    const double r = x / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

double binomial(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(result);
}

}  // namespace gardinglab
