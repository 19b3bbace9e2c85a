#include <doctest.h>

#include <cmath>

#include "gardinglab/errors.hpp"
#include "gardinglab/symfun.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gardinglab;
using namespace gardinglab::testing;

TEST_CASE("real vector rejects empty and non-finite input") {
  CHECK_THROWS_AS(RealVector(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(RealVector({1.0, NAN}), DomainError);
  CHECK_THROWS_AS(RealVector({INFINITY}), DomainError);
  CHECK(RealVector({1.0, 2.0}).size() == 2);
}

TEST_CASE("sorted vector keeps a stable permutation") {
  const RealVector v{3.0, 1.0, 2.0, 1.0};
  const SortedVector s(v);
  CHECK(s[0] == 1.0);
  CHECK(s[3] == 3.0);
  CHECK(s.permutation()[0] == 1);
  CHECK(s.permutation()[1] == 3);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(s[i] == v[s.permutation()[i]]);
}

TEST_CASE("elementary symmetric examples") {
  CHECK(elementary_symmetric({1.0, 2.0, 3.0}, 2) == 11.0);
  CHECK(elementary_symmetric({1.0, 1.0, 1.0}, 3) == 1.0);
  CHECK(elementary_symmetric({0.0, 1.0, 2.0}, 1) == 3.0);
  CHECK_THROWS_AS((void)elementary_symmetric({1.0, 2.0}, 0), DomainError);
  CHECK_THROWS_AS((void)elementary_symmetric({1.0, 2.0}, 3), DomainError);
}

TEST_CASE("elementary symmetric matches subset enumeration") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = uniform_size(rng, 1, 12);
    const auto v = trial % 3 == 0 ? tied_vector(rng, n) : gaussian_vector(rng, n, 1.5);
    const auto all = elementary_symmetric_upto(v, n);
    CHECK(all[0] == 1.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const double expected = brute_sigma(v, k);
      const double got = elementary_symmetric(RealVector(v), k);
      const double scale = 1.0 + brute_sigma(std::vector<double>(n, 2.0), k);
      CHECK(std::abs(got - expected) <= 1e-12 * scale);
      CHECK(all[k] == doctest::Approx(got).epsilon(1e-15).scale(scale));
    }
  }
}

TEST_CASE("sigma_2 through power sums") {
  CHECK(sigma2_via_power_sums({1.0, 2.0, 3.0}) == 11.0);
  CHECK(sigma2_via_power_sums({0.0, 0.0, 1.0, 1.0}) == 1.0);
  const double c = 1.75;
  CHECK(sigma2_via_power_sums(RealVector(std::vector<double>(7, c))) ==
        doctest::Approx(c * c * 7 * 6 / 2));
  CHECK_THROWS_AS((void)sigma2_via_power_sums({1.0}), DomainError);

  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = gaussian_vector(rng, uniform_size(rng, 2, 30));
    const RealVector rv(v);
    CHECK(sigma2_via_power_sums(rv) ==
          doctest::Approx(elementary_symmetric(rv, 2)).scale(1.0 + std::pow(euclidean_norm(v), 2)));
  }
}

TEST_CASE("fractional partial sums") {
  CHECK(partial_sum_fractional(SortedVector({-1.0, 1.0, 1.0}), 1.5) == -0.5);
  CHECK(partial_sum_fractional(SortedVector({0.0, 0.0, 1.0, 1.0}), 2.0) == 0.0);
  CHECK(partial_sum_fractional(SortedVector({1.0, 2.0, 3.0}), 3.0) == 6.0);
  CHECK(partial_sum_fractional(SortedVector({2.0, 5.0}), 0.5) == 1.0);
  CHECK_THROWS_AS((void)partial_sum_fractional(SortedVector({1.0, 2.0}), 0.0), DomainError);
  CHECK_THROWS_AS((void)partial_sum_fractional(SortedVector({1.0, 2.0}), 2.5), DomainError);

  CHECK(normalized_partial_sum(SortedVector({1.0, 2.0}), 1.0) == 1.0);
  CHECK(normalized_partial_sum(SortedVector({1.0, 2.0}), 2.0) == 1.5);
  CHECK(normalized_partial_sum(SortedVector({0.0, 0.0, 1.0, 1.0}), 3.0) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("partial sum is the smallest weighted selection") {
  Rng rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = uniform_size(rng, 1, 9);
    const auto v = trial % 2 ? tied_vector(rng, n) : gaussian_vector(rng, n);
    const double m = trial % 4 == 0 ? static_cast<double>(uniform_size(rng, 1, n))
                                    : uniform_real(rng, 1.0, static_cast<double>(n));
    CHECK(partial_sum_fractional(SortedVector(RealVector(v)), m) ==
          doctest::Approx(brute_partial_sum(v, m)).epsilon(1e-12));
  }
}

TEST_CASE("normalized partial sum is non-decreasing in m") {
  Rng rng(23);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = uniform_size(rng, 2, 32);
    const SortedVector s(RealVector(gaussian_vector(rng, n)));
    double m1 = uniform_real(rng, 1.0, n);
    double m2 = uniform_real(rng, 1.0, n);
    if (m1 > m2) std::swap(m1, m2);
    CHECK(normalized_partial_sum(s, m1) <= normalized_partial_sum(s, m2) + 1e-12);
  }
}

TEST_CASE("norm and binomial helpers") {
  CHECK(euclidean_norm(std::vector<double>{3.0, 4.0}) == 5.0);
  CHECK(euclidean_norm(std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(euclidean_norm(std::vector<double>{1e200, 1e200}) == doctest::Approx(std::sqrt(2.0) * 1e200));
  CHECK(binomial(6, 2) == 15.0);
  CHECK(binomial(45, 0) == 1.0);
  CHECK(binomial(4, 5) == 0.0);
}
