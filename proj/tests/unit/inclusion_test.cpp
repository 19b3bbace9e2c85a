#include <doctest.h>

#include <cmath>

#include "gardinglab/errors.hpp"
#include "gardinglab/inclusion.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gardinglab;
using namespace gardinglab::testing;

TEST_CASE("epsilon parameters") {
  CHECK(epsilon_to_params(0.5, 3).m == doctest::Approx(1.0));
  CHECK(epsilon_to_params(std::sqrt(0.1), 6).m == doctest::Approx(2.0));
  CHECK(epsilon_to_params(1.0 / std::sqrt(3.0), 4).m == doctest::Approx(2.0));
  CHECK(epsilon_to_params(0.5, 3).alpha == doctest::Approx(0.5 / 3.0));
  CHECK_THROWS_AS((void)epsilon_to_params(0.0, 3), DomainError);
  CHECK_THROWS_AS((void)epsilon_to_params(1.0, 3), DomainError);
  CHECK_THROWS_AS((void)epsilon_to_params(0.5, 1), DomainError);
  CHECK(m_epsilon_formula(1.0, 7) == doctest::Approx(6.0));
}

TEST_CASE("m is strictly increasing in epsilon and stays below N - 1") {
  for (std::size_t n : {2u, 3u, 10u, 45u}) {
    double previous = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double m = epsilon_to_params(i / 100.0, n).m;
      CHECK(m > previous);
      CHECK(m < static_cast<double>(n) - 1.0);
      previous = m;
    }
  }
}

TEST_CASE("inverse epsilon map") {
  CHECK(epsilon_for_target_m(2.0, 6) == doctest::Approx(std::sqrt(0.1)));
  CHECK(epsilon_for_target_m(2.0, 4) == doctest::Approx(1.0 / std::sqrt(3.0)));
  for (std::size_t n = 3; n <= 30; ++n) {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double eps = epsilon_for_target_m(static_cast<double>(k), n);
      const double nn = static_cast<double>(n);
      CHECK(eps == doctest::Approx(std::sqrt(k / ((nn - 1.0) * (nn - k)))));
      CHECK(epsilon_to_params(eps, n).m == doctest::Approx(static_cast<double>(k)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS((void)epsilon_for_target_m(5.0, 6), DomainError);
  CHECK_THROWS_AS((void)epsilon_for_target_m(0.0, 6), DomainError);
}

TEST_CASE("sigma_2 identity") {
  const auto boundary = epsilon_to_params(1.0 / std::sqrt(3.0), 4);
  CHECK(std::abs(sigma2_identity_residual({0.0, 0.0, 1.0, 1.0}, boundary)) <= 1e-15);
  CHECK(std::abs(elementary_symmetric(shift({0.0, 0.0, 1.0, 1.0}, boundary.shift()), 2)) <= 1e-15);
  CHECK(sigma2_identity_residual({0.0, 0.0, 0.0, 0.0}, boundary) == 0.0);

  Rng rng(8);
  const auto p = epsilon_to_params(0.3, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = gaussian_vector(rng, 10, 3.0);
    const double norm = euclidean_norm(v);
    CHECK(std::abs(sigma2_identity_residual(RealVector(v), p)) <= 1e-9 * (1.0 + norm * norm));
  }
}

TEST_CASE("dichotomy examples") {
  const auto p4 = epsilon_to_params(1.0 / std::sqrt(3.0), 4);
  const auto rigid = check_dichotomy({0.0, 0.0, 1.0, 1.0}, p4);
  CHECK(rigid.kind == DichotomyCase::boundary_rigid);
  REQUIRE(rigid.rigid_m.has_value());
  CHECK(*rigid.rigid_m == 2);

  for (double eps : {0.1, 0.4, 0.8}) {
    const auto p6 = epsilon_to_params(eps, 6);
    CHECK(check_dichotomy({1.0, 1.0, 1.0, 1.0, 1.0, 1.0}, p6).kind ==
          DichotomyCase::strict_positive);
  }
  CHECK(check_dichotomy({-1.0, -1.0, 3.0}, epsilon_to_params(0.5, 3)).kind ==
        DichotomyCase::not_member);
  CHECK(check_dichotomy({0.0, 0.0, 0.0}, epsilon_to_params(0.5, 3)).kind ==
        DichotomyCase::zero_vector);
  CHECK(to_string(DichotomyCase::boundary_rigid) == "boundary_rigid");
}

TEST_CASE("rigid witnesses sit on the cone boundary") {
  for (std::size_t n = 3; n <= 12; ++n) {
    for (std::size_t m = 1; m + 2 <= n; ++m) {
      const RealVector w = sharp_witness(n, m);
      CHECK(w[m - 1] == 0.0);
      CHECK(w[m] == 1.0);
      const auto p = epsilon_to_params(epsilon_for_target_m(static_cast<double>(m), n), n);
      CHECK(std::abs(elementary_symmetric(shift(w, p.shift()), 2)) <= 1e-10);
      CHECK(std::abs(partial_sum_fractional(SortedVector(w), p.m)) <= 1e-12);
      CHECK(check_dichotomy(w, p).kind == DichotomyCase::boundary_rigid);
    }
  }
  CHECK(sharp_witness(2, 1) == RealVector({0.0, 1.0}));
  CHECK(sharp_witness(6, 4) == RealVector({0.0, 0.0, 0.0, 0.0, 1.0, 1.0}));
  CHECK_THROWS_AS((void)sharp_witness(4, 0), DomainError);
  CHECK_THROWS_AS((void)sharp_witness(4, 4), DomainError);
}

TEST_CASE("members of the shifted cone are strictly m-positive or rigid") {
  Rng rng(31);
  std::size_t members = 0;
  for (int trial = 0; trial < 4000; ++trial) {
    const std::size_t n = uniform_size(rng, 2, 9);
    auto v = gaussian_vector(rng, n);
    for (double& x : v) x += 1.0;
    const auto p = epsilon_to_params(uniform_real(rng, 0.05, 0.95), n);
    const auto verdict = check_dichotomy(RealVector(v), p);
    CHECK(verdict.kind != DichotomyCase::inconsistent);
    if (verdict.membership.member_open) {
      ++members;
      CHECK(verdict.kind == DichotomyCase::strict_positive);
    }
  }
  CHECK(members > 100);
}

TEST_CASE("sampling reports no violations") {
  SamplingOptions options;
  options.samples = 20000;
  options.seed = 5;
  const auto report = verify_inclusion_sampling(6, std::sqrt(0.1), options);
  CHECK(report.passed());
  CHECK(report.draws == 20000);
  CHECK(report.accepted > 0);
  CHECK(report.min_margin.has_value());
  CHECK(*report.min_margin > 0.0);

  const auto wide = verify_inclusion_sampling(3, 0.9, options);
  CHECK(wide.passed());
  CHECK(wide.accepted > 0);
}

TEST_CASE("zero samples is a vacuous pass") {
  SamplingOptions options;
  options.samples = 0;
  const auto report = verify_inclusion_sampling(5, 0.5, options);
  CHECK(report.passed());
  CHECK(report.draws == 0);
  CHECK(report.accepted == 0);
  CHECK_FALSE(report.min_margin.has_value());
  CHECK(report.acceptance_rate() == 0.0);
}

TEST_CASE("hit and run accepts every draw, also for thin cones") {
  SamplingOptions options;
  options.samples = 5000;
  options.sampler = Sampler::hit_and_run;
  options.seed = 77;
  for (std::size_t n : {3u, 10u, 45u}) {
    for (double eps : {0.05, 0.5, 0.9}) {
      const auto report = verify_inclusion_sampling(n, eps, options);
      CHECK(report.passed());
      CHECK(report.accepted == report.draws);
    }
  }
}

TEST_CASE("sampling is deterministic and thread independent") {
  for (Sampler sampler : {Sampler::rejection, Sampler::hit_and_run}) {
    SamplingOptions options;
    options.samples = 9000;
    options.seed = 1234;
    options.sampler = sampler;
    const auto a = verify_inclusion_sampling(7, 0.4, options);
    options.threads = 3;
    const auto b = verify_inclusion_sampling(7, 0.4, options);
    CHECK(a.accepted == b.accepted);
    CHECK(a.min_margin == b.min_margin);
    options.seed = 1235;
    const auto c = verify_inclusion_sampling(7, 0.4, options);
    CHECK(c.min_margin != a.min_margin);
  }
}

TEST_CASE("boundary search reaches the rigid minimizer for integer m") {
  BoundarySearchOptions options;
  options.restarts = 8;
  options.seed = 3;
  const auto report = boundary_search(4, 1.0 / std::sqrt(3.0), options);
  CHECK(report.passed());
  CHECK(report.min_c0 >= -1e-8);
  CHECK(report.min_c0 <= 1e-6);
  REQUIRE(report.minimizer.size() == 4);
  CHECK(report.minimizer[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(report.minimizer[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(report.minimizer[2] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(report.minimizer[3] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("boundary search matches the closed-form slice minimum") {
  BoundarySearchOptions options;
  options.restarts = 6;
  options.seed = 19;
  struct Case {
    std::size_t n;
    double m;
  };
  for (const Case c : {Case{5, 2.5}, Case{2, 0.5}, Case{3, 0.2}, Case{6, 1.7}, Case{8, 3.0},
                       Case{10, 6.4}}) {
    const double eps = epsilon_for_target_m(c.m, c.n);
    const auto report = boundary_search(c.n, eps, options);
    CHECK(report.converged);
    CHECK(report.min_c0 == doctest::Approx(min_partial_sum_on_slice(c.n, report.m)).epsilon(1e-7));
    double sum = 0.0;
    for (double x : report.minimizer) sum += x;
    CHECK(sum == doctest::Approx(1.0));
  }
  // Non-integer m leaves a strictly positive minimum.
  const auto fractional = boundary_search(5, epsilon_for_target_m(2.5, 5), options);
  CHECK(fractional.min_c0 > 0.05);
  CHECK_FALSE(fractional.rigid_m.has_value());
}

TEST_CASE("the slice cone is the ball used by the oracle") {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform_size(rng, 3, 12);
    const double m = uniform_real(rng, 0.3, static_cast<double>(n) - 1.2);
    const auto p = epsilon_to_params(epsilon_for_target_m(m, n), n);
    auto direction = gaussian_vector(rng, n);
    double mean = 0.0;
    for (double x : direction) mean += x / static_cast<double>(n);
    for (double& x : direction) x -= mean;
    const double dn = euclidean_norm(direction);
    const double radius = std::sqrt(1.0 / (n - p.m) - 1.0 / n);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 / n + radius * direction[i] / dn;
    CHECK(std::abs(elementary_symmetric(shift(RealVector(v), p.shift()), 2)) <= 1e-12);
  }
}

TEST_CASE("boundary search is thread independent") {
  BoundarySearchOptions options;
  options.restarts = 5;
  options.seed = 8;
  const auto a = boundary_search(6, epsilon_for_target_m(4.0, 6), options);
  options.threads = 4;
  const auto b = boundary_search(6, epsilon_for_target_m(4.0, 6), options);
  CHECK(a.min_c0 == b.min_c0);
  CHECK(a.minimizer == b.minimizer);
  CHECK_THROWS_AS((void)boundary_search(6, 0.5, BoundarySearchOptions{.restarts = 0}), DomainError);
}
