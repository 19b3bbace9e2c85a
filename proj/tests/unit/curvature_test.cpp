#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gardinglab/curvature.hpp"
#include "gardinglab/errors.hpp"
#include "support/generators.hpp"

using namespace gardinglab;
using namespace gardinglab::testing;

namespace {

std::vector<double> eigen_values(std::size_t size, std::span<const double> entries) {
  Eigen::MatrixXd a(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) a(r, c) = entries[r * size + c];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  const auto& values = solver.eigenvalues();
  return std::vector<double>(values.data(), values.data() + values.size());
}

std::vector<double> spectrum_of(const OperatorMatrix& a) {
  const Spectrum s = eigen_spectrum(a);
  return std::vector<double>(s.eigenvalues.entries().begin(), s.eigenvalues.entries().end());
}

/// Second-kind operator over a Gram-Schmidt basis of trace-free symmetric
/// matrices built from the elementary matrices, eigenvalues by Eigen.
std::vector<double> second_kind_reference(const CurvatureTensor& r) {
  const std::size_t n = r.dimension();
  std::vector<Eigen::MatrixXd> basis;
  auto push = [&](Eigen::MatrixXd m) {
    for (const auto& b : basis) m -= (m.cwiseProduct(b).sum()) * b;
    const double norm = std::sqrt(m.cwiseProduct(m).sum());
    if (norm > 1e-10) basis.push_back(m / norm);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(i, j) = 1.0;
      m(j, i) = 1.0;
      m -= (m.trace() / static_cast<double>(n)) * Eigen::MatrixXd::Identity(n, n);
      push(m);
    }
  }
  const std::size_t size = basis.size();
  std::vector<double> entries(size * size);
  for (std::size_t b = 0; b < size; ++b) {
    Eigen::MatrixXd image = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) image(i, j) += r(i, k, l, j) * basis[b](k, l);
    for (std::size_t a = 0; a < size; ++a) entries[a * size + b] = basis[a].cwiseProduct(image).sum();
  }
  return eigen_values(size, entries);
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("space form components") {
  const auto sphere = model_space_form(4, 1.0);
  CHECK(sphere(0, 1, 0, 1) == 1.0);
  CHECK(sphere(0, 1, 1, 0) == -1.0);
  CHECK(sphere(0, 1, 0, 2) == 0.0);
  const auto flat = model_space_form(5, 0.0);
  CHECK(std::all_of(flat.data().begin(), flat.data().end(), [](double x) { return x == 0.0; }));
  CHECK(model_space_form(3, -1.0)(0, 1, 0, 1) == -1.0);
  CHECK_THROWS_AS((void)model_space_form(1, 1.0), DomainError);
}

TEST_CASE("product of spheres") {
  const auto product = model_product_spheres(2, 2);
  CHECK(product.dimension() == 4);
  CHECK(product(0, 1, 0, 1) == 1.0);
  CHECK(product(2, 3, 2, 3) == 1.0);
  CHECK(product(0, 2, 0, 2) == 0.0);
  CHECK(scalar_curvature(product) == 4.0);
  CHECK(scalar_curvature(model_product_spheres(3, 4)) == 6.0 + 12.0);
  CHECK_THROWS_AS((void)model_product_spheres(1, 3), DomainError);
}

TEST_CASE("component lists expand symmetry orbits") {
  const std::vector<TensorComponent> comps = {{0, 1, 0, 1, 2.0}, {1, 0, 1, 0, 2.0}};
  const auto r = CurvatureTensor::from_components(3, comps);
  CHECK(r(0, 1, 0, 1) == 2.0);
  CHECK(r(1, 0, 0, 1) == -2.0);
  CHECK(r(0, 1, 1, 0) == -2.0);
  CHECK(r(0, 2, 0, 2) == 0.0);

  const std::vector<TensorComponent> conflict = {{0, 1, 0, 1, 2.0}, {1, 0, 0, 1, 2.0}};
  CHECK_THROWS_AS((void)CurvatureTensor::from_components(3, conflict), ValidationError);
  const std::vector<TensorComponent> diagonal = {{0, 0, 1, 2, 1.0}};
  CHECK_THROWS_AS((void)CurvatureTensor::from_components(3, diagonal), ValidationError);
  const std::vector<TensorComponent> bianchi = {{0, 1, 2, 3, 1.0}};
  CHECK_THROWS_AS((void)CurvatureTensor::from_components(4, bianchi), ValidationError);
  const std::vector<TensorComponent> out_of_range = {{0, 1, 0, 5, 1.0}};
  CHECK_THROWS_AS((void)CurvatureTensor::from_components(4, out_of_range), DomainError);
}

TEST_CASE("dense tensors are validated") {
  Rng rng(4);
  auto data = random_curvature_data(rng, 4);
  CHECK_NOTHROW((void)CurvatureTensor::from_dense(4, data));
  auto broken = data;
  broken[((0 * 4 + 1) * 4 + 2) * 4 + 3] += 0.5;
  CHECK_THROWS_AS((void)CurvatureTensor::from_dense(4, broken), ValidationError);
  CHECK_THROWS_AS((void)CurvatureTensor::from_dense(4, std::vector<double>(10)), DomainError);
}

TEST_CASE("operator sizes") {
  CHECK(operator_size(OperatorKind::first_kind, 4) == 6);
  CHECK(operator_size(OperatorKind::second_kind, 4) == 9);
  CHECK(operator_size(OperatorKind::kaehler, 3) == 9);
  CHECK_THROWS_AS((void)operator_size(OperatorKind::generic, 3), DomainError);
  CHECK(to_string(OperatorKind::second_kind) == "second");
}

TEST_CASE("space form operators are multiples of the identity") {
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto r = model_space_form(n, 1.5);
    const auto first = assemble_first_kind(r);
    const auto second = assemble_second_kind(r);
    CHECK(first.size() == n * (n - 1) / 2);
    CHECK(second.size() == (n - 1) * (n + 2) / 2);
    for (std::size_t a = 0; a < first.size(); ++a)
      for (std::size_t b = 0; b < first.size(); ++b) CHECK(first(a, b) == (a == b ? 1.5 : 0.0));
    for (std::size_t a = 0; a < second.size(); ++a)
      for (std::size_t b = 0; b < second.size(); ++b)
        CHECK(second(a, b) == doctest::Approx(a == b ? 1.5 : 0.0));
  }
  const auto zero = assemble_second_kind(model_space_form(4, 0.0));
  CHECK(zero.frobenius_norm() == 0.0);
}

TEST_CASE("first kind entries follow the pair ordering") {
  Rng rng(6);
  const auto r = random_curvature_tensor(rng, 5);
  const auto a = assemble_first_kind(r);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
  for (std::size_t x = 0; x < pairs.size(); ++x)
    for (std::size_t y = 0; y < pairs.size(); ++y)
      CHECK(a(x, y) == r(pairs[x].first, pairs[x].second, pairs[y].first, pairs[y].second));
}

TEST_CASE("product spectrum") {
  const auto spectrum = spectrum_of(assemble_first_kind(model_product_spheres(2, 2)));
  check_close(spectrum, {0.0, 0.0, 0.0, 0.0, 1.0, 1.0}, 1e-12);
}

TEST_CASE("Jacobi eigensolver examples") {
  CHECK(spectrum_of(OperatorMatrix(3, {3, 0, 0, 0, 1, 0, 0, 0, 2})) == std::vector<double>{1, 2, 3});
  check_close(spectrum_of(OperatorMatrix(2, {0, 1, 1, 0})), {-1.0, 1.0}, 1e-15);
  std::vector<double> identity(36, 0.0);
  for (std::size_t i = 0; i < 6; ++i) identity[i * 7] = 1.0;
  CHECK(spectrum_of(OperatorMatrix(6, identity)) == std::vector<double>(6, 1.0));
  CHECK_THROWS_AS(OperatorMatrix(2, {0, 1, 2, 0}), ValidationError);
  CHECK_THROWS_AS(OperatorMatrix(2, {0, 1, 1}), DomainError);
}

TEST_CASE("Jacobi agrees with a reference solver") {
  Rng rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = uniform_size(rng, 1, 30);
    const auto entries = random_symmetric(rng, n);
    const OperatorMatrix a(n, entries);
    const auto decomposition = jacobi_eigen(a);
    const auto reference = eigen_values(n, entries);
    check_close(decomposition.values, reference, 1e-11 * (1.0 + a.frobenius_norm()));

    const auto& q = decomposition.vectors;
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t d = 0; d < n; ++d) {
        double dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += q[r * n + c] * q[r * n + d];
        CHECK(dot == doctest::Approx(c == d ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
      }
      for (std::size_t r = 0; r < n; ++r) {
        double av = 0.0;
        for (std::size_t k = 0; k < n; ++k) av += a(r, k) * q[k * n + c];
        CHECK(std::abs(av - decomposition.values[c] * q[r * n + c]) <= 1e-11 * (1.0 + a.frobenius_norm()));
      }
    }
  }
}

TEST_CASE("second kind spectrum matches an independently built basis") {
  Rng rng(21);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto r = random_curvature_tensor(rng, n);
    check_close(spectrum_of(assemble_second_kind(r)), second_kind_reference(r), 1e-10);
  }
}

TEST_CASE("spectra are invariant under a change of frame") {
  Rng rng(33);
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto r = random_curvature_tensor(rng, n);
    const auto rotated = change_frame(r, random_orthogonal(rng, n));
    check_close(spectrum_of(assemble_first_kind(r)), spectrum_of(assemble_first_kind(rotated)), 1e-10);
    check_close(spectrum_of(assemble_second_kind(r)), spectrum_of(assemble_second_kind(rotated)),
                1e-10);
    CHECK(scalar_curvature(rotated) == doctest::Approx(scalar_curvature(r)));
  }
}

TEST_CASE("full symmetric operator carries the trace direction last") {
  Rng rng(44);
  const auto r = random_curvature_tensor(rng, 4);
  const auto full = assemble_full_symmetric(r);
  const auto second = assemble_second_kind(r);
  CHECK(full.size() == 10);
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) CHECK(full(a, b) == doctest::Approx(second(a, b)));
  // R acting on the metric: sum_kl R_iklj delta_kl = -Ric_ij, so <I, R I>/n = -scal/n.
  CHECK(full(9, 9) == doctest::Approx(-scalar_curvature(r) / 4.0));
}

TEST_CASE("scalar curvature identities") {
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto report = scalar_curvature_checks(model_space_form(n, 1.0));
    CHECK(report.ok());
    CHECK(report.scalar == static_cast<double>(n * (n - 1)));
  }
  const auto product = scalar_curvature_checks(model_product_spheres(2, 2));
  CHECK(product.ok());
  CHECK(product.scalar == 4.0);
  const auto zero = scalar_curvature_checks(model_space_form(4, 0.0));
  CHECK(zero.ok());
  CHECK(zero.scalar == 0.0);

  Rng rng(9);
  for (std::size_t n = 2; n <= 7; ++n) CHECK(scalar_curvature_checks(random_curvature_tensor(rng, n)).ok());
}

TEST_CASE("spectra from external eigenvalues") {
  const auto s = make_spectrum(RealVector({3.0, 1.0, 2.0, 0.0, 0.0, 0.0}), OperatorKind::first_kind, 4);
  CHECK(s.eigenvalues[0] == 0.0);
  CHECK(s.eigenvalues[5] == 3.0);
  CHECK_THROWS_AS((void)make_spectrum(RealVector({1.0, 2.0}), OperatorKind::first_kind, 4), DomainError);
  CHECK(make_spectrum(RealVector(std::vector<double>(4, 1.0)), OperatorKind::kaehler, 2).eigenvalues.size() == 4);
}
