#include "gardinglab/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "gardinglab/errors.hpp"

namespace gardinglab {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

struct OrbitEntry {
  std::array<std::size_t, 4> index;
  double sign;
};

/// The eight index permutations generated by antisymmetry and pair symmetry.
std::array<OrbitEntry, 8> symmetry_orbit(std::size_t i, std::size_t j, std::size_t k,
                                         std::size_t l) {
  return {{{{i, j, k, l}, 1.0},
           {{j, i, k, l}, -1.0},
           {{i, j, l, k}, -1.0},
           {{j, i, l, k}, 1.0},
           {{k, l, i, j}, 1.0},
           {{l, k, i, j}, -1.0},
           {{k, l, j, i}, -1.0},
           {{l, k, j, i}, 1.0}}};
}

std::size_t flat(std::size_t n, const std::array<std::size_t, 4>& idx) {
  return ((idx[0] * n + idx[1]) * n + idx[2]) * n + idx[3];
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double x : values) m = std::max(m, std::abs(x));
  return m;
}

void validate_bianchi(std::size_t n, const std::vector<double>& data, double tol) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double cyclic = data[flat(n, {i, j, k, l})] + data[flat(n, {i, k, l, j})] +
                                data[flat(n, {i, l, j, k})];
          if (std::abs(cyclic) > tol) {
            throw ValidationError("first Bianchi identity fails at (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                  "," + std::to_string(l + 1) + ")");
          }
        }
}

}  // namespace

CurvatureTensor CurvatureTensor::from_dense(std::size_t n, std::vector<double> data) {
  if (n < 2) throw DomainError("curvature tensor dimension must be at least 2");
  if (data.size() != n * n * n * n) throw DomainError("dense tensor must have n^4 entries");
  for (double x : data) {
    if (!std::isfinite(x)) throw ValidationError("curvature tensor has non-finite entries");
  }
  const double tol = kSymmetryTolerance * std::max(1.0, max_abs(data));
  std::vector<double> symmetric(data.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double base = data[flat(n, {i, j, k, l})];
          double acc = 0.0;
          for (const auto& e : symmetry_orbit(i, j, k, l)) {
            const double image = e.sign * data[flat(n, e.index)];
            if (std::abs(image - base) > tol) {
              throw ValidationError("antisymmetry or pair symmetry fails at (" +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                    std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
            }
            acc += image;
          }
          symmetric[flat(n, {i, j, k, l})] = acc / 8.0;
        }
  validate_bianchi(n, symmetric, tol);
  return CurvatureTensor(n, std::move(symmetric));
}

CurvatureTensor CurvatureTensor::from_components(std::size_t n,
                                                 std::span<const TensorComponent> comps) {
  if (n < 2) throw DomainError("curvature tensor dimension must be at least 2");
  std::vector<double> data(n * n * n * n, 0.0);
  std::vector<bool> assigned(data.size(), false);
  double scale = 1.0;
  for (const auto& c : comps) scale = std::max(scale, std::abs(c.value));
  const double tol = kSymmetryTolerance * scale;

  for (const auto& c : comps) {
    if (c.i >= n || c.j >= n || c.k >= n || c.l >= n) {
      throw DomainError("component index out of range for n=" + std::to_string(n));
    }
    if (!std::isfinite(c.value)) throw ValidationError("component value is not finite");
    if ((c.i == c.j || c.k == c.l) && std::abs(c.value) > tol) {
      throw ValidationError("antisymmetry forces R_iikl = R_ijkk = 0");
    }
    for (const auto& e : symmetry_orbit(c.i, c.j, c.k, c.l)) {
      const std::size_t at = flat(n, e.index);
      const double value = e.sign * c.value;
      if (assigned[at] && std::abs(data[at] - value) > tol) {
        throw ValidationError("conflicting values for component (" + std::to_string(c.i + 1) +
                              "," + std::to_string(c.j + 1) + "," + std::to_string(c.k + 1) +
                              "," + std::to_string(c.l + 1) + ")");
      }
      data[at] = value;
      assigned[at] = true;
    }
  }
  return from_dense(n, std::move(data));
}

CurvatureTensor model_space_form(std::size_t n, double curvature) {
  if (n < 2) throw DomainError("space form dimension must be at least 2");
  std::vector<double> data(n * n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      data[flat(n, {i, j, i, j})] = curvature;
      data[flat(n, {i, j, j, i})] = -curvature;
    }
  return CurvatureTensor::from_dense(n, std::move(data));
}

CurvatureTensor model_product_spheres(std::size_t p, std::size_t q) {
  if (p < 2 || q < 2) throw DomainError("product factors must have dimension at least 2");
  const std::size_t n = p + q;
  std::vector<double> data(n * n * n * n, 0.0);
  auto same_factor = [p](std::size_t a, std::size_t b) { return (a < p) == (b < p); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !same_factor(i, j)) continue;
      data[flat(n, {i, j, i, j})] = 1.0;
      data[flat(n, {i, j, j, i})] = -1.0;
    }
  return CurvatureTensor::from_dense(n, std::move(data));
}

CurvatureTensor change_frame(const CurvatureTensor& r, std::span<const double> q) {
  const std::size_t n = r.dimension();
  if (q.size() != n * n) throw DomainError("frame change matrix must be n x n");
  // Contract one index at a time: four n^5 passes instead of one n^8 pass.
  std::vector<double> current(r.data().begin(), r.data().end());
  std::vector<double> next(current.size());
  for (std::size_t slot = 0; slot < 4; ++slot) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t idx = 0; idx < current.size(); ++idx) {
      std::array<std::size_t, 4> digits{};
      std::size_t rest = idx;
      for (std::size_t d = 4; d-- > 0;) {
        digits[d] = rest % n;
        rest /= n;
      }
      const std::size_t old_index = digits[slot];
      for (std::size_t a = 0; a < n; ++a) {
        digits[slot] = a;
        next[flat(n, digits)] += q[a * n + old_index] * current[idx];
      }
    }
    current.swap(next);
  }
  return CurvatureTensor::from_dense(n, std::move(current));
}

double scalar_curvature(const CurvatureTensor& r) noexcept {
  double total = 0.0;
  const std::size_t n = r.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) total += r(i, j, i, j);
  return total;
}

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::first_kind: return "first";
    case OperatorKind::second_kind: return "second";
    case OperatorKind::kaehler: return "kaehler";
    case OperatorKind::generic: return "generic";
  }
  return "unknown";
}

std::size_t operator_size(OperatorKind kind, std::size_t n) {
  switch (kind) {
    case OperatorKind::first_kind: return n * (n - 1) / 2;
    case OperatorKind::second_kind: return (n - 1) * (n + 2) / 2;
    case OperatorKind::kaehler: return n * n;
    case OperatorKind::generic: break;
  }
  throw DomainError("generic operators have no size formula");
}

OperatorMatrix::OperatorMatrix(std::size_t size, std::vector<double> entries, OperatorKind kind,
                               std::size_t dimension)
    : size_(size), entries_(std::move(entries)), kind_(kind), dimension_(dimension) {
  if (size_ == 0) throw DomainError("operator matrix must be non-empty");
  if (entries_.size() != size_ * size_) throw DomainError("operator matrix must be N x N");
  if (kind_ != OperatorKind::generic && operator_size(kind_, dimension_) != size_) {
    throw DomainError("operator size " + std::to_string(size_) + " does not match the " +
                      std::string(to_string(kind_)) + " size for n=" + std::to_string(dimension_));
  }
  for (double x : entries_) {
    if (!std::isfinite(x)) throw ValidationError("operator matrix has non-finite entries");
  }
  const double tol = kSymmetryTolerance * std::max(1.0, max_abs(entries_));
  for (std::size_t r = 0; r < size_; ++r)
    for (std::size_t c = r + 1; c < size_; ++c) {
      double& upper = entries_[r * size_ + c];
      double& lower = entries_[c * size_ + r];
      if (std::abs(upper - lower) > tol) {
        throw ValidationError("operator matrix is not symmetric at (" + std::to_string(r) + "," +
                              std::to_string(c) + ")");
      }
      upper = lower = 0.5 * (upper + lower);
    }
}

double OperatorMatrix::trace() const noexcept {
  double t = 0.0;
  for (std::size_t i = 0; i < size_; ++i) t += (*this)(i, i);
  return t;
}

double OperatorMatrix::frobenius_norm() const noexcept { return euclidean_norm(entries_); }

OperatorMatrix assemble_first_kind(const CurvatureTensor& r) {
  const std::size_t n = r.dimension();
  std::vector<std::array<std::size_t, 2>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  const std::size_t size = pairs.size();
  std::vector<double> entries(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      entries[a * size + b] = r(pairs[a][0], pairs[a][1], pairs[b][0], pairs[b][1]);
    }
  return OperatorMatrix(size, std::move(entries), OperatorKind::first_kind, n);
}

namespace {

/// Integer-valued symmetric matrix in sparse form plus its squared norm.
/// Keeping the basis unnormalized until the end makes entries of diagonal
/// operators exact.
struct SparseSymmetric {
  std::vector<std::array<std::size_t, 2>> index;
  std::vector<double> value;
  double norm_sq = 0.0;
};

std::vector<SparseSymmetric> symmetric_basis(std::size_t n, bool with_trace) {
  std::vector<SparseSymmetric> basis;
  for (std::size_t k = 1; k < n; ++k) {
    SparseSymmetric d;
    for (std::size_t i = 0; i < k; ++i) {
      d.index.push_back({i, i});
      d.value.push_back(1.0);
    }
    d.index.push_back({k, k});
    d.value.push_back(-static_cast<double>(k));
    d.norm_sq = static_cast<double>(k * (k + 1));
    basis.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      basis.push_back(SparseSymmetric{{{i, j}, {j, i}}, {1.0, 1.0}, 2.0});
    }
  if (with_trace) {
    SparseSymmetric t;
    for (std::size_t i = 0; i < n; ++i) {
      t.index.push_back({i, i});
      t.value.push_back(1.0);
    }
    t.norm_sq = static_cast<double>(n);
    basis.push_back(std::move(t));
  }
  return basis;
}

OperatorMatrix assemble_on_symmetric(const CurvatureTensor& r, bool with_trace) {
  const std::size_t n = r.dimension();
  const auto basis = symmetric_basis(n, with_trace);
  const std::size_t size = basis.size();
  std::vector<double> entries(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      // <u_a, Rbar(u_b)> with Rbar(h)_ij = sum_kl R_iklj h_kl.
      double acc = 0.0;
      for (std::size_t s = 0; s < basis[a].index.size(); ++s) {
        const auto [i, j] = basis[a].index[s];
        for (std::size_t t = 0; t < basis[b].index.size(); ++t) {
          const auto [k, l] = basis[b].index[t];
          acc += basis[a].value[s] * r(i, k, l, j) * basis[b].value[t];
        }
      }
      entries[a * size + b] = acc / std::sqrt(basis[a].norm_sq * basis[b].norm_sq);
    }
  if (with_trace) return OperatorMatrix(size, std::move(entries));
  return OperatorMatrix(size, std::move(entries), OperatorKind::second_kind, n);
}

}  // namespace

OperatorMatrix assemble_second_kind(const CurvatureTensor& r) {
  return assemble_on_symmetric(r, false);
}

OperatorMatrix assemble_full_symmetric(const CurvatureTensor& r) {
  return assemble_on_symmetric(r, true);
}

EigenDecomposition jacobi_eigen(const OperatorMatrix& input) {
  const std::size_t n = input.size();
  std::vector<double> a(input.entries().begin(), input.entries().end());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [n](std::vector<double>& m, std::size_t r, std::size_t c) -> double& {
    return m[r * n + c];
  };

  const double threshold = 1e-14 * input.frobenius_norm();
  EigenDecomposition out;
  bool converged = false;
  for (std::size_t sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    double off_sq = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off_sq += 2.0 * at(a, p, q) * at(a, p, q);
    if (std::sqrt(off_sq) <= threshold) {
      converged = true;
      out.sweeps = sweep;
      break;
    }
    if (sweep == kMaxJacobiSweeps) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(a, p, q);
        if (apq == 0.0) continue;
        const double app = at(a, p, p);
        const double aqq = at(a, q, q);
        // Negligible against both diagonal entries: drop it outright.
        if (sweep > 3 && std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) &&
            std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
          at(a, p, q) = at(a, q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(a, k, p);
          const double akq = at(a, k, q);
          at(a, k, p) = at(a, p, k) = c * akp - s * akq;
          at(a, k, q) = at(a, q, k) = s * akp + c * akq;
        }
        at(a, p, p) = app - t * apq;
        at(a, q, q) = aqq + t * apq;
        at(a, p, q) = at(a, q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = at(v, k, p);
          const double vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
  }
  if (!converged) {
    throw NumericError("Jacobi eigensolver did not converge in " +
                       std::to_string(kMaxJacobiSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a[order[c] * n + order[c]];
    for (std::size_t r = 0; r < n; ++r) out.vectors[r * n + c] = v[r * n + order[c]];
  }
  return out;
}

Spectrum eigen_spectrum(const OperatorMatrix& a) {
  const EigenDecomposition decomposition = jacobi_eigen(a);
  return Spectrum{SortedVector(RealVector(decomposition.values)), a.kind(), a.dimension()};
}

Spectrum make_spectrum(const RealVector& eigenvalues, OperatorKind kind, std::size_t dimension) {
  if (kind == OperatorKind::generic) throw DomainError("spectrum needs an operator kind");
  const std::size_t expected = operator_size(kind, dimension);
  if (eigenvalues.size() != expected) {
    throw DomainError("spectrum length " + std::to_string(eigenvalues.size()) + " but the " +
                      std::string(to_string(kind)) + " operator for n=" +
                      std::to_string(dimension) + " has " + std::to_string(expected) +
                      " eigenvalues");
  }
  return Spectrum{SortedVector(eigenvalues), kind, dimension};
}

namespace {

bool relatively_equal(double a, double b, double floor_scale) {
  return std::abs(a - b) <=
         kScalarIdentityTolerance * std::max({std::abs(a), std::abs(b)}) + 1e-12 * floor_scale;
}

}  // namespace

ScalarCurvatureReport scalar_curvature_checks(const CurvatureTensor& r) {
  const auto n = static_cast<double>(r.dimension());
  const OperatorMatrix first = assemble_first_kind(r);
  const OperatorMatrix second = assemble_second_kind(r);
  const auto first_values = jacobi_eigen(first).values;
  const auto second_values = jacobi_eigen(second).values;

  ScalarCurvatureReport report;
  report.dimension = r.dimension();
  report.scalar = scalar_curvature(r);
  report.first_kind_sum = std::accumulate(first_values.begin(), first_values.end(), 0.0);
  report.second_kind_sum = std::accumulate(second_values.begin(), second_values.end(), 0.0);
  report.first_kind_trace = first.trace();
  report.second_kind_trace = second.trace();

  const double scale = max_abs(r.data()) * n * n;
  const double second_factor = 2.0 * n / (n + 2.0);
  report.first_kind_identity = relatively_equal(report.scalar, 2.0 * report.first_kind_sum, scale);
  report.second_kind_identity =
      relatively_equal(report.scalar, second_factor * report.second_kind_sum, scale);
  report.trace_identities =
      relatively_equal(report.scalar, 2.0 * report.first_kind_trace, scale) &&
      relatively_equal(report.scalar, second_factor * report.second_kind_trace, scale);
  return report;
}

}  // namespace gardinglab
