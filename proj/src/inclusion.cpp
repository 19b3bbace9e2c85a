#include "gardinglab/inclusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "gardinglab/errors.hpp"
#include "gardinglab/parallel.hpp"

namespace gardinglab {

double m_epsilon_formula(double epsilon, std::size_t dimension) noexcept {
  const auto n = static_cast<double>(dimension);
  const double e2 = epsilon * epsilon;
  return n * (n - 1.0) * e2 / (1.0 + (n - 1.0) * e2);
}

EpsilonParams epsilon_to_params(double epsilon, std::size_t dimension) {
  if (dimension < 2) throw DomainError("epsilon parameters require N >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("epsilon=" + std::to_string(epsilon) + " outside (0, 1)");
  }
  const auto n = static_cast<double>(dimension);
  return EpsilonParams{epsilon, dimension, (1.0 - epsilon) / n,
                       m_epsilon_formula(epsilon, dimension)};
}

double epsilon_for_target_m(double m_target, std::size_t dimension) {
  if (dimension < 2) throw DomainError("epsilon parameters require N >= 2");
  const auto n = static_cast<double>(dimension);
  if (!(m_target > 0.0 && m_target < n - 1.0)) {
    throw DomainError("target m=" + std::to_string(m_target) + " outside (0, N-1) for N=" +
                      std::to_string(dimension));
  }
  return std::sqrt(m_target / ((n - 1.0) * (n - m_target)));
}

double sigma2_identity_residual(const RealVector& v, const EpsilonParams& p) {
  if (v.size() != p.dimension) {
    throw DomainError("vector length does not match N=" + std::to_string(p.dimension));
  }
  const auto n = static_cast<double>(p.dimension);
  const double lhs = 2.0 * elementary_symmetric(shift(v, p.shift()), 2);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : v) {
    sum += x;
    sum_sq += x * x;
  }
  const double coefficient = (1.0 + (n - 1.0) * p.epsilon * p.epsilon) / n;
  return lhs - (coefficient * sum * sum - sum_sq);
}

std::string_view to_string(DichotomyCase c) noexcept {
  switch (c) {
    case DichotomyCase::strict_positive: return "strict_positive";
    case DichotomyCase::boundary_rigid: return "boundary_rigid";
    case DichotomyCase::not_member: return "not_member";
    case DichotomyCase::zero_vector: return "zero_vector";
    case DichotomyCase::inconsistent: return "inconsistent";
  }
  return "unknown";
}

std::string_view to_string(Sampler s) noexcept {
  switch (s) {
    case Sampler::rejection: return "rejection";
    case Sampler::hit_and_run: return "hit_and_run";
  }
  return "unknown";
}

namespace {

/// Integer nearest to m when m is an integer up to tol (relative), else nullopt.
std::optional<std::size_t> integer_index(double m, double tol) {
  const double rounded = std::round(m);
  if (rounded >= 1.0 && std::abs(m - rounded) <= tol * std::max(1.0, m)) {
    return static_cast<std::size_t>(rounded);
  }
  return std::nullopt;
}

/// Max normalized distance of a sorted vector from (0,..,0,c,..,c) with `zeros`
/// leading zeros and c the tail mean. Returns infinity if c is not positive.
double rigid_shape_deviation(std::span<const double> sorted, std::size_t zeros, double scale) {
  if (zeros >= sorted.size()) return std::numeric_limits<double>::infinity();
  double tail_mean = 0.0;
  for (std::size_t i = zeros; i < sorted.size(); ++i) tail_mean += sorted[i];
  tail_mean /= static_cast<double>(sorted.size() - zeros);
  if (!(tail_mean > 0.0)) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < zeros; ++i) worst = std::max(worst, std::abs(sorted[i]));
  for (std::size_t i = zeros; i < sorted.size(); ++i) {
    worst = std::max(worst, std::abs(sorted[i] - tail_mean));
  }
  return worst / scale;
}

}  // namespace

DichotomyVerdict check_dichotomy(const RealVector& v, const EpsilonParams& p, double tol) {
  if (v.size() != p.dimension) {
    throw DomainError("vector length does not match N=" + std::to_string(p.dimension));
  }
  DichotomyVerdict verdict;
  verdict.membership = in_shifted_cone(v, 2, p.shift(), tol);
  if (!verdict.membership.member_closed) {
    verdict.kind = DichotomyCase::not_member;
    return verdict;
  }
  const double norm = euclidean_norm(v.entries());
  if (norm == 0.0) {
    verdict.kind = DichotomyCase::zero_vector;
    return verdict;
  }

  const SortedVector sorted(v);
  verdict.c0 = partial_sum_fractional(sorted, p.m);
  verdict.c0_margin = verdict.c0 / (p.m * norm);
  if (verdict.c0_margin > tol) {
    verdict.kind = DichotomyCase::strict_positive;
    return verdict;
  }

  // A member with vanishing partial sum sits within sqrt(slack) of the rigid
  // shape, where slack collects the sigma_2 tolerance and the residual c0.
  const auto n = static_cast<double>(p.dimension);
  const double slack = 2.0 * std::sqrt(n) * p.m * std::max(verdict.c0_margin, 0.0) +
                       n * (n - 1.0) * tol;
  const double shape_tol = 10.0 * std::sqrt(slack);

  const auto zeros = integer_index(p.m, tol);
  if (verdict.c0_margin >= -tol && zeros) {
    verdict.rigid_deviation = rigid_shape_deviation(sorted.entries(), *zeros, norm);
    if (verdict.rigid_deviation <= shape_tol) {
      verdict.kind = DichotomyCase::boundary_rigid;
      verdict.rigid_m = zeros;
      return verdict;
    }
  }
  verdict.kind = DichotomyCase::inconsistent;
  return verdict;
}

RealVector sharp_witness(std::size_t dimension, std::size_t m) {
  if (m < 1 || m + 1 > dimension) {
    throw DomainError("sharp witness requires 1 <= m <= N-1 (m=" + std::to_string(m) +
                      ", N=" + std::to_string(dimension) + ")");
  }
  std::vector<double> entries(dimension, 1.0);
  std::fill_n(entries.begin(), m, 0.0);
  return RealVector(std::move(entries));
}

namespace {

constexpr std::size_t kSampleBlock = 4096;

/// The slice {sum v = 1} of the closed shifted cone of order 2: the ball of
/// radius `radius` around (1/N, ..., 1/N) inside that hyperplane.
struct ConeSlice {
  std::size_t dimension;
  double center;
  double radius;

  explicit ConeSlice(const EpsilonParams& p) : dimension(p.dimension) {
    const auto n = static_cast<double>(p.dimension);
    center = 1.0 / n;
    // |v|^2 <= K (sum v)^2 with K = (1 + (N-1) eps^2) / N; minus |center|^2.
    const double k = (1.0 + (n - 1.0) * p.epsilon * p.epsilon) / n;
    radius = std::sqrt(std::max(k - 1.0 / n, 0.0));
  }

  void project(std::vector<double>& x) const {
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    const double correction = (1.0 - total) / static_cast<double>(dimension);
    double dist_sq = 0.0;
    for (double& xi : x) {
      xi += correction;
      dist_sq += (xi - center) * (xi - center);
    }
    const double dist = std::sqrt(dist_sq);
    if (dist > radius) {
      const double factor = radius / dist;
      for (double& xi : x) xi = center + (xi - center) * factor;
    }
  }
};

/// Unit vector orthogonal to (1, ..., 1).
void random_tangent(std::mt19937_64& rng, std::vector<double>& out) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& x : out) x = gauss(rng);
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
  for (double& x : out) x -= mean;
  const double norm = euclidean_norm(out);
  for (double& x : out) x /= norm;
}

struct BlockResult {
  std::size_t accepted = 0;
  std::optional<double> min_margin;
  std::vector<InclusionViolation> violations;
};

bool record_draw(const std::vector<double>& raw, std::size_t draw, const EpsilonParams& p,
                 double tol, BlockResult& out) {
  const RealVector v(raw);
  if (!in_shifted_cone(v, 2, p.shift(), tol).member_open) return false;
  ++out.accepted;
  const ConeMembership positivity = in_positivity_cone(v, p.m, tol);
  if (!out.min_margin || positivity.margin < *out.min_margin) out.min_margin = positivity.margin;
  if (!positivity.member_open) {
    out.violations.push_back(InclusionViolation{draw, positivity.margin, raw});
  }
  return true;
}

BlockResult rejection_block(const EpsilonParams& p, std::size_t begin, std::size_t end,
                            std::uint64_t seed, double tol) {
  BlockResult out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> raw(p.dimension);
  for (std::size_t draw = begin; draw < end; ++draw) {
    for (double& x : raw) x = gauss(rng);
    record_draw(raw, draw, p, tol, out);
  }
  return out;
}

BlockResult hit_and_run_block(const EpsilonParams& p, std::size_t begin, std::size_t end,
                              std::uint64_t seed, double tol) {
  BlockResult out;
  const ConeSlice slice(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);

  std::vector<double> state(p.dimension, slice.center);
  std::vector<double> direction(p.dimension);
  std::vector<double> raw(p.dimension);

  auto step = [&] {
    random_tangent(rng, direction);
    double b = 0.0;
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < p.dimension; ++i) {
      const double d = state[i] - slice.center;
      b += d * direction[i];
      dist_sq += d * d;
    }
    const double disc = std::sqrt(std::max(b * b - (dist_sq - slice.radius * slice.radius), 0.0));
    const double t = (-b - disc) + unit(rng) * (2.0 * disc);
    for (std::size_t i = 0; i < p.dimension; ++i) state[i] += t * direction[i];
  };

  const std::size_t burn_in = 200 + 20 * p.dimension;
  for (std::size_t i = 0; i < burn_in; ++i) step();
  // Chain points within tol of the boundary are closed but not open members;
  // the chain moves on and the draw is retried.
  constexpr int kMaxRetries = 64;
  for (std::size_t draw = begin; draw < end; ++draw) {
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
      step();
      const double scale = std::exp(log_scale(rng));
      for (std::size_t i = 0; i < p.dimension; ++i) raw[i] = scale * state[i];
      if (record_draw(raw, draw, p, tol, out)) break;
    }
  }
  return out;
}

}  // namespace

SamplingReport verify_inclusion_sampling(std::size_t dimension, double epsilon,
                                         const SamplingOptions& options) {
  const EpsilonParams p = epsilon_to_params(epsilon, dimension);
  SamplingReport report;
  report.dimension = dimension;
  report.epsilon = epsilon;
  report.alpha = p.alpha;
  report.m = p.m;
  report.sampler = options.sampler;
  report.seed = options.seed;
  report.draws = options.samples;

  const std::size_t blocks = (options.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockResult> results(blocks);
  run_tasks(blocks, options.threads, [&](std::size_t b) {
    const std::size_t begin = b * kSampleBlock;
    const std::size_t end = std::min(options.samples, begin + kSampleBlock);
    const std::uint64_t seed = sub_seed(options.seed, b);
    results[b] = options.sampler == Sampler::rejection
                     ? rejection_block(p, begin, end, seed, options.tol)
                     : hit_and_run_block(p, begin, end, seed, options.tol);
  });

  for (auto& block : results) {
    report.accepted += block.accepted;
    if (block.min_margin && (!report.min_margin || *block.min_margin < *report.min_margin)) {
      report.min_margin = block.min_margin;
    }
    for (auto& violation : block.violations) report.violations.push_back(std::move(violation));
  }
  return report;
}

bool BoundarySearchReport::passed() const noexcept {
  if (!converged || !(min_c0 >= -10.0 * tol)) return false;
  return !rigid_m || rigid_deviation <= kRigidMatchTolerance;
}

namespace {

struct RestartResult {
  double c0 = 0.0;
  std::vector<double> point;
  bool converged = false;
  std::size_t iterations = 0;
};

/// Supergradient of the concave m-partial sum: weight 1 on the floor(m)
/// smallest coordinates, m - floor(m) on the next one, 0 elsewhere.
void partial_sum_weights(const std::vector<double>& x, double m, std::vector<std::size_t>& order,
                         std::vector<double>& weights) {
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  const double whole = std::floor(m);
  const auto count = static_cast<std::size_t>(whole);
  std::fill(weights.begin(), weights.end(), 0.0);
  for (std::size_t r = 0; r < count && r < order.size(); ++r) weights[order[r]] = 1.0;
  if (count < order.size()) weights[order[count]] = m - whole;
}

RestartResult descend(const EpsilonParams& p, const ConeSlice& slice, std::uint64_t seed,
                      const BoundarySearchOptions& options) {
  constexpr double kStepTolerance = 1e-13;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> x(p.dimension);
  for (double& xi : x) xi = slice.center + slice.radius * gauss(rng);
  slice.project(x);

  std::vector<std::size_t> order(p.dimension);
  std::vector<double> weights(p.dimension);
  std::vector<double> next(p.dimension);
  RestartResult out;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    partial_sum_weights(x, p.m, order, weights);
    for (std::size_t i = 0; i < p.dimension; ++i) next[i] = x[i] - options.step * weights[i];
    slice.project(next);
    double moved = 0.0;
    for (std::size_t i = 0; i < p.dimension; ++i) moved = std::max(moved, std::abs(next[i] - x[i]));
    x.swap(next);
    out.iterations = it + 1;
    if (moved <= kStepTolerance) {
      out.converged = true;
      break;
    }
  }
  out.c0 = partial_sum_fractional(SortedVector(RealVector(x)), p.m);
  out.point = std::move(x);
  return out;
}

}  // namespace

BoundarySearchReport boundary_search(std::size_t dimension, double epsilon,
                                     const BoundarySearchOptions& options) {
  if (options.restarts < 1) throw DomainError("boundary search requires at least one restart");
  if (!(options.step > 0.0)) throw DomainError("boundary search step must be positive");
  const EpsilonParams p = epsilon_to_params(epsilon, dimension);
  const ConeSlice slice(p);

  std::vector<RestartResult> results(options.restarts);
  run_tasks(options.restarts, options.threads, [&](std::size_t r) {
    results[r] = descend(p, slice, sub_seed(options.seed, r), options);
  });

  BoundarySearchReport report;
  report.dimension = dimension;
  report.epsilon = epsilon;
  report.m = p.m;
  report.seed = options.seed;
  report.restarts = options.restarts;
  report.tol = options.tol;
  report.converged = true;
  std::size_t best = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    report.converged = report.converged && results[r].converged;
    report.iterations = std::max(report.iterations, results[r].iterations);
    if (results[r].c0 < results[best].c0) best = r;
  }
  report.min_c0 = results[best].c0;
  const SortedVector sorted{RealVector(results[best].point)};
  report.minimizer.assign(sorted.entries().begin(), sorted.entries().end());

  report.rigid_m = integer_index(p.m, options.tol);
  if (report.rigid_m) {
    report.rigid_deviation = rigid_shape_deviation(sorted.entries(), *report.rigid_m, 1.0);
  }
  return report;
}

}  // namespace gardinglab
