#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "config.hpp"
#include "gardinglab/classify.hpp"
#include "gardinglab/cones.hpp"
#include "gardinglab/curvature.hpp"
#include "gardinglab/errors.hpp"
#include "gardinglab/inclusion.hpp"
#include "gardinglab/io.hpp"
#include "report_json.hpp"

namespace gardinglab::cli {

namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) { return format_shortest(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_rows(std::ostream& out, const Rows& rows) {
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  for (const auto& [key, value] : rows) {
    out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
  }
}

std::string membership_word(const ConeMembership& m) {
  if (m.member_open) return "open member";
  if (m.member_closed) return "closed member only";
  return "not a member";
}

/// Reads a vector from a path, or from `in` when the path is "-". The Unicode
/// minus sign is accepted as '-'.
RealVector load_vector(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open file '" + path + "'", 0);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  const std::string minus = "\xE2\x88\x92";
  for (auto pos = text.find(minus); pos != std::string::npos; pos = text.find(minus, pos)) {
    text.replace(pos, minus.size(), "-");
  }
  return parse_real_vector(text);
}

OperatorKind parse_operator(const std::string& text) {
  if (text == "first") return OperatorKind::first_kind;
  if (text == "second") return OperatorKind::second_kind;
  if (text == "kaehler") return OperatorKind::kaehler;
  throw UsageError("operator must be first, second or kaehler, got '" + text + "'");
}

/// -0 prints as "-0"; spectra are reported with signed zeros folded.
std::vector<double> fold_zeros(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  for (double& x : out) x += 0.0;
  return out;
}

struct Session {
  RunConfig config;
  std::istream& in;
  std::ostream& out;
  std::ostream& err;

  [[nodiscard]] bool machine() const { return config.format == OutputFormat::machine; }
  void emit(const nlohmann::json& record) const { out << record.dump() << '\n'; }
};

// cone-test ------------------------------------------------------------------

struct ConeTestArgs {
  std::string file;
  std::optional<std::size_t> k;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::optional<double> m;
};

int cmd_cone_test(const Session& s, const ConeTestArgs& a) {
  if (a.m && (a.k || a.alpha || a.epsilon)) {
    throw UsageError("--m selects the positivity cone and excludes --k, --alpha and --epsilon");
  }
  if (a.alpha && a.epsilon) throw UsageError("--alpha and --epsilon are mutually exclusive");
  const RealVector v = load_vector(a.file, s.in);

  ConeMembership result;
  nlohmann::json record = {{"record", "cone_test"}, {"dimension", v.size()}};
  Rows rows = {{"dimension", num(v.size())}};
  if (a.m) {
    result = in_positivity_cone(v, *a.m, s.config.tol);
    record["cone"] = "positivity";
    record["m"] = *a.m;
    rows.emplace_back("cone", "m-positivity");
    rows.emplace_back("m", num(*a.m));
  } else {
    const std::size_t k = a.k.value_or(2);
    double alpha = a.alpha.value_or(0.0);
    if (a.epsilon) alpha = epsilon_to_params(*a.epsilon, v.size()).alpha;
    result = in_shifted_cone(v, k, ShiftParams(alpha, v.size()), s.config.tol);
    record["cone"] = "shifted_garding";
    record["k"] = k;
    record["alpha"] = alpha;
    rows.emplace_back("cone", "shifted Garding");
    rows.emplace_back("k", num(k));
    rows.emplace_back("alpha", num(alpha));
    if (a.epsilon) {
      record["epsilon"] = *a.epsilon;
      rows.emplace_back("epsilon", num(*a.epsilon));
    }
  }
  record["membership"] = to_json(result);
  record["tol"] = s.config.tol;

  const int code = result.member_open     ? kExitOk
                   : result.member_closed ? kExitClosedOnly
                                          : kExitNonMember;
  if (s.machine()) {
    s.emit(record);
  } else {
    rows.emplace_back("status", membership_word(result));
    rows.emplace_back("margin", num(result.margin));
    rows.emplace_back("binding", result.binding_constraint);
    rows.emplace_back("tol", num(s.config.tol));
    print_rows(s.out, rows);
  }
  return code;
}

// verify-inclusion -----------------------------------------------------------

struct VerifyArgs {
  std::size_t n = 0;
  std::optional<double> epsilon;
  std::optional<double> m;
  bool boundary_search = false;
};

int cmd_verify_inclusion(const Session& s, const VerifyArgs& a) {
  if (a.epsilon.has_value() == a.m.has_value()) {
    throw UsageError("give exactly one of --epsilon and --m");
  }
  const double epsilon = a.epsilon ? *a.epsilon : epsilon_for_target_m(*a.m, a.n);

  SamplingOptions sampling;
  sampling.samples = s.config.samples;
  sampling.seed = s.config.seed;
  sampling.sampler = s.config.sampler;
  sampling.tol = s.config.tol;
  sampling.threads = s.config.threads;
  const SamplingReport report = verify_inclusion_sampling(a.n, epsilon, sampling);
  bool passed = report.passed();

  std::optional<BoundarySearchReport> search;
  if (a.boundary_search) {
    BoundarySearchOptions options;
    options.restarts = s.config.restarts;
    options.seed = s.config.seed;
    options.tol = s.config.tol;
    options.threads = s.config.threads;
    search = boundary_search(a.n, epsilon, options);
    passed = passed && search->passed();
  }

  if (s.machine()) {
    s.emit(to_json(report));
    if (search) s.emit(to_json(*search));
  } else {
    Rows rows = {{"N", num(report.dimension)},
                 {"epsilon", num(report.epsilon)},
                 {"alpha", num(report.alpha)},
                 {"m", num(report.m)},
                 {"sampler", std::string(to_string(report.sampler))},
                 {"seed", std::to_string(report.seed)},
                 {"draws", num(report.draws)},
                 {"accepted", num(report.accepted)},
                 {"acceptance rate", num(report.acceptance_rate())},
                 {"min margin", report.min_margin ? num(*report.min_margin) : "n/a"},
                 {"violations", num(report.violations.size())}};
    if (report.draws == 0) rows.emplace_back("note", "no samples drawn; vacuous pass");
    if (search) {
      rows.emplace_back("search restarts", num(search->restarts));
      rows.emplace_back("search min c0", num(search->min_c0));
      rows.emplace_back("search minimizer", format_csv(search->minimizer));
      rows.emplace_back("search converged", yes_no(search->converged));
      if (search->rigid_m) {
        rows.emplace_back("rigid m", num(*search->rigid_m));
        rows.emplace_back("rigid deviation", num(search->rigid_deviation));
      }
      rows.emplace_back("search passed", yes_no(search->passed()));
    }
    rows.emplace_back("result", passed ? "pass" : "FAIL");
    print_rows(s.out, rows);
    const std::size_t shown = std::min(report.violations.size(), kMaxReportedViolations);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& v = report.violations[i];
      s.out << "violation draw=" << v.draw << " margin=" << num(v.margin) << " v=("
            << format_csv(v.vector) << ")\n";
    }
  }
  return passed ? kExitOk : 1;
}

// model-space ----------------------------------------------------------------

struct ModelArgs {
  std::string kind;
  std::string file;
  std::optional<std::size_t> n;
  double curvature = 1.0;
  std::optional<std::size_t> p;
  std::optional<std::size_t> q;
  std::string op = "first";
};

int cmd_model_space(const Session& s, const ModelArgs& a) {
  std::optional<CurvatureTensor> tensor;
  if (a.kind == "sphere") {
    if (!a.n) throw UsageError("sphere needs --n");
    tensor = model_space_form(*a.n, a.curvature);
  } else if (a.kind == "product") {
    if (!a.p || !a.q) throw UsageError("product needs --p and --q");
    tensor = model_product_spheres(*a.p, *a.q);
  } else if (a.kind == "tensor") {
    if (a.file.empty()) throw UsageError("tensor needs a component file");
    if (a.file == "-") {
      tensor = read_tensor_components(s.in);
    } else {
      tensor = read_tensor_components_file(a.file);
    }
  } else {
    throw UsageError("model kind must be sphere, product or tensor, got '" + a.kind + "'");
  }

  const OperatorKind kind = parse_operator(a.op);
  if (kind == OperatorKind::kaehler) {
    throw UsageError("model-space assembles the first and second kind operators only");
  }
  const OperatorMatrix matrix = kind == OperatorKind::first_kind ? assemble_first_kind(*tensor)
                                                                 : assemble_second_kind(*tensor);
  const Spectrum spectrum = eigen_spectrum(matrix);
  const std::vector<double> values = fold_zeros(spectrum.eigenvalues.entries());
  const ScalarCurvatureReport checks = scalar_curvature_checks(*tensor);

  if (s.machine()) {
    s.emit({{"record", "model_space"},
            {"kind", a.kind},
            {"operator", std::string(to_string(kind))},
            {"dimension", tensor->dimension()},
            {"spectrum", values},
            {"identities", to_json(checks)}});
  } else {
    s.out << format_csv(values) << '\n';
    s.out << "# scalar_curvature=" << num(checks.scalar)
          << " first_kind_identity=" << (checks.first_kind_identity ? "ok" : "FAIL")
          << " second_kind_identity=" << (checks.second_kind_identity ? "ok" : "FAIL")
          << " trace_identities=" << (checks.trace_identities ? "ok" : "FAIL") << '\n';
  }
  if (!checks.ok()) {
    s.err << "scalar curvature identity check failed\n";
    return kExitIdentityFailure;
  }
  return kExitOk;
}

// classify -------------------------------------------------------------------

struct ClassifyArgs {
  std::string file;
  std::size_t n = 0;
  std::string op;
  double epsilon = 0.0;
};

void print_classification(std::ostream& out, const ClassificationReport& r) {
  Rows rows = {{"operator", std::string(to_string(r.kind))},
               {"n", num(r.dimension)},
               {"N", num(r.size)},
               {"epsilon", num(r.epsilon)},
               {"alpha", num(r.alpha)},
               {"m", num(r.m)},
               {"hypothesis", membership_word(r.hypothesis) + " (margin " +
                                  num(r.hypothesis.margin) + ")"},
               {"m-positivity", membership_word(r.m_positivity) + " (margin " +
                                    num(r.m_positivity.margin) + ")"}};
  for (const auto& range : r.betti_zero_ranges) {
    rows.emplace_back("betti zero", "b_" + std::to_string(range.low) + " .. b_" +
                                        std::to_string(range.high));
  }
  if (r.verdicts.empty()) rows.emplace_back("verdict", "none");
  for (const auto& v : r.verdicts) {
    rows.emplace_back("verdict", std::string(to_string(v.verdict)) + " [" + v.rule + "]");
    rows.emplace_back("  basis", v.basis);
    for (const auto& c : v.checks) {
      rows.emplace_back("  check", c.description + ": " + num(c.lhs) + " " + c.relation + " " +
                                       num(c.rhs) + (c.holds() ? " (holds)" : " (FAILS)"));
    }
  }
  for (const auto& note : r.notes) rows.emplace_back("note", note);
  print_rows(out, rows);
}

int cmd_classify(const Session& s, const ClassifyArgs& a) {
  const OperatorKind kind = parse_operator(a.op);
  const RealVector values = load_vector(a.file, s.in);
  const std::size_t expected = operator_size(kind, a.n);
  if (values.size() != expected) {
    throw DataError("spectrum has " + std::to_string(values.size()) + " values; the " +
                    std::string(to_string(kind)) + " operator for n=" + std::to_string(a.n) +
                    " has " + std::to_string(expected));
  }
  const ClassificationReport report =
      classify(make_spectrum(values, kind, a.n), a.epsilon, s.config.tol);
  if (s.machine()) {
    s.emit(to_json(report));
  } else {
    print_classification(s.out, report);
  }
  return report.verdicts.empty() ? 1 : kExitOk;
}

// thresholds -----------------------------------------------------------------

struct ThresholdArgs {
  std::optional<int> n;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<int> kaehler_n;
};

int cmd_thresholds(const Session& s, const ThresholdArgs& a) {
  int low = 0;
  int high = 0;
  if (a.n) {
    if (a.n_min || a.n_max) throw UsageError("--n excludes --n-min and --n-max");
    low = high = *a.n;
  } else {
    if (!a.n_min || !a.n_max) throw UsageError("give --n or both --n-min and --n-max");
    low = *a.n_min;
    high = *a.n_max;
  }
  if (low < 3 || low > high) throw UsageError("need 3 <= n-min <= n-max");
  if (a.kaehler_n && low != high) throw UsageError("--kaehler-n applies to a single --n");

  std::vector<ThresholdTable> tables;
  for (int n = low; n <= high; ++n) tables.push_back(thresholds(n, a.kaehler_n));

  if (s.machine()) {
    for (const auto& t : tables) s.emit(to_json(t));
    return kExitOk;
  }
  const std::vector<std::string> header = {"n", "first_kind", "second_kind", "kaehler_n",
                                           "kaehler_cohomology", "kaehler_biholomorphic"};
  std::vector<std::vector<std::string>> cells = {header};
  for (const auto& t : tables) {
    std::string first = num(t.first_kind_space_form);
    if (ThresholdTable::vacuous(t.first_kind_space_form)) first += " (vacuous)";
    cells.push_back({std::to_string(t.n), first, num(t.second_kind_space_form),
                     std::to_string(t.kaehler_n), num(t.kaehler_cohomology),
                     num(t.kaehler_biholomorphic)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      s.out << row[c];
      if (c + 1 < row.size()) s.out << std::string(width[c] - row[c].size() + 2, ' ');
    }
    s.out << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, const std::optional<std::string>& config_path) {
  CLI::App app{"Shifted Garding cones, m-positivity and curvature operator spectra",
               "gardinglab"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> restarts;
  std::optional<unsigned> threads;
  std::optional<std::string> sampler;
  std::optional<std::string> format;
  app.add_option("--tol", tol, "membership tolerance");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--samples", samples, "number of sampled draws");
  app.add_option("--restarts", restarts, "boundary search restarts");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--sampler", sampler, "rejection or hit-and-run");
  app.add_option("--format", format, "human or machine");

  ConeTestArgs cone;
  auto* cone_cmd = app.add_subcommand("cone-test", "cone membership of a vector file");
  cone_cmd->add_option("file", cone.file, "vector file, '-' for stdin")->required();
  cone_cmd->add_option("--k", cone.k, "Garding cone order");
  cone_cmd->add_option("--alpha", cone.alpha, "shift coefficient");
  cone_cmd->add_option("--epsilon", cone.epsilon, "shift alpha = (1 - epsilon)/N");
  cone_cmd->add_option("--m", cone.m, "m-positivity cone index");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify-inclusion", "sample the cone inclusion");
  verify_cmd->add_option("--n", verify.n, "dimension N")->required();
  verify_cmd->add_option("--epsilon", verify.epsilon, "epsilon in (0, 1)");
  verify_cmd->add_option("--m", verify.m, "target m in (0, N - 1)");
  verify_cmd->add_flag("--boundary-search", verify.boundary_search,
                       "also minimize the partial sum over the cone boundary");

  ModelArgs model;
  auto* model_cmd = app.add_subcommand("model-space", "spectrum of a model curvature tensor");
  model_cmd->add_option("kind", model.kind, "sphere, product or tensor")->required();
  model_cmd->add_option("file", model.file, "component file for tensor");
  model_cmd->add_option("--n", model.n, "sphere dimension");
  model_cmd->add_option("--curvature", model.curvature, "sectional curvature");
  model_cmd->add_option("--p", model.p, "first product factor");
  model_cmd->add_option("--q", model.q, "second product factor");
  model_cmd->add_option("--operator", model.op, "first or second");

  ClassifyArgs cls;
  auto* classify_cmd = app.add_subcommand("classify", "classify a curvature operator spectrum");
  classify_cmd->add_option("file", cls.file, "spectrum file, '-' for stdin")->required();
  classify_cmd->add_option("--n", cls.n, "dimension (complex for kaehler)")->required();
  classify_cmd->add_option("--operator", cls.op, "first, second or kaehler")->required();
  classify_cmd->add_option("--epsilon", cls.epsilon, "epsilon in (0, 1)")->required();

  ThresholdArgs thr;
  auto* thresholds_cmd = app.add_subcommand("thresholds", "epsilon thresholds per dimension");
  thresholds_cmd->add_option("--n", thr.n, "single dimension");
  thresholds_cmd->add_option("--n-min", thr.n_min, "first dimension");
  thresholds_cmd->add_option("--n-max", thr.n_max, "last dimension");
  thresholds_cmd->add_option("--kaehler-n", thr.kaehler_n, "complex dimension of the Kaehler rows");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config;
    if (config_path && !config_path->empty()) config = load_config_file(*config_path, config);
    if (tol) config.tol = *tol;
    if (seed) config.seed = *seed;
    if (samples) config.samples = *samples;
    if (restarts) config.restarts = *restarts;
    if (threads) config.threads = *threads;
    if (sampler) config.sampler = parse_sampler(*sampler);
    if (format) config.format = parse_format(*format);
    config.validate();

    const Session session{config, in, out, err};
    if (cone_cmd->parsed()) return cmd_cone_test(session, cone);
    if (verify_cmd->parsed()) return cmd_verify_inclusion(session, verify);
    if (model_cmd->parsed()) return cmd_model_space(session, model);
    if (classify_cmd->parsed()) return cmd_classify(session, cls);
    if (thresholds_cmd->parsed()) return cmd_thresholds(session, thr);
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitDataError;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitSoftware;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSoftware;
  }
}

}  // namespace gardinglab::cli
