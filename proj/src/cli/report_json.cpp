#include "report_json.hpp"

#include <algorithm>
#include <string>

namespace gardinglab::cli {

using nlohmann::json;

json to_json(const ConeMembership& m) {
  return {{"member_open", m.member_open},
          {"member_closed", m.member_closed},
          {"margin", m.margin},
          {"binding_constraint", m.binding_constraint}};
}

json to_json(const SamplingReport& r) {
  json violations = json::array();
  const std::size_t shown = std::min(r.violations.size(), kMaxReportedViolations);
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& v = r.violations[i];
    violations.push_back({{"draw", v.draw}, {"margin", v.margin}, {"vector", v.vector}});
  }
  json j = {{"record", "inclusion_sampling"},
            {"dimension", r.dimension},
            {"epsilon", r.epsilon},
            {"alpha", r.alpha},
            {"m", r.m},
            {"sampler", std::string(to_string(r.sampler))},
            {"seed", r.seed},
            {"draws", r.draws},
            {"accepted", r.accepted},
            {"acceptance_rate", r.acceptance_rate()},
            {"min_margin", nullptr},
            {"violation_count", r.violations.size()},
            {"violations", violations},
            {"passed", r.passed()}};
  if (r.min_margin) j["min_margin"] = *r.min_margin;
  if (r.draws == 0) j["note"] = "no samples drawn; vacuous pass";
  return j;
}

json to_json(const BoundarySearchReport& r) {
  json j = {{"record", "boundary_search"},
            {"dimension", r.dimension},
            {"epsilon", r.epsilon},
            {"m", r.m},
            {"seed", r.seed},
            {"restarts", r.restarts},
            {"min_c0", r.min_c0},
            {"minimizer", r.minimizer},
            {"converged", r.converged},
            {"iterations", r.iterations},
            {"rigid_m", nullptr},
            {"rigid_deviation", nullptr},
            {"tol", r.tol},
            {"passed", r.passed()}};
  if (r.rigid_m) {
    j["rigid_m"] = *r.rigid_m;
    j["rigid_deviation"] = r.rigid_deviation;
  }
  return j;
}

json to_json(const ScalarCurvatureReport& r) {
  return {{"dimension", r.dimension},
          {"scalar_curvature", r.scalar},
          {"first_kind_sum", r.first_kind_sum},
          {"second_kind_sum", r.second_kind_sum},
          {"first_kind_trace", r.first_kind_trace},
          {"second_kind_trace", r.second_kind_trace},
          {"first_kind_identity", r.first_kind_identity},
          {"second_kind_identity", r.second_kind_identity},
          {"trace_identities", r.trace_identities},
          {"ok", r.ok()}};
}

json to_json(const ThresholdTable& t) {
  return {{"record", "thresholds"},
          {"n", t.n},
          {"kaehler_n", t.kaehler_n},
          {"first_kind_space_form", t.first_kind_space_form},
          {"first_kind_space_form_vacuous", ThresholdTable::vacuous(t.first_kind_space_form)},
          {"second_kind_space_form", t.second_kind_space_form},
          {"kaehler_cohomology", t.kaehler_cohomology},
          {"kaehler_biholomorphic", t.kaehler_biholomorphic}};
}

json to_json(const ClassificationReport& r) {
  json ranges = json::array();
  for (const auto& range : r.betti_zero_ranges) ranges.push_back({range.low, range.high});
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json checks = json::array();
    for (const auto& c : v.checks) {
      checks.push_back({{"description", c.description},
                        {"lhs", c.lhs},
                        {"relation", c.relation},
                        {"rhs", c.rhs},
                        {"holds", c.holds()}});
    }
    verdicts.push_back({{"verdict", std::string(to_string(v.verdict))},
                        {"rule", v.rule},
                        {"basis", v.basis},
                        {"checks", checks}});
  }
  return {{"record", "classification"},
          {"operator", std::string(to_string(r.kind))},
          {"dimension", r.dimension},
          {"size", r.size},
          {"epsilon", r.epsilon},
          {"alpha", r.alpha},
          {"m", r.m},
          {"hypothesis", to_json(r.hypothesis)},
          {"m_positivity", to_json(r.m_positivity)},
          {"betti_zero_ranges", ranges},
          {"verdicts", verdicts},
          {"notes", r.notes}};
}

}  // namespace gardinglab::cli
