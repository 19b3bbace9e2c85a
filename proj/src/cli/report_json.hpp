#pragma once

#include <json.hpp>

#include "gardinglab/classify.hpp"
#include "gardinglab/cones.hpp"
#include "gardinglab/curvature.hpp"
#include "gardinglab/inclusion.hpp"

namespace gardinglab::cli {

/// At most this many violating vectors are written into a sampling record.
inline constexpr std::size_t kMaxReportedViolations = 10;

[[nodiscard]] nlohmann::json to_json(const ConeMembership& m);
[[nodiscard]] nlohmann::json to_json(const SamplingReport& r);
[[nodiscard]] nlohmann::json to_json(const BoundarySearchReport& r);
[[nodiscard]] nlohmann::json to_json(const ScalarCurvatureReport& r);
[[nodiscard]] nlohmann::json to_json(const ThresholdTable& t);
[[nodiscard]] nlohmann::json to_json(const ClassificationReport& r);

}  // namespace gardinglab::cli
