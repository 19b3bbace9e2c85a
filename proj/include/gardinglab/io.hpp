#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gardinglab/curvature.hpp"
#include "gardinglab/symfun.hpp"

namespace gardinglab {

/// Reads every real number in the stream. Separators are commas, whitespace,
/// parentheses and brackets; '#' starts a comment running to end of line.
/// Throws ParseError with the 1-based line of the first bad token, or line 0
/// when the input holds no numbers.
[[nodiscard]] RealVector read_real_vector(std::istream& in);
[[nodiscard]] RealVector parse_real_vector(const std::string& text);
[[nodiscard]] RealVector read_real_vector_file(const std::string& path);

/// Shortest decimal that reads back to the same double.
[[nodiscard]] std::string format_shortest(double x);

/// Comma-separated shortest representations, no trailing newline.
[[nodiscard]] std::string format_csv(std::span<const double> values);

/// Tensor component list: one "i j k l value" per line with 1-based indices.
/// A "dimension N" line fixes n; otherwise n is the largest index seen.
/// Components are expanded over their symmetry orbit.
[[nodiscard]] CurvatureTensor read_tensor_components(std::istream& in);
[[nodiscard]] CurvatureTensor read_tensor_components_file(const std::string& path);

}  // namespace gardinglab
