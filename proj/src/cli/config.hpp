#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gardinglab/inclusion.hpp"

namespace gardinglab::cli {

enum class OutputFormat { human, machine };

[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;
[[nodiscard]] OutputFormat parse_format(std::string_view text);
[[nodiscard]] Sampler parse_sampler(std::string_view text);

/// Settings shared by every subcommand.
struct RunConfig {
  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  std::size_t restarts = 32;
  unsigned threads = 1;
  Sampler sampler = Sampler::rejection;
  OutputFormat format = OutputFormat::human;

  /// Throws ConfigError unless tol > 0, restarts >= 1 and threads >= 1.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Overlays the keys of a JSON object file onto `base`. Known keys: tol, seed,
/// samples, restarts, threads, sampler, format. Unknown keys are rejected.
[[nodiscard]] RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace gardinglab::cli
