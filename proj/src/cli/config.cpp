#include "config.hpp"

#include <fstream>
#include <json.hpp>

namespace gardinglab::cli {

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::machine ? "machine" : "human";
}

OutputFormat parse_format(std::string_view text) {
  if (text == "human") return OutputFormat::human;
  if (text == "machine") return OutputFormat::machine;
  throw ConfigError("format must be human or machine, got '" + std::string(text) + "'");
}

Sampler parse_sampler(std::string_view text) {
  if (text == "rejection") return Sampler::rejection;
  if (text == "hit-and-run" || text == "hit_and_run") return Sampler::hit_and_run;
  throw ConfigError("sampler must be rejection or hit-and-run, got '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");

  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "tol") {
        base.tol = value.get<double>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "samples") {
        if (value.get<std::int64_t>() < 0) throw ConfigError("samples must be >= 0");
        base.samples = value.get<std::size_t>();
      } else if (key == "restarts") {
        base.restarts = value.get<std::size_t>();
      } else if (key == "threads") {
        base.threads = value.get<unsigned>();
      } else if (key == "sampler") {
        base.sampler = parse_sampler(value.get<std::string>());
      } else if (key == "format") {
        base.format = parse_format(value.get<std::string>());
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
  base.validate();
  return base;
}

}  // namespace gardinglab::cli
