#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gardinglab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitClosedOnly = 1;   ///< cone-test; classify: no verdict
inline constexpr int kExitNonMember = 2;
inline constexpr int kExitIdentityFailure = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitDataError = 65;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitConfig = 78;

/// Runs one command line (without the program name). `config_path` is the
/// value of GARDINGLAB_CONFIG, if set. File arguments equal to "-" read `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err, const std::optional<std::string>& config_path);

}  // namespace gardinglab::cli
