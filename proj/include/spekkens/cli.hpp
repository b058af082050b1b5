#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spekkens::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int { kPass = 0, kNegative = 1, kUsage = 2, kGuard = 3 };

struct RunConfig {
  std::optional<int> d;
  std::optional<int> n;
  std::optional<std::string> spec;
  std::uint64_t seed = 0;
  std::string format = "json";
  double tolerance = 1e-9;
  /// Cap on phase-space points d^{2n} for exhaustive commands.
  std::uint64_t guard = 1u << 12;

  /// Throws InvalidInput when a field is outside its hard cap.
  void validate() const;
  static RunConfig from_json_text(const std::string& text);
};

/// Runs one command; `args` excludes the program name. The report goes to
/// `out`, diagnostics to `err`. SPEKKENS_OUT_DIR, when set, also receives
/// the JSON report as <command>.json.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spekkens::cli
