#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tcert/real.hpp"

namespace tcert::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUndetermined = 2;
inline constexpr int kExitUsage = 64;

struct Truncations {
  long expand = 100;
  long hecke = 200;
  long identity = 30;
  long aux = 0;  // 0 = automatic
};

struct RunConfig {
  mpfr_prec_t precision = kDefaultPrecision;
  std::uint64_t sieve_limit = 1000000;
  Truncations trunc;
  std::string constants_path;
  std::string output_path;  // empty = stdout

  /// Throws Error(InvalidArgument) on an out-of-range field.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Constants file shipped next to the sources (or the install prefix).
std::string default_constants_path();

/// Runs one command line; reports go to `out` (or the configured file), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcert::cli
