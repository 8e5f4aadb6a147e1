#pragma once

// Subcommand implementations for the `orthores` tool. Kept in a library so
// the tests can drive the exact code path of the executable in-process.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthores/dense_matrix.hpp"

namespace orthores::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitRankDeficiency = 3,
  kExitIdentityViolation = 4,
  kExitCheckFailure = 5,
};

/// Echoed into every JSON document the tool writes.
struct RunManifest {
  std::string subcommand;
  std::optional<std::string> input;
  std::optional<std::vector<std::size_t>> selection;
  nlohmann::json variants = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string output = "-";
  std::string version;

  nlohmann::json to_json() const;
};

nlohmann::json to_json(const DenseMatrix& m);

std::string tool_version();

/// Seed from ORTHORES_SEED, or 0 when unset. Throws InputError if the
/// variable is set but not an unsigned integer.
std::uint64_t seed_from_environment();

/// Runs the tool. `args` excludes the program name. Output documents go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orthores::cli
