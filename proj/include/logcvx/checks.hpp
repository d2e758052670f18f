#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace logcvx {

// The reproduction suite: numbered criteria, each tagged so a subset can be
// selected from the command line.

struct CheckOptions {
  double tol = 1e-8;  // quadrature and product tolerance
  std::uint64_t seed = 0;
  std::optional<std::string> only;  // run criteria with this tag
};

struct CheckOutcome {
  int id = 0;
  std::string tag;
  std::string name;
  bool passed = false;
  std::string detail;  // measured vs expected, or the error that stopped the check
  double seconds = 0.0;
};

std::vector<std::string> check_tags();

std::vector<CheckOutcome> run_checks(const CheckOptions& options);

/// Deterministic summary (no timings).
nlohmann::json to_json(const std::vector<CheckOutcome>& outcomes);

/// Expressions used by the parser round-trip criterion.
const std::vector<std::string>& parser_corpus();

struct MalformedCase {
  std::string src;
  std::size_t offset;
};
const std::vector<MalformedCase>& malformed_corpus();

}  // namespace logcvx
