#include "logcvx/errors.hpp"

#include <utility>

namespace logcvx {

NonFiniteError::NonFiniteError(const std::string& what, double x) : Error(what), x_(x) {}

PoleError::PoleError(const std::string& what, std::optional<long> k) : Error(what), k_(k) {}

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : Error(message), offset_(offset), expected_(std::move(expected)) {}

namespace {
std::string join_names(const std::vector<std::string>& names) {
  std::string out = "unbound parameter(s):";
  for (const auto& n : names) out += " " + n;
  return out;
}
}  // namespace

UnboundParameter::UnboundParameter(std::vector<std::string> names)
    : Error(join_names(names)), names_(std::move(names)) {}

}  // namespace logcvx
