#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaplab {

enum class ErrorKind {
  invalid_argument,
  invalid_partition,
  not_maximal,
  unsupported,
  precondition_violation,
  hypothesis_violation,
  search_failure,
  parse_error,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gaplab
