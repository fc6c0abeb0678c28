#include "gaplab/error.hpp"

namespace gaplab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::invalid_partition: return "invalid-partition";
    case ErrorKind::not_maximal: return "not-maximal";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::hypothesis_violation: return "hypothesis-violation";
    case ErrorKind::search_failure: return "search-failure";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace gaplab
