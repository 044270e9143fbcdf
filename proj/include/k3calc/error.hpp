#pragma once

#include <stdexcept>
#include <string>

namespace k3calc {

enum class ErrorCode {
  invalid_argument,
  unknown_id,
  not_symmetric,
  disconnected,
  shape_mismatch,
  not_contractible,
  unsupported,
  invariant_violation,
  parse_error,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can tell rejected input from broken invariants.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace k3calc
