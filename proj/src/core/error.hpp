#pragma once

#include <stdexcept>
#include <string>

namespace fvgc {

enum class ErrorKind {
  Io,               // file missing/unreadable/unwritable
  Validation,       // malformed or invariant-violating input
  Numeric,          // divergence, ambiguity, tolerance failure
  InvalidArgument,  // bad API usage
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace fvgc
