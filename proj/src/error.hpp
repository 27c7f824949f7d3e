#pragma once

#include <stdexcept>
#include <string>

namespace gbw {

// Mirrors the status codes of the C API and the CLI exit codes.
enum class ErrorKind {
  Infeasible = 1,
  Parse = 2,
  Limit = 3,
  InvalidArgument = 4,
  Numerical = 5,
  Io = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace gbw
