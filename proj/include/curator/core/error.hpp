#pragma once

#include <stdexcept>
#include <string>

namespace curator {

enum class ErrorKind {
  InvalidArgument,
  Io,
  Schema,
  NotFound,
  InvalidState,
  Decode,
  Stream,
};

// Library-level failure. The CLI maps kinds onto exit codes: validation
// kinds exit 1, I/O kinds exit 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string& msg) {
  return Error(ErrorKind::InvalidArgument, msg);
}
inline Error io_error(const std::string& msg) {
  return Error(ErrorKind::Io, msg);
}
inline Error schema_error(const std::string& msg) {
  return Error(ErrorKind::Schema, msg);
}
inline Error not_found(const std::string& msg) {
  return Error(ErrorKind::NotFound, msg);
}
inline Error invalid_state(const std::string& msg) {
  return Error(ErrorKind::InvalidState, msg);
}

}  // namespace curator
