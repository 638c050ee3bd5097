#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

// Each kind maps to a distinct CLI exit code.
enum class ErrorKind {
  usage = 2,
  io = 3,
  schema = 4,
  invalid_algebra = 5,
  dimension = 6,
  unknown_name = 7,
  parse = 8,
  internal = 9,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorKind::dimension, what) {}
};

}  // namespace lpa
