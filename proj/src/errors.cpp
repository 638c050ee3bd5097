#include "lpa/errors.hpp"

namespace lpa {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::io: return "io";
    case ErrorKind::schema: return "schema";
    case ErrorKind::invalid_algebra: return "invalid-algebra";
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::parse: return "parse";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

}  // namespace lpa
