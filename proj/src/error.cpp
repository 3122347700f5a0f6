#include "affekt/error.hpp"

namespace affekt {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::contract: return "contract violation";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::schema: return "schema error";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::format: return "format error";
    case ErrorKind::io: return "I/O error";
    case ErrorKind::not_found: return "not found";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::unprocessable: return "unprocessable";
  }
  return "error";
}

}  // namespace affekt
