#pragma once

#include <stdexcept>
#include <string>

namespace affekt {

// Error categories map onto HTTP status classes and CLI exit codes.
enum class ErrorKind {
  contract,     // caller broke a precondition
  domain,       // value outside its admissible range
  schema,       // structurally valid input missing or mistyping a field
  parse,        // malformed text (JSON, TSV, KB lines)
  format,       // a file that is readable but clearly the wrong kind
  io,
  not_found,
  conflict,     // write disagrees with already stored state
  unprocessable // well-formed but semantically unusable (no lexical content, unknown reference)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Offending field or identifier, when the error is about one.
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace affekt
