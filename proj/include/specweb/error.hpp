#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace specweb {

enum class ErrorKind {
  UnrecoverableMarkup,
  InvalidEncoding,
  MalformedInput,
  SchemaViolation,
  InvalidTree,
  EmptyNumber,
  EmptyHeadings,
  EmptyReport,
  IoFailure,
  InvalidConfig,
};

std::string_view error_kind_name(ErrorKind kind);

/// Error raised by every stage of the pipeline. `line` is the 1-based line
/// of the offending input (0 when no source position applies).
class DocError : public std::runtime_error {
public:
  DocError(ErrorKind kind, std::string message, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

private:
  ErrorKind kind_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace specweb
