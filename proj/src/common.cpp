#include "specweb/diagnostics.hpp"
#include "specweb/error.hpp"

#include <algorithm>
#include <sstream>

namespace specweb {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnrecoverableMarkup: return "UnrecoverableMarkup";
    case ErrorKind::InvalidEncoding: return "InvalidEncoding";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::InvalidTree: return "InvalidTree";
    case ErrorKind::EmptyNumber: return "EmptyNumber";
    case ErrorKind::EmptyHeadings: return "EmptyHeadings";
    case ErrorKind::EmptyReport: return "EmptyReport";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorKind kind, const std::string& message, std::size_t line) {
  std::string out(error_kind_name(kind));
  if (line != 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}
}  // namespace

DocError::DocError(ErrorKind kind, std::string message, std::size_t line)
    : std::runtime_error(compose(kind, message, line)),
      kind_(kind),
      line_(line),
      detail_(std::move(message)) {}

void Diagnostics::note(std::size_t line, std::string message) {
  items_.push_back({Severity::Note, line, std::move(message)});
}

void Diagnostics::warn(std::size_t line, std::string message) {
  items_.push_back({Severity::Warning, line, std::move(message)});
}

void Diagnostics::error(std::size_t line, std::string message) {
  items_.push_back({Severity::Error, line, std::move(message)});
}

std::size_t Diagnostics::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(
      items_.begin(), items_.end(), [&](const Diagnostic& d) { return d.severity == severity; }));
}

void Diagnostics::append(const Diagnostics& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::string Diagnostics::format(const std::string& source) const {
  std::ostringstream out;
  for (const auto& d : items_) {
    out << source << ':' << d.line << ": ";
    switch (d.severity) {
      case Severity::Note: out << "note"; break;
      case Severity::Warning: out << "warning"; break;
      case Severity::Error: out << "error"; break;
    }
    out << ": " << d.message << '\n';
  }
  return out.str();
}

}  // namespace specweb
