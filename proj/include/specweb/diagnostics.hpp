#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace specweb {

enum class Severity { Note, Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::size_t line = 0;  // line in the flat input, 0 if unknown
  std::string message;
};

/// Collected, non-fatal findings of a pipeline stage.
class Diagnostics {
public:
  void note(std::size_t line, std::string message);
  void warn(std::size_t line, std::string message);
  void error(std::size_t line, std::string message);

  const std::vector<Diagnostic>& items() const noexcept { return items_; }
  std::size_t count(Severity severity) const;
  bool empty() const noexcept { return items_.empty(); }
  void append(const Diagnostics& other);

  /// One diagnostic per line, formatted `<source>:<line>: <severity>: <message>`.
  std::string format(const std::string& source) const;

private:
  std::vector<Diagnostic> items_;
};

}  // namespace specweb
