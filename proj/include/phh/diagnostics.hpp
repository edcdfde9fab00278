#pragma once

#include <string>
#include <vector>

namespace phh {

enum class Severity { Warning, Error };

// Machine-readable problem report. `location` names a field ("antes"), an
// action ("actions[7]"), or is empty for document-level problems.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string location;
  std::string message;
};

// How the parser reacts to violations: Strict flags them as errors, Lenient
// downgrades recoverable ones to warnings and keeps going (the offending
// field or action is ignored).
enum class ParsePolicy { Strict, Lenient };

// How the replay engine reacts to rule transgressions. Strict rejects the
// action, Warn records a diagnostic and proceeds, Silent just proceeds.
enum class Strictness { Strict, Warn, Silent };

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Error) return true;
  return false;
}

inline bool has_warnings(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::Warning) return true;
  return false;
}

inline void add_diag(std::vector<Diagnostic>& out, Severity sev, std::string code,
                     std::string location, std::string message) {
  out.push_back({sev, std::move(code), std::move(location), std::move(message)});
}

inline std::string to_string(const Diagnostic& d) {
  std::string s = d.severity == Severity::Error ? "error" : "warning";
  s += ": ";
  s += d.code;
  if (!d.location.empty()) {
    s += " at ";
    s += d.location;
  }
  if (!d.message.empty()) {
    s += ": ";
    s += d.message;
  }
  return s;
}

}  // namespace phh
