#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace puridyn {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or out-of-range argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The numerics went bad mid-run (norm drift, non-finite values,
/// unresolved state). CLI exit code 3.
class NumericalAbort : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure, always carries the offending path. CLI exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

struct ConfigDiagnostic {
  int line = 0;  // 1-based; 0 = whole-file problem (e.g. missing key)
  std::string message;
};

/// Config parsing/validation failure carrying *all* diagnostics, not just
/// the first. CLI exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigDiagnostic> diags)
      : Error(format(diags)), diagnostics_(std::move(diags)) {}

  const std::vector<ConfigDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string format(const std::vector<ConfigDiagnostic>& diags) {
    std::string out = "config error";
    for (const auto& d : diags) {
      out += "\n  ";
      if (d.line > 0) out += "line " + std::to_string(d.line) + ": ";
      out += d.message;
    }
    return out;
  }

  std::vector<ConfigDiagnostic> diagnostics_;
};

}  // namespace puridyn
