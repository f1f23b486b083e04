#pragma once

#include <stdexcept>
#include <string>

namespace ch6 {

// Error taxonomy used across the library. The C API maps these onto integer
// error codes and the CLI maps them onto process exit codes.

// Bad user-facing configuration: unknown keys, unparsable values, violated
// parameter constraints. Messages name the offending key or argument.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Mathematically invalid request on otherwise valid objects, e.g. a negative
// Sobolev index on a field with nonzero mean under the strict policy.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite state detected during time stepping.
class BlowupError : public std::runtime_error {
public:
  BlowupError(const std::string& what, double t, double last_max_abs)
      : std::runtime_error(what), t_(t), last_max_abs_(last_max_abs) {}
  double time() const { return t_; }
  double last_max_abs() const { return last_max_abs_; }

private:
  double t_;
  double last_max_abs_;
};

}  // namespace ch6
