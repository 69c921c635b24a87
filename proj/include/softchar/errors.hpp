#pragma once

#include <stdexcept>
#include <string>

namespace softchar {

/// Coarse failure categories; the CLI maps these onto process exit codes.
enum class ErrorKind {
  InvalidDeformation,  ///< non-positive or near-singular deformation state
  NumericalFailure,    ///< eigensolve / quadrature breakdown
  UsageError,          ///< API misuse (bad parameters, empty or mixed inputs)
  ConfigError,         ///< configuration file problems
  DataError,           ///< curve / CSV ingestion problems
  IoError,             ///< filesystem failures when emitting outputs
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace softchar
