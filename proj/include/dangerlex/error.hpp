#pragma once

#include <stdexcept>
#include <string>

namespace dangerlex {

// Exception categories map one-to-one onto CLI exit codes.
enum class ExitCode : int { ok = 0, usage = 1, data = 2, external = 3 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::data; }
};

/// Malformed input files, schema violations, contract violations on data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Bad flags, missing files named in a configuration.
class UsageError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::usage; }
};

/// Anything that fails because of the knowledge-graph service or its cache.
class ExternalServiceError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::external; }
};

/// Network failure against a live endpoint. Retrying may succeed.
class NetworkError : public ExternalServiceError {
 public:
  using ExternalServiceError::ExternalServiceError;
};

/// Cache-only mode was asked for a word it has never seen.
class CacheMissError : public ExternalServiceError {
 public:
  using ExternalServiceError::ExternalServiceError;
};

}  // namespace dangerlex
