#pragma once

#include <stdexcept>
#include <string>

namespace csw {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// File access or read/write failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (bad JSON line, bad embedding header, bad config).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A pluggable backend (translator, generator, encoder, remote model) failed.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or precondition violation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace csw
