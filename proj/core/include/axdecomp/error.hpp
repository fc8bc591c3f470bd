#pragma once

#include <stdexcept>
#include <string>

namespace axd {

/// Base of every exception raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration; detected before any numerical work.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed, missing or unusable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a valid result.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace axd
