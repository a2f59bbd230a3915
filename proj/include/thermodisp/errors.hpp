#pragma once

#include <stdexcept>
#include <string>

namespace thermodisp {

/// Malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string key = {}, int line = 0)
      : std::runtime_error(message), key_(std::move(key)), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// A numeric precondition of an analysis step does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thermodisp
