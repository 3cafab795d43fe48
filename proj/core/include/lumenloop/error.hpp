#pragma once

#include <stdexcept>
#include <string>

namespace lumenloop {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed scenario document (bad JSON, wrong types, unknown keys).
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Well-formed document that violates a scenario invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// A controller faulted or produced non-finite output during a run.
class ControllerError : public Error {
 public:
  ControllerError(int tick, int pole_id, const std::string& what)
      : Error("tick " + std::to_string(tick) + ", pole " + std::to_string(pole_id) + ": " + what),
        tick_(tick),
        pole_id_(pole_id) {}
  int tick() const noexcept { return tick_; }
  int pole_id() const noexcept { return pole_id_; }

 private:
  int tick_;
  int pole_id_;
};

class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lumenloop
