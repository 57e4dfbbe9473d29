#pragma once

#include <stdexcept>
#include <string>

namespace cobtree {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of an operation (bad index, height, level).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A named entity (layout alias, spec string) could not be resolved.
class LookupError : public Error {
 public:
  using Error::Error;
};

// A layout could not be built from the given spec.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A cache configuration or config file is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A request exceeds the resources the library is willing to use.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace cobtree
