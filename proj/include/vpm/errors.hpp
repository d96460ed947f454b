// errors.hpp - exception taxonomy shared by the vpmatch core.
#pragma once

#include <stdexcept>
#include <string>

namespace vpm {

// Malformed input artifact (JSON syntax, missing keys, wrong shapes).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Instance/profile/price data violates a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A hard enumeration / state-space limit was exceeded.
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

// Iterative solver hit its safety cap; input invariants are suspect.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vpm
