#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lfa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular or non-rationally-related lattices, failed sublattice relations.
class LatticeError : public Error {
 public:
  using Error::Error;
};

/// Operators whose crystals or multiplier shapes do not fit together.
class IncompatibleError : public Error {
 public:
  using Error::Error;
};

/// Syntax, binding and shape errors of composition expressions.
class ExpressionError : public Error {
 public:
  ExpressionError(const std::string& what, std::size_t offset = npos,
                  std::vector<std::string> expected = {})
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Byte offset into the expression text, or npos for non-syntax errors.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Malformed operator files.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfa
