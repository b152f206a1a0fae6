#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgrp {

/// Malformed user input: unknown symbols, bad syntax, schema violations.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::size_t position = npos)
      : std::runtime_error(what), position_(position) {}

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  /// Zero-based character offset of the error, or npos if not positional.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A configured resource cap (tower level, table length, search size) was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction violates its mathematical preconditions
/// (non-primitive root, map that is not an isomorphism, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qgrp
