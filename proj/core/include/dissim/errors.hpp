#pragma once

#include <stdexcept>
#include <string>

namespace dissim {

/// Bad caller input: wrong dimensions, non-Hermitian matrices, invalid ranges.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computed quantity violated a tolerance it was supposed to satisfy.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem problems while emitting results.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dissim
