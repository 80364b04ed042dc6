#pragma once

#include <stdexcept>
#include <string>

namespace agealg {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad subsets, capacity violations, malformed JSON, bad parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search bound (fatness level, generator degree) was exhausted before stabilizing.
class UndeterminedError : public Error {
 public:
  using Error::Error;
};

/// Two computations that must agree did not. Always indicates a bug or a violated lemma.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A series could not be fitted by a rational fraction with the requested denominator.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace agealg
