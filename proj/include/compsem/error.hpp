#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace compsem {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed surface syntax. `position()` is the 0-based offset of the
/// offending character in the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidAtom : public Error {
 public:
  using Error::Error;
};

class InvalidFragment : public Error {
 public:
  using Error::Error;
};

/// The partial concatenation is undefined on the requested pair.
class UndefinedComposition : public Error {
 public:
  using Error::Error;
};

/// A mu value was applied to an argument outside its graph.
class UndefinedApplication : public Error {
 public:
  using Error::Error;
};

class MissingMeanings : public Error {
 public:
  using Error::Error;
};

class UnknownOperator : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class TypeError : public Error {
 public:
  using Error::Error;
};

class CertificateMismatch : public Error {
 public:
  using Error::Error;
};

class DigestMismatch : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace compsem
