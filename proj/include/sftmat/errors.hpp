#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sft {

// All toolkit failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Offset/shape outside the block being addressed.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Constituents or operands whose shapes do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Invalid problem definition, or a block/cube that does not belong to it.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Requested operation is outside what the engine supports (e.g. literal d=3).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Sampling from an empty level.
class EmptinessError : public Error {
 public:
  using Error::Error;
};

// A configured size cap was exceeded. `required` is the size that would have
// been needed (or a lower bound on it), `partial` what had been produced when
// the computation stopped.
class BudgetError : public Error {
 public:
  BudgetError(std::string what, std::uint64_t required, std::uint64_t cap,
              std::uint64_t partial = 0)
      : Error(std::move(what)), required_(required), cap_(cap), partial_(partial) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }
  std::uint64_t partial() const noexcept { return partial_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
  std::uint64_t partial_;
};

// Document syntax/semantic problems. `location` is "line N" or a field path.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location + ": " + message), location_(location) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

class IntegrityError : public Error {
 public:
  using Error::Error;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sft
