#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gbk {

// Malformed or incomplete input: unknown switch, missing cell, bad parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDimension : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An enumeration would exceed its configured cap. Carries the count that
// would have been needed so callers can raise the cap deliberately.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what), required_(required), cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

}  // namespace gbk
