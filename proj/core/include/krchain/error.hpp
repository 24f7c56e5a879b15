#pragma once

#include <stdexcept>
#include <string>

namespace krc {

enum class ErrorKind {
  invalid_modulus,
  invalid_argument,
  overflow,
  size_limit,
  invalid_candidate,
  characteristic_mismatch,
  division_by_zero,
  parse,
};

/// Library error. Every failure raised by krchain carries a kind so callers
/// (the CLI in particular) can map it onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace krc
