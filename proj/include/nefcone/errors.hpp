#pragma once

#include <stdexcept>
#include <string>

namespace nefcone {

// Stable error codes; the CLI prints these names and tests assert on them.
enum class errc {
  invalid_argument,
  parse_error,
  division_by_zero,
  incompatible_field,
  factor_limit_exceeded,
  lattice_mismatch,
  nonpositive_norm,
  not_product_lattice,
  precondition_violated,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument:      return "INVALID_ARGUMENT";
    case errc::parse_error:           return "PARSE_ERROR";
    case errc::division_by_zero:      return "DIVISION_BY_ZERO";
    case errc::incompatible_field:    return "INCOMPATIBLE_FIELD";
    case errc::factor_limit_exceeded: return "FACTOR_LIMIT_EXCEEDED";
    case errc::lattice_mismatch:      return "LATTICE_MISMATCH";
    case errc::nonpositive_norm:      return "NONPOSITIVE_NORM";
    case errc::not_product_lattice:   return "NOT_PRODUCT_LATTICE";
    case errc::precondition_violated: return "PRECONDITION_VIOLATED";
    case errc::io_error:              return "IO_ERROR";
  }
  return "UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

}  // namespace nefcone
