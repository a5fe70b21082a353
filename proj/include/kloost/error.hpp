#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kloost {

enum class Errc {
  CompositeP,
  ReducibleModulus,
  DegreeMismatch,
  PrimeMismatch,
  FieldMismatch,
  ZeroPolynomial,
  SingularMatrix,
  EmptyPartition,
  NonCanonicalPartition,
  NotInvolution,
  RangeError,
  BudgetExceeded,
  DimensionMismatch,
  NoExactPath,
  ParseError,
};

inline std::string_view errc_name(Errc e) {
  switch (e) {
    case Errc::CompositeP: return "CompositeP";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::PrimeMismatch: return "PrimeMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::EmptyPartition: return "EmptyPartition";
    case Errc::NonCanonicalPartition: return "NonCanonicalPartition";
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::RangeError: return "RangeError";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NoExactPath: return "NoExactPath";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace kloost
