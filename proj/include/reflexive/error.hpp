#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reflexive {

enum class ErrorKind {
  NoPositiveRelation,
  NotFullDimensional,
  OriginNotInterior,
  NonPrimitiveNormal,
  NotReflexive,
  NotStronglyConvex,
  FanNotComplete,
  NotGorenstein,
  NotAdmissible,
  MalformedTriangulation,
  DimensionTooHigh,
  DimensionBelowFour,
  DimensionNotFour,
  NotAMorphism,
  NotASimplex,
  DegreesNotUnit,
  UnsupportedDimension,
  NotInLattice,
  ParseError,
  StoreCorrupt,
  InvariantViolation,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace reflexive
