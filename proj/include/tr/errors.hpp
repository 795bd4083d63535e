#pragma once

#include <stdexcept>
#include <string>

namespace tr {

enum class Err {
  // algebra
  ZeroPolynomial,
  IrrationalRootsInExactMode,
  BadValuation,
  TruncationTooShort,
  MissingPole,
  LogOfZeroValuation,
  ResidueObstruction,
  // toric
  NonConvexPolytope,
  TriangulationGap,
  TriangulationOverlap,
  NonLatticeVertex,
  IdentityViolation,
  MissingCoefficient,
  ZeroCoefficient,
  // curve
  NotGenusZero,
  NotLinear,
  DegenerateFraming,
  PunctureCollision,
  WrongMultiplicity,
  // recursion
  UnstablePair,
  NonSimpleRamification,
  GenusTooLow,
  // potentials
  BranchMismatch,
  DiagonalResidual,
  OddTruncation,
  NonIsolatedPuncture,
  // cli
  ConfigError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::IrrationalRootsInExactMode: return "IrrationalRootsInExactMode";
    case Err::BadValuation: return "BadValuation";
    case Err::TruncationTooShort: return "TruncationTooShort";
    case Err::MissingPole: return "MissingPole";
    case Err::LogOfZeroValuation: return "LogOfZeroValuation";
    case Err::ResidueObstruction: return "ResidueObstruction";
    case Err::NonConvexPolytope: return "NonConvexPolytope";
    case Err::TriangulationGap: return "TriangulationGap";
    case Err::TriangulationOverlap: return "TriangulationOverlap";
    case Err::NonLatticeVertex: return "NonLatticeVertex";
    case Err::IdentityViolation: return "IdentityViolation";
    case Err::MissingCoefficient: return "MissingCoefficient";
    case Err::ZeroCoefficient: return "ZeroCoefficient";
    case Err::NotGenusZero: return "NotGenusZero";
    case Err::NotLinear: return "NotLinear";
    case Err::DegenerateFraming: return "DegenerateFraming";
    case Err::PunctureCollision: return "PunctureCollision";
    case Err::WrongMultiplicity: return "WrongMultiplicity";
    case Err::UnstablePair: return "UnstablePair";
    case Err::NonSimpleRamification: return "NonSimpleRamification";
    case Err::GenusTooLow: return "GenusTooLow";
    case Err::BranchMismatch: return "BranchMismatch";
    case Err::DiagonalResidual: return "DiagonalResidual";
    case Err::OddTruncation: return "OddTruncation";
    case Err::NonIsolatedPuncture: return "NonIsolatedPuncture";
    case Err::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& detail)
      : std::runtime_error(std::string(err_name(code)) + ": " + detail), code_(code) {}
  Err code() const { return code_; }

  // computation errors exit 1, configuration/validation errors exit 2
  int exit_code() const {
    switch (code_) {
      case Err::NonConvexPolytope:
      case Err::TriangulationGap:
      case Err::TriangulationOverlap:
      case Err::NonLatticeVertex:
      case Err::MissingCoefficient:
      case Err::ZeroCoefficient:
      case Err::IrrationalRootsInExactMode:
      case Err::ConfigError:
        return 2;
      default:
        return 1;
    }
  }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& detail) { throw Error(code, detail); }

inline void check(bool ok, Err code, const std::string& detail) {
  if (!ok) fail(code, detail);
}

}  // namespace tr
