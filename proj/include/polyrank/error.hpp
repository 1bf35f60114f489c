#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyrank {

enum class ErrorKind {
  ZeroVector,
  NotPrimitive,
  DimensionMismatch,
  EmptyPolyhedron,
  Unbounded,
  NotUnimodular,
  UnboundedVolume,
  SearchCapExceeded,
  CapExceeded,
  RayMissesHull,
  PointNotInQ,
  NotIntegral,
  InvalidWitness,
  EmptyGeneratorList,
  ParseError,
  IrrationalData,
  InvariantViolation,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptyPolyhedron: return "EmptyPolyhedron";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::UnboundedVolume: return "UnboundedVolume";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::RayMissesHull: return "RayMissesHull";
    case ErrorKind::PointNotInQ: return "PointNotInQ";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::EmptyGeneratorList: return "EmptyGeneratorList";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IrrationalData: return "IrrationalData";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace polyrank
