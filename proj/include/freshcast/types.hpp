#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace freshcast {

using Vertex = int;
using Time = std::int64_t;

/// Marker for vertices a finite schedule never reaches.
inline constexpr Time kUnreached = -1;

enum class ErrorKind {
  Disconnected,
  DuplicateEdge,
  BadRoot,
  NotATree,
  TooSmall,
  TooLarge,
  VertexClash,
  UnknownEdge,
  EmptySchedule,
  InvalidMatching,
  WindowTooShort,
  NoLowPoint,
  NotABroadcast,
  InconsistentArrivalTimes,
  BadSequence,
  SumNotOne,
  InvalidPeriods,
  InfeasibleAssignment,
  NotGapTree,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace freshcast
