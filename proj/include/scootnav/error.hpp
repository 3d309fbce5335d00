// Copyright 2026 The scootnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCOOTNAV_ERROR_HPP
#define SCOOTNAV_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace scootnav
{

enum class ErrorKind {
  TooFewWaypoints,
  DegenerateSegment,
  NonPositiveWidth,
  EmptyPath,
  InvalidParams,
  NonFiniteState,
  InvalidDt,
  SingularInnovation,
  InsufficientBaseline,
  DimensionMismatch,
  SolverStalled,
  Config,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::TooFewWaypoints: return "TooFewWaypoints";
    case ErrorKind::DegenerateSegment: return "DegenerateSegment";
    case ErrorKind::NonPositiveWidth: return "NonPositiveWidth";
    case ErrorKind::EmptyPath: return "EmptyPath";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::InvalidDt: return "InvalidDt";
    case ErrorKind::SingularInnovation: return "SingularInnovation";
    case ErrorKind::InsufficientBaseline: return "InsufficientBaseline";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SolverStalled: return "SolverStalled";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable kind next to the human message.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string & message)
  : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message)
  {
  }

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string & message() const noexcept { return message_; }

private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace scootnav

#endif  // SCOOTNAV_ERROR_HPP
