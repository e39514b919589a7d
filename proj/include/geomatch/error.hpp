// Copyright 2026 The geomatch Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace geomatch {

// Every structured failure the library can raise. Names follow the error
// vocabulary used throughout the API docs.
enum class ErrorCode {
  // geometry
  CollinearTriple,
  DuplicatePoint,
  MismatchedVertexSet,
  TooFewPoints,
  InvalidSegment,
  VertexReused,
  CrossingEdges,
  NotConvex,
  InvalidRegion,
  // subdivision
  SegmentOutsideRegionRule,
  DegenerateIncidence,
  InvalidDirectives,
  // orientation
  NotATree,
  OddTree,
  OddComponentInPart,
  // matching engine
  NotConvexPosition,
  OddCount,
  TwoPointsAlreadyMatched,
  SameSegmentIndegreeTwo,
  // algorithms
  DistinctXRequired,
  VertexOnLine,
  OddCut,
  NotPerfect,
  NotAxisParallel,
  OddMatching,
  NotCHC,
  OddN,
  VerticalSegment,
  GenerationFailed,
  // oracle
  TooLarge,
  Unreachable,
  // io
  ParseError,
  // internal invariant violated
  Internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<int> ids = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        ids_(std::move(ids)) {}

  ErrorCode code() const { return code_; }
  // Point / segment / line indices the error refers to, if any.
  const std::vector<int>& ids() const { return ids_; }

 private:
  ErrorCode code_;
  std::vector<int> ids_;
};

// Throws Error(Internal) when `cond` is false. Used for invariants that a
// correct implementation never violates.
inline void check_internal(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::Internal, what);
}

}  // namespace geomatch
