// SPDX-License-Identifier: Apache-2.0
//
// saasim: spherical and planar antenna-array beam simulator
// Copyright (C) 2026 The saasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "saa/error.hpp"

namespace saa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::InvalidRadius: return "InvalidRadius";
    case ErrorCode::InvalidSpacing: return "InvalidSpacing";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::InvalidRotation: return "InvalidRotation";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::TargetInsideArray: return "TargetInsideArray";
    case ErrorCode::InvalidWavelength: return "InvalidWavelength";
    case ErrorCode::NoVisibleElements: return "NoVisibleElements";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegeneratePattern: return "DegeneratePattern";
    case ErrorCode::AllBeamsInfeasible: return "AllBeamsInfeasible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace saa
