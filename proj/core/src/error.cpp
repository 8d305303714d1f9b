// Copyright 2026 The povmforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "povmforge/error.hpp"

namespace povmforge {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
        case ErrorCode::kNotPrime:
            return "NotPrime";
        case ErrorCode::kNoModulusFound:
            return "NoModulusFound";
        case ErrorCode::kZeroInput:
            return "ZeroInput";
        case ErrorCode::kFieldMismatch:
            return "FieldMismatch";
        case ErrorCode::kNotInSubgroup:
            return "NotInSubgroup";
        case ErrorCode::kDomainMismatch:
            return "DomainMismatch";
        case ErrorCode::kNotTwoToOne:
            return "NotTwoToOne";
        case ErrorCode::kEvenQ:
            return "EvenQ";
        case ErrorCode::kTooLarge:
            return "TooLarge";
        case ErrorCode::kNotPositiveDefinite:
            return "NotPositiveDefinite";
        case ErrorCode::kConvergenceFailure:
            return "ConvergenceFailure";
        case ErrorCode::kDimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::kClosedFormMismatch:
            return "ClosedFormMismatch";
        case ErrorCode::kNotTwoToOnePN:
            return "NotTwoToOnePN";
        case ErrorCode::kInvalidPermutation:
            return "InvalidPermutation";
        case ErrorCode::kTrivialCharacter:
            return "TrivialCharacter";
        case ErrorCode::kBoundViolated:
            return "BoundViolated";
        case ErrorCode::kLiBoundViolated:
            return "LiBoundViolated";
        case ErrorCode::kNotInN:
            return "NotInN";
        case ErrorCode::kTooFewVectors:
            return "TooFewVectors";
        case ErrorCode::kParseError:
            return "ParseError";
    }
    return "Unknown";
}

PovmError::PovmError(ErrorCode code, const std::string &message)
    : std::runtime_error(message), code_(code) {
}

}  // namespace povmforge
