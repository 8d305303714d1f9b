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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace povmforge {

enum class ErrorCode {
    kInvalidArgument,
    kNotPrime,
    kNoModulusFound,
    kZeroInput,
    kFieldMismatch,
    kNotInSubgroup,
    kDomainMismatch,
    kNotTwoToOne,
    kEvenQ,
    kTooLarge,
    kNotPositiveDefinite,
    kConvergenceFailure,
    kDimensionMismatch,
    kClosedFormMismatch,
    kNotTwoToOnePN,
    kInvalidPermutation,
    kTrivialCharacter,
    kBoundViolated,
    kLiBoundViolated,
    kNotInN,
    kTooFewVectors,
    kParseError,
};

/// Stable identifier used in machine-readable error records, e.g. "NotPrime".
std::string_view error_code_name(ErrorCode code);

class PovmError : public std::runtime_error {
   public:
    PovmError(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace povmforge
