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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "povmforge/ensemble.hpp"
#include "povmforge/finite_field.hpp"
#include "povmforge/functions.hpp"
#include "povmforge/verify.hpp"

namespace povmforge::cli {

enum class Command { kConstructQ, kConstructQ1, kVerify, kFnCheck, kFnCount, kWelch, kLiBound, kSweep };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitError = 2;

struct RunConfig {
    Command command = Command::kConstructQ;
    uint32_t p = 0;
    uint32_t k = 1;
    /// Polynomial text; empty selects x^2.
    std::string f_text;
    /// Character index, or base-p digits when it contains a comma.
    std::string chi_text = "1";
    bool verify = true;
    bool brute = false;
    std::string json_path;
    std::string csv_path;
    std::string in_path;
    std::vector<uint64_t> q_list;
    Construction construction = Construction::kTheorem210;
    Tolerances tolerances;
    /// 0 defers to POVMFORGE_WORKERS.
    unsigned workers = 0;
};

/// Throws InvalidArgument / NotPrime for a config that must not run.
void validate(const RunConfig &config);

/// Coefficient list, constant first. For k = 1 entries are residues; with
/// ';' present each coefficient is a comma-separated digit vector; otherwise
/// for k > 1 entries are enumeration indices.
PolyFunction parse_polynomial(const FieldRef &field, std::string_view text);

/// Enumeration index, or comma-separated base-p digits.
FieldElement parse_field_element(const FieldRef &field, std::string_view text);

std::vector<uint64_t> parse_uint_list(std::string_view text);

/// Executes one command. Returns 0 when every verification passes, 1 when
/// one fails and 2 on an error, which is reported on err as a JSON record.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv (including the nested forms "construct q", "fn check") and
/// dispatches to run.
int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// The single-line record written for errors: {"error": ..., "message": ...}.
std::string error_record(std::string_view name, std::string_view message);

}  // namespace povmforge::cli
