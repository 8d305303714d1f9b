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

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "povmforge/construction_q1.hpp"
#include "povmforge/ensemble.hpp"
#include "povmforge/verify.hpp"

namespace povmforge::cli {

inline constexpr int kSchemaVersion = 1;

/// Complex numbers as [re, im]; operators as row-major nested arrays.
nlohmann::json to_json(const HermitianOperator &op);
HermitianOperator operator_from_json(const nlohmann::json &j);

nlohmann::json to_json(const EpsilonLedger &ledger);
nlohmann::json to_json(const VerificationReport &report);
nlohmann::json to_json(const DifferenceReport &report);
nlohmann::json to_json(const LiBoundReport &report);
nlohmann::json to_json(const CodebookMetrics &metrics);

/// Full ensemble with provenance; the report is embedded when given.
nlohmann::json ensemble_to_json(const PovmEnsemble &ensemble, const VerificationReport *report);

/// Inverse of ensemble_to_json (the report, if any, is ignored). Throws
/// ParseError on malformed input.
PovmEnsemble ensemble_from_json(const nlohmann::json &j);

/// "v(a,b)", "u(m)" or "e(i)" back to a label; throws ParseError.
MemberLabel parse_label(std::string_view text);

/// Fixed-column ledger CSV.
std::string ledger_csv_header();
std::string ledger_csv_rows(const EpsilonLedger &ledger);

/// Shortest round-trip decimal form, as used in every CSV cell.
std::string format_double(double x);

}  // namespace povmforge::cli
