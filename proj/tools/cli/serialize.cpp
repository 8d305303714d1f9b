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

#include "cli/serialize.hpp"

#include <charconv>
#include <sstream>

#include "povmforge/error.hpp"

namespace povmforge::cli {

using nlohmann::json;

namespace {

json complex_json(const Complex &z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw PovmError(ErrorCode::kParseError, "complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json vector_json(const UnitVector &v) {
    json out = json::array();
    for (const auto &z : v.entries()) {
        out.push_back(complex_json(z));
    }
    return out;
}

Construction construction_from_name(const std::string &name) {
    if (name == construction_name(Construction::kTheorem210)) {
        return Construction::kTheorem210;
    }
    if (name == construction_name(Construction::kTheorem35)) {
        return Construction::kTheorem35;
    }
    throw PovmError(ErrorCode::kParseError, "unknown construction '" + name + "'");
}

json case_json(const CaseRecord &c) {
    return {
        {"case", c.formula.id},
        {"description", c.formula.description},
        {"pairs", c.pairs},
        {"bound", c.formula.bound},
        {"equality", c.formula.equality},
        {"epsilon_tilde", c.formula.epsilon_tilde},
        {"epsilon", c.formula.epsilon},
        {"epsilon_bound", c.epsilon_bound},
        {"measured_max", c.measured_max},
        {"measured_min", c.measured_min},
        {"margin", c.margin},
        {"overlap_max", c.overlap_max},
        {"overlap_min", c.overlap_min},
        {"witness", {c.witness_i, c.witness_j}},
        {"gap", c.gap},
        {"order", c.formula.order},
        {"scaled_gap", c.scaled_gap},
        {"passed", c.passed},
    };
}

}  // namespace

json to_json(const HermitianOperator &op) {
    json rows = json::array();
    for (size_t i = 0; i < op.dim(); ++i) {
        json row = json::array();
        for (size_t j = 0; j < op.dim(); ++j) {
            row.push_back(complex_json(op(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

HermitianOperator operator_from_json(const json &j) {
    if (!j.is_array()) {
        throw PovmError(ErrorCode::kParseError, "operator must be a nested array");
    }
    const size_t d = j.size();
    ComplexMatrix m(d, d);
    for (size_t i = 0; i < d; ++i) {
        if (!j[i].is_array() || j[i].size() != d) {
            throw PovmError(ErrorCode::kParseError, "operator must be square");
        }
        for (size_t k = 0; k < d; ++k) {
            m(i, k) = complex_from_json(j[i][k]);
        }
    }
    return HermitianOperator(std::move(m));
}

json to_json(const EpsilonLedger &ledger) {
    json cases = json::array();
    for (const auto &c : ledger.cases) {
        cases.push_back(case_json(c));
    }
    return {
        {"construction", construction_name(ledger.construction)},
        {"q", ledger.q},
        {"dim", ledger.dim},
        {"tolerance", ledger.tolerance},
        {"cases", std::move(cases)},
        {"passed", ledger.passed()},
    };
}

json to_json(const VerificationReport &r) {
    return {
        {"completeness",
         {{"deviation", r.completeness.deviation},
          {"tolerance", r.completeness.tolerance},
          {"passed", r.completeness.passed}}},
        {"symmetry", to_json(r.ledger)},
        {"informational",
         {{"rank", r.informational.rank},
          {"expected", r.informational.expected},
          {"smallest_retained", r.informational.smallest_retained},
          {"largest", r.informational.largest},
          {"passed", r.informational.passed}}},
        {"positivity",
         {{"min_eigenvalue", r.positivity.min_eigenvalue},
          {"worst_member", r.positivity.worst_member},
          {"passed", r.positivity.passed}}},
        {"renormalizer_deviation", r.renormalizer_deviation},
        {"passed", r.passed()},
    };
}

json to_json(const DifferenceReport &r) {
    json collisions = json::array();
    for (const auto &[a, b] : r.collisions) {
        collisions.push_back({{a.first, a.second}, {b.first, b.second}});
    }
    return {
        {"quotients", r.quotients},         {"distinct", r.distinct},
        {"expected", r.expected},           {"contains_one", r.contains_one},
        {"equals_n_minus_one", r.equals_n_minus_one}, {"collisions", std::move(collisions)},
        {"passed", r.passed},
    };
}

json to_json(const LiBoundReport &r) {
    return {
        {"q", r.q},
        {"sqrt_q", r.sqrt_q},
        {"characters", r.moduli.size()},
        {"max_modulus", r.max_modulus},
        {"argmax_m", r.argmax_m},
        {"moduli", r.moduli},
        {"passed", r.passed},
    };
}

json to_json(const CodebookMetrics &m) {
    return {{"n", m.n}, {"k", m.k}, {"i_max", m.i_max}, {"welch", m.welch}, {"ratio", m.ratio}};
}

json ensemble_to_json(const PovmEnsemble &e, const VerificationReport *report) {
    const auto &p = e.provenance;
    json prov = {
        {"field", {{"p", p.p}, {"k", p.k}, {"modulus", p.modulus}}},
    };
    if (e.construction == Construction::kTheorem210) {
        prov["f"] = {{"coeffs", p.f_coeffs}, {"text", p.f_text}};
        prov["chi_index"] = p.chi_index;
        prov["permutation"] = p.permutation;
    } else {
        prov["ext_field"] = {{"modulus", p.ext_modulus}};
        prov["alpha"] = p.alpha_index;
        prov["s_set"] = p.s_set;
    }

    json labels = json::array();
    json vectors = json::array();
    json members = json::array();
    for (size_t i = 0; i < e.members.size(); ++i) {
        labels.push_back(e.labels[i].to_string());
        vectors.push_back(vector_json(e.vectors[i]));
        members.push_back(to_json(e.members[i]));
    }
    json out = {
        {"schema_version", kSchemaVersion},
        {"construction", construction_name(e.construction)},
        {"q", e.q},
        {"dim", e.dim},
        {"provenance", std::move(prov)},
        {"labels", std::move(labels)},
        {"vectors", std::move(vectors)},
        {"frame_operator", to_json(e.frame_operator)},
        {"renormalizer", to_json(e.renormalizer)},
        {"renormalizer_generic", to_json(e.renormalizer_generic)},
        {"renormalizer_deviation", e.renormalizer_deviation},
        {"members", std::move(members)},
    };
    if (report != nullptr) {
        out["verification"] = to_json(*report);
    }
    return out;
}

MemberLabel parse_label(std::string_view text) {
    auto fail = [&] { return PovmError(ErrorCode::kParseError, "bad member label '" + std::string(text) + "'"); };
    if (text.size() < 4 || text[1] != '(' || text.back() != ')') {
        throw fail();
    }
    const std::string body(text.substr(2, text.size() - 3));
    auto number = [&](const std::string &s) {
        uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw fail();
        }
        return v;
    };
    MemberLabel l;
    switch (text[0]) {
        case 'v': {
            const auto comma = body.find(',');
            if (comma == std::string::npos) {
                throw fail();
            }
            l.kind = MemberLabel::Kind::kCharacter;
            l.a = number(body.substr(0, comma));
            l.b = number(body.substr(comma + 1));
            break;
        }
        case 'u':
            l.kind = MemberLabel::Kind::kNCharacter;
            l.m = number(body);
            break;
        case 'e':
            l.kind = MemberLabel::Kind::kBasis;
            l.index = number(body);
            break;
        default:
            throw fail();
    }
    return l;
}

PovmEnsemble ensemble_from_json(const json &j) {
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw PovmError(ErrorCode::kParseError, "unsupported schema_version");
        }
        PovmEnsemble e;
        e.construction = construction_from_name(j.at("construction").get<std::string>());
        e.q = j.at("q").get<uint64_t>();
        e.dim = j.at("dim").get<size_t>();
        const auto &prov = j.at("provenance");
        const auto &field = prov.at("field");
        e.provenance.p = field.at("p").get<uint32_t>();
        e.provenance.k = field.at("k").get<uint32_t>();
        e.provenance.modulus = field.at("modulus").get<std::vector<uint32_t>>();
        if (e.construction == Construction::kTheorem210) {
            e.provenance.f_coeffs = prov.at("f").at("coeffs").get<std::vector<uint64_t>>();
            e.provenance.f_text = prov.at("f").at("text").get<std::string>();
            e.provenance.chi_index = prov.at("chi_index").get<uint64_t>();
            e.provenance.permutation = prov.at("permutation").get<std::vector<uint64_t>>();
        } else {
            e.provenance.ext_modulus = prov.at("ext_field").at("modulus").get<std::vector<uint32_t>>();
            e.provenance.alpha_index = prov.at("alpha").get<uint64_t>();
            e.provenance.s_set = prov.at("s_set").get<std::vector<uint64_t>>();
        }
        const auto &labels = j.at("labels");
        const auto &vectors = j.at("vectors");
        const auto &members = j.at("members");
        if (labels.size() != members.size() || vectors.size() != members.size()) {
            throw PovmError(ErrorCode::kParseError, "labels, vectors and members differ in count");
        }
        for (size_t i = 0; i < members.size(); ++i) {
            e.labels.push_back(parse_label(labels[i].get<std::string>()));
            std::vector<Complex> v;
            for (const auto &z : vectors[i]) {
                v.push_back(complex_from_json(z));
            }
            e.vectors.emplace_back(std::move(v));
            e.members.push_back(operator_from_json(members[i]));
            if (e.members.back().dim() != e.dim || e.vectors.back().dim() != e.dim) {
                throw PovmError(ErrorCode::kParseError, "member dimension differs from dim");
            }
        }
        e.frame_operator = operator_from_json(j.at("frame_operator"));
        e.renormalizer = operator_from_json(j.at("renormalizer"));
        e.renormalizer_generic = operator_from_json(j.at("renormalizer_generic"));
        e.renormalizer_deviation = j.at("renormalizer_deviation").get<double>();
        for (const auto &v : e.vectors) {
            e.raw_members.push_back(outer_product(v, 1.0 / static_cast<double>(e.dim)));
        }
        return e;
    } catch (const json::exception &ex) {
        throw PovmError(ErrorCode::kParseError, std::string("malformed ensemble JSON: ") + ex.what());
    } catch (const PovmError &ex) {
        if (ex.code() == ErrorCode::kParseError) {
            throw;
        }
        throw PovmError(ErrorCode::kParseError, std::string("invalid ensemble JSON: ") + ex.what());
    }
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, ptr);
}

std::string ledger_csv_header() {
    return "schema_version,construction,q,dim,case,pairs,bound,epsilon,epsilon_bound,measured,measured_min,margin,"
           "overlap_max,gap,order,scaled_gap,verdict\n";
}

std::string ledger_csv_rows(const EpsilonLedger &ledger) {
    std::ostringstream os;
    for (const auto &c : ledger.cases) {
        os << kSchemaVersion << ',' << construction_name(ledger.construction) << ',' << ledger.q << ',' << ledger.dim
           << ',' << c.formula.id << ',' << c.pairs << ',' << format_double(c.formula.bound) << ','
           << format_double(c.formula.epsilon) << ',' << format_double(c.epsilon_bound) << ','
           << format_double(c.measured_max) << ',' << format_double(c.measured_min) << ','
           << format_double(c.margin) << ',' << format_double(c.overlap_max) << ',' << format_double(c.gap) << ','
           << format_double(c.formula.order) << ',' << format_double(c.scaled_gap) << ','
           << (c.passed ? "pass" : "fail") << '\n';
    }
    return os.str();
}

}  // namespace povmforge::cli
