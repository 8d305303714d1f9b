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

#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli/serialize.hpp"
#include "povmforge/construction_q.hpp"
#include "povmforge/construction_q1.hpp"
#include "povmforge/error.hpp"

namespace povmforge::cli {

using nlohmann::json;

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const size_t pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

uint64_t parse_uint(std::string_view raw) {
    const std::string s = trim(raw);
    uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw PovmError(ErrorCode::kParseError, "expected a non-negative integer, got '" + std::string(raw) + "'");
    }
    return v;
}

FieldElement element_from_digits(const FieldRef &field, std::string_view text) {
    const auto parts = split(text, ',');
    if (parts.size() > field->degree()) {
        throw PovmError(ErrorCode::kParseError, "too many base-p digits in '" + std::string(text) + "'");
    }
    std::vector<uint32_t> digits;
    for (const auto &part : parts) {
        const uint64_t d = parse_uint(part);
        if (d >= field->characteristic()) {
            throw PovmError(ErrorCode::kParseError, "digit " + std::to_string(d) + " is not below p");
        }
        digits.push_back(static_cast<uint32_t>(d));
    }
    digits.resize(field->degree(), 0);
    return field->from_coeffs(std::move(digits));
}

FieldElement element_from_index(const FieldRef &field, std::string_view text) {
    const uint64_t idx = parse_uint(text);
    if (idx >= field->order()) {
        throw PovmError(ErrorCode::kParseError,
                        "element index " + std::to_string(idx) + " is outside GF(" + std::to_string(field->order()) + ")");
    }
    return field->element(idx);
}

void write_text(const std::string &path, const std::string &content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw PovmError(ErrorCode::kInvalidArgument, "cannot open '" + path + "' for writing");
    }
    file << content;
    if (!file) {
        throw PovmError(ErrorCode::kInvalidArgument, "failed writing '" + path + "'");
    }
}

void write_json(const std::string &path, const json &j) {
    write_text(path, j.dump(2) + "\n");
}

std::string verdict(bool passed) {
    return passed ? "PASS" : "FAIL";
}

void print_ledger(std::ostream &out, const EpsilonLedger &ledger) {
    out << "  case   pairs      bound              measured_max       margin\n";
    for (const auto &c : ledger.cases) {
        out << "  " << std::left << std::setw(6) << c.formula.id << ' ' << std::setw(10) << c.pairs << ' '
            << std::setw(18) << format_double(c.formula.bound) << ' ' << std::setw(18)
            << format_double(c.measured_max) << ' ' << std::setw(14) << format_double(c.margin) << ' '
            << verdict(c.passed) << std::right << '\n';
    }
}

void print_report(std::ostream &out, const VerificationReport &r) {
    out << "completeness: deviation " << format_double(r.completeness.deviation) << " (tolerance "
        << format_double(r.completeness.tolerance) << ") " << verdict(r.completeness.passed) << '\n';
    out << "symmetry ledger: " << verdict(r.symmetry_passed()) << '\n';
    print_ledger(out, r.ledger);
    out << "informational: rank " << r.informational.rank << " / " << r.informational.expected << ' '
        << verdict(r.informational.passed) << '\n';
    out << "positivity: min eigenvalue " << format_double(r.positivity.min_eigenvalue) << ' '
        << verdict(r.positivity.passed) << '\n';
    out << "renormalizer deviation: " << format_double(r.renormalizer_deviation) << '\n';
}

FieldRef field_from(const RunConfig &c) {
    return make_field(c.p, c.k);
}

std::string default_stem(Construction construction, uint64_t q) {
    return std::string(construction_name(construction)) + "_q" + std::to_string(q);
}

PolyFunction function_from(const RunConfig &c, const FieldRef &field) {
    return parse_polynomial(field, c.f_text.empty() ? std::string_view("0,0,1") : std::string_view(c.f_text));
}

void require_odd(const FieldRef &field) {
    if (field->characteristic() == 2) {
        throw PovmError(ErrorCode::kEvenQ, "odd q required, got q = " + std::to_string(field->order()));
    }
}

int emit_construction(const RunConfig &c, const PovmEnsemble &ens, const std::optional<VerificationReport> &report,
                      bool extra_passed, std::ostream &out) {
    const EpsilonLedger ledger = report ? report->ledger
                                        : (ens.construction == Construction::kTheorem210
                                               ? compute_ledger_q(ens, c.tolerances.bound, c.workers)
                                               : compute_ledger_q1(ens, c.tolerances.bound, c.workers));
    const std::string stem = default_stem(ens.construction, ens.q);
    const std::string json_path = c.json_path.empty() ? stem + ".json" : c.json_path;
    const std::string csv_path = c.csv_path.empty() ? stem + "_ledger.csv" : c.csv_path;
    write_json(json_path, ensemble_to_json(ens, report ? &*report : nullptr));
    write_text(csv_path, ledger_csv_header() + ledger_csv_rows(ledger));

    out << construction_name(ens.construction) << ": q = " << ens.q << ", d = " << ens.dim << ", "
        << ens.members.size() << " members\n";
    if (report) {
        print_report(out, *report);
    } else {
        out << "symmetry ledger (verification skipped):\n";
        print_ledger(out, ledger);
    }
    out << "wrote " << json_path << '\n' << "wrote " << csv_path << '\n';
    if (!report) {
        out << "result: NOT VERIFIED\n";
        return kExitOk;
    }
    const bool passed = report->passed() && extra_passed;
    out << "result: " << verdict(passed) << '\n';
    return passed ? kExitOk : kExitFailed;
}

int run_construct_q(const RunConfig &c, std::ostream &out) {
    const auto field = field_from(c);
    require_odd(field);
    const auto f = function_from(c, field);
    const auto chi = parse_field_element(field, c.chi_text);
    const auto perm = build_f_permutation(f);
    const auto ens = build_ensemble_q(field, f, perm, chi);
    std::optional<VerificationReport> report;
    if (c.verify) {
        report = verify_povm_axioms(ens, c.tolerances, c.workers);
    }
    out << "field: " << field->describe() << '\n' << "f(x) = " << f.to_string() << ", chi index " << chi.index()
        << '\n';
    return emit_construction(c, ens, report, true, out);
}

int run_construct_q1(const RunConfig &c, std::ostream &out) {
    const auto tower = make_tower(c.p, c.k);
    const auto s = build_s_set(tower);
    const auto diff = verify_difference_structure(s);
    const auto li = li_bound_report(s, c.tolerances.bound);
    const auto ens = build_ensemble_q1(s);
    std::optional<VerificationReport> report;
    out << "field: " << tower.base()->describe() << ", extension: " << tower.ext()->describe() << '\n';
    if (c.verify) {
        report = verify_povm_axioms(ens, c.tolerances, c.workers);
        out << "difference structure: " << diff.distinct << " distinct quotients of " << diff.expected << ' '
            << verdict(diff.passed) << '\n';
        out << "character sums: max modulus " << format_double(li.max_modulus) << " <= sqrt(q) "
            << format_double(li.sqrt_q) << ' ' << verdict(li.passed) << '\n';
    }
    return emit_construction(c, ens, report, diff.passed && li.passed, out);
}

int run_verify(const RunConfig &c, std::ostream &out) {
    std::ifstream file(c.in_path, std::ios::binary);
    if (!file) {
        throw PovmError(ErrorCode::kInvalidArgument, "cannot open '" + c.in_path + "'");
    }
    json j;
    try {
        j = json::parse(file);
    } catch (const json::exception &ex) {
        throw PovmError(ErrorCode::kParseError, std::string("invalid JSON: ") + ex.what());
    }
    const auto ens = ensemble_from_json(j);
    const auto report = verify_povm_axioms(ens, c.tolerances, c.workers);
    out << construction_name(ens.construction) << ": q = " << ens.q << ", d = " << ens.dim << ", "
        << ens.members.size() << " members (from " << c.in_path << ")\n";
    print_report(out, report);
    if (!c.json_path.empty()) {
        write_json(c.json_path, to_json(report));
        out << "wrote " << c.json_path << '\n';
    }
    if (!c.csv_path.empty()) {
        write_text(c.csv_path, ledger_csv_header() + ledger_csv_rows(report.ledger));
        out << "wrote " << c.csv_path << '\n';
    }
    out << "result: " << verdict(report.passed()) << '\n';
    return report.passed() ? kExitOk : kExitFailed;
}

int run_fn_check(const RunConfig &c, std::ostream &out) {
    const auto field = field_from(c);
    const auto f = function_from(c, field);
    const auto fibers = is_two_to_one(f);
    const bool pn = is_pn(f);
    json record = {
        {"field", field->describe()},
        {"f", f.to_string()},
        {"two_to_one", fibers.two_to_one},
        {"pn", pn},
        {"outside_symmetric_class", outside_symmetric_class(f)},
    };
    out << "f(x) = " << f.to_string() << " over " << field->describe() << '\n';
    out << "2-to-1: " << (fibers.two_to_one ? "yes" : "no") << '\n';
    if (fibers.exceptional_image) {
        out << "exceptional image: " << field->element(*fibers.exceptional_image).to_string() << '\n';
        record["exceptional_image"] = *fibers.exceptional_image;
    }
    out << "PN: " << (pn ? "yes" : "no") << '\n';
    out << "outside f(0) = 0, f(-x) = f(x): " << (outside_symmetric_class(f) ? "yes" : "no") << '\n';
    if (fibers.two_to_one && field->characteristic() != 2) {
        const auto perm = build_f_permutation(f);
        std::vector<uint64_t> order;
        out << "f-permutation:";
        for (const auto &a : perm.order) {
            order.push_back(a.index());
            out << ' ' << a.index();
        }
        out << '\n';
        record["permutation"] = order;
    }
    const bool passed = fibers.two_to_one && pn;
    record["passed"] = passed;
    if (!c.json_path.empty()) {
        write_json(c.json_path, record);
    }
    out << "result: " << verdict(passed) << '\n';
    return passed ? kExitOk : kExitFailed;
}

int run_fn_count(const RunConfig &c, std::ostream &out) {
    const auto field = field_from(c);
    const BigInt formula = count_two_to_one_formula(*field);
    json record = {{"q", field->order()}, {"formula", formula.str()}};
    out << "2-to-1 maps on GF(" << field->order() << "): " << formula.str() << " (formula)\n";
    bool passed = true;
    if (c.brute) {
        const BigInt brute = count_two_to_one_bruteforce(*field);
        passed = brute == formula;
        record["brute_force"] = brute.str();
        out << "2-to-1 maps on GF(" << field->order() << "): " << brute.str() << " (brute force)\n";
        out << "result: " << verdict(passed) << '\n';
    }
    record["passed"] = passed;
    if (!c.json_path.empty()) {
        write_json(c.json_path, record);
    }
    return passed ? kExitOk : kExitFailed;
}

int run_welch(const RunConfig &c, std::ostream &out) {
    std::vector<UnitVector> vectors;
    if (c.construction == Construction::kTheorem210) {
        const auto field = field_from(c);
        require_odd(field);
        const auto f = function_from(c, field);
        vectors = build_vectors_q(field, f, build_f_permutation(f), parse_field_element(field, c.chi_text));
    } else {
        vectors = build_vectors_q1(build_s_set(make_tower(c.p, c.k)));
    }
    const auto m = codebook_metrics(vectors);
    out << construction_name(c.construction) << " codebook: n = " << m.n << ", k = " << m.k << '\n';
    out << "I_max = " << format_double(m.i_max) << ", Welch bound = " << format_double(m.welch)
        << ", ratio = " << format_double(m.ratio) << '\n';
    if (!c.json_path.empty()) {
        write_json(c.json_path, to_json(m));
    }
    return kExitOk;
}

int run_libound(const RunConfig &c, std::ostream &out) {
    const auto s = build_s_set(make_tower(c.p, c.k));
    const auto diff = verify_difference_structure(s);
    const auto li = li_bound_report(s, c.tolerances.bound);
    out << "q = " << li.q << ", |N| = " << s.group->order() << '\n';
    out << "difference structure: " << diff.distinct << " distinct quotients of " << diff.expected << ' '
        << verdict(diff.passed) << '\n';
    out << "max |sum psi_m(S)| = " << format_double(li.max_modulus) << " at m = " << li.argmax_m
        << ", sqrt(q) = " << format_double(li.sqrt_q) << ' ' << verdict(li.passed) << '\n';
    if (!c.json_path.empty()) {
        write_json(c.json_path, {{"difference", to_json(diff)}, {"li_bound", to_json(li)}});
    }
    const bool passed = diff.passed && li.passed;
    out << "result: " << verdict(passed) << '\n';
    return passed ? kExitOk : kExitFailed;
}

std::string error_row(Construction construction, uint64_t q, const std::string &name) {
    std::ostringstream os;
    os << kSchemaVersion << ',' << construction_name(construction) << ',' << q << ",,-,,,,,,,,,,,,error:" << name
       << '\n';
    return os.str();
}

int run_sweep(const RunConfig &c, std::ostream &out) {
    std::string csv = ledger_csv_header();
    bool all_passed = true;
    std::ostringstream table;
    table << "  q      case   gap                scaled_gap\n";
    for (const uint64_t q : c.q_list) {
        try {
            const auto pk = prime_power_decomposition(q);
            if (!pk) {
                throw PovmError(ErrorCode::kNotPrime, std::to_string(q) + " is not a prime power");
            }
            EpsilonLedger ledger;
            if (c.construction == Construction::kTheorem210) {
                const auto field = make_field(pk->first, pk->second);
                require_odd(field);
                const auto f = PolyFunction::from_indices(
                    field, parse_uint_list(c.f_text.empty() ? std::string_view("0,0,1") : c.f_text));
                const auto ens = build_ensemble_q(field, f, build_f_permutation(f), field->one());
                ledger = compute_ledger_q(ens, c.tolerances.bound, c.workers);
            } else {
                const auto ens = build_ensemble_q1(make_tower(pk->first, pk->second));
                ledger = compute_ledger_q1(ens, c.tolerances.bound, c.workers);
            }
            csv += ledger_csv_rows(ledger);
            all_passed = all_passed && ledger.passed();
            for (const auto &cr : ledger.cases) {
                table << "  " << std::left << std::setw(6) << q << ' ' << std::setw(6) << cr.formula.id << ' '
                      << std::setw(18) << format_double(cr.gap) << ' ' << format_double(cr.scaled_gap) << std::right
                      << '\n';
            }
        } catch (const PovmError &ex) {
            all_passed = false;
            const std::string name(error_code_name(ex.code()));
            csv += error_row(c.construction, q, name);
            table << "  " << std::left << std::setw(6) << q << std::right << " error " << name << ": " << ex.what()
                  << '\n';
        }
    }
    const std::string path =
        c.csv_path.empty() ? "sweep_" + std::string(construction_name(c.construction)) + ".csv" : c.csv_path;
    write_text(path, csv);
    out << construction_name(c.construction) << " sweep over " << c.q_list.size() << " values of q\n"
        << table.str() << "wrote " << path << '\n'
        << "result: " << verdict(all_passed) << '\n';
    return all_passed ? kExitOk : kExitFailed;
}

bool needs_field(Command c) {
    return c != Command::kVerify && c != Command::kSweep;
}

Construction parse_construction(const std::string &text) {
    if (text == "q" || text == construction_name(Construction::kTheorem210)) {
        return Construction::kTheorem210;
    }
    if (text == "q1" || text == construction_name(Construction::kTheorem35)) {
        return Construction::kTheorem35;
    }
    throw PovmError(ErrorCode::kParseError, "unknown construction '" + text + "' (expected q or q1)");
}

std::vector<std::string> expand_nested(int argc, const char *const *argv) {
    std::vector<std::string> args(argv, argv + argc);
    if (args.size() >= 3) {
        if (args[1] == "construct" && (args[2] == "q" || args[2] == "q1")) {
            args[1] = "construct-" + args[2];
            args.erase(args.begin() + 2);
        } else if (args[1] == "fn" && args[2] == "check") {
            args[1] = "fn-check";
            args.erase(args.begin() + 2);
        } else if (args[1] == "fn" && (args[2] == "count-2to1" || args[2] == "count")) {
            args[1] = "fn-count";
            args.erase(args.begin() + 2);
        }
    }
    return args;
}

}  // namespace

std::string error_record(std::string_view name, std::string_view message) {
    return json{{"error", name}, {"message", message}}.dump();
}

std::vector<uint64_t> parse_uint_list(std::string_view text) {
    std::vector<uint64_t> out;
    for (const auto &part : split(text, ',')) {
        out.push_back(parse_uint(part));
    }
    return out;
}

FieldElement parse_field_element(const FieldRef &field, std::string_view text) {
    if (text.find(',') != std::string_view::npos) {
        return element_from_digits(field, text);
    }
    return element_from_index(field, text);
}

PolyFunction parse_polynomial(const FieldRef &field, std::string_view text) {
    if (trim(text).empty()) {
        throw PovmError(ErrorCode::kParseError, "empty polynomial");
    }
    std::vector<FieldElement> coeffs;
    if (text.find(';') != std::string_view::npos) {
        for (const auto &part : split(text, ';')) {
            coeffs.push_back(element_from_digits(field, part));
        }
    } else if (field->degree() == 1) {
        for (const auto &part : split(text, ',')) {
            coeffs.push_back(field->from_integer(static_cast<int64_t>(parse_uint(part) % field->characteristic())));
        }
    } else {
        for (const auto &part : split(text, ',')) {
            coeffs.push_back(element_from_index(field, part));
        }
    }
    return PolyFunction(field, std::move(coeffs));
}

void validate(const RunConfig &c) {
    const auto &t = c.tolerances;
    for (const double v : {t.completeness, t.bound, t.positivity, t.rank, t.angle}) {
        if (!(v > 0.0)) {
            throw PovmError(ErrorCode::kInvalidArgument, "tolerances must be positive");
        }
    }
    if (needs_field(c.command)) {
        if (c.p == 0) {
            throw PovmError(ErrorCode::kInvalidArgument, "field characteristic required (--p or --field)");
        }
        if (!is_prime(c.p)) {
            throw PovmError(ErrorCode::kNotPrime, std::to_string(c.p) + " is not prime");
        }
        if (c.k < 1) {
            throw PovmError(ErrorCode::kInvalidArgument, "extension degree k must be at least 1");
        }
    }
    if (c.command == Command::kVerify && c.in_path.empty()) {
        throw PovmError(ErrorCode::kInvalidArgument, "verify requires --in");
    }
    if (c.command == Command::kSweep && c.q_list.empty()) {
        throw PovmError(ErrorCode::kInvalidArgument, "sweep requires --q");
    }
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        validate(config);
        switch (config.command) {
            case Command::kConstructQ:
                return run_construct_q(config, out);
            case Command::kConstructQ1:
                return run_construct_q1(config, out);
            case Command::kVerify:
                return run_verify(config, out);
            case Command::kFnCheck:
                return run_fn_check(config, out);
            case Command::kFnCount:
                return run_fn_count(config, out);
            case Command::kWelch:
                return run_welch(config, out);
            case Command::kLiBound:
                return run_libound(config, out);
            case Command::kSweep:
                return run_sweep(config, out);
        }
    } catch (const PovmError &ex) {
        err << error_record(error_code_name(ex.code()), ex.what()) << '\n';
        return kExitError;
    } catch (const std::exception &ex) {
        err << error_record("Internal", ex.what()) << '\n';
        return kExitError;
    }
    return kExitError;
}

int main_entry(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig config;
    std::string field_text;
    std::string construction_text = "q";
    std::string q_text;

    CLI::App app{"Construct and verify approximately symmetric informationally complete POVMs", "povmforge"};
    app.require_subcommand(1);

    auto add_field = [&](CLI::App *sub) {
        sub->add_option("--p", config.p, "Field characteristic");
        sub->add_option("--k", config.k, "Extension degree");
        sub->add_option("--field", field_text, "Field as p,k");
    };
    auto add_tolerances = [&](CLI::App *sub) {
        sub->add_option("--tol-completeness", config.tolerances.completeness, "Completeness tolerance per dimension");
        sub->add_option("--tol-bound", config.tolerances.bound, "Slack on every case bound");
        sub->add_option("--tol-positivity", config.tolerances.positivity, "Positivity tolerance");
        sub->add_option("--tol-rank", config.tolerances.rank, "Relative Gram rank threshold");
        sub->add_option("--workers", config.workers, "Worker threads (default POVMFORGE_WORKERS or 1)");
    };
    auto add_outputs = [&](CLI::App *sub) {
        sub->add_option("--json", config.json_path, "JSON output path");
        sub->add_option("--csv", config.csv_path, "Ledger CSV output path");
    };

    auto *construct_q = app.add_subcommand("construct-q", "Dimension-q construction from a 2-to-1 PN function");
    add_field(construct_q);
    construct_q->add_option("--f", config.f_text, "Coefficients, constant first (default x^2)");
    construct_q->add_option("--chi", config.chi_text, "Additive character index (default 1)");
    construct_q->add_flag("--verify,!--no-verify", config.verify, "Run every verification (default on)");
    add_outputs(construct_q);
    add_tolerances(construct_q);

    auto *construct_q1 = app.add_subcommand("construct-q1", "Dimension-(q+1) construction over GF(q^3)");
    add_field(construct_q1);
    construct_q1->add_flag("--verify,!--no-verify", config.verify, "Run every verification (default on)");
    add_outputs(construct_q1);
    add_tolerances(construct_q1);

    auto *verify = app.add_subcommand("verify", "Re-verify a saved ensemble");
    verify->add_option("--in", config.in_path, "Ensemble JSON")->required();
    add_outputs(verify);
    add_tolerances(verify);

    auto *fn_check = app.add_subcommand("fn-check", "Test a polynomial for the 2-to-1 and PN properties");
    add_field(fn_check);
    fn_check->add_option("--f", config.f_text, "Coefficients, constant first")->required();
    fn_check->add_option("--json", config.json_path, "JSON output path");

    auto *fn_count = app.add_subcommand("fn-count", "Count 2-to-1 maps on GF(q)");
    add_field(fn_count);
    fn_count->add_flag("--brute", config.brute, "Also enumerate every map (q <= 5)");
    fn_count->add_option("--json", config.json_path, "JSON output path");

    auto *welch = app.add_subcommand("welch", "Codebook coherence against the Welch bound");
    add_field(welch);
    welch->add_option("--construction", construction_text, "q or q1");
    welch->add_option("--f", config.f_text, "Coefficients for the dimension-q codebook");
    welch->add_option("--chi", config.chi_text, "Additive character index");
    welch->add_option("--json", config.json_path, "JSON output path");

    auto *libound = app.add_subcommand("libound", "Difference structure and character sums of the S set");
    add_field(libound);
    libound->add_option("--json", config.json_path, "JSON output path");
    add_tolerances(libound);

    auto *sweep = app.add_subcommand("sweep", "Ledger rows over a grid of q");
    sweep->add_option("--q", q_text, "Comma-separated prime powers")->required();
    sweep->add_option("--construction", construction_text, "q or q1");
    sweep->add_option("--f", config.f_text, "Coefficient enumeration indices (default 0,0,1)");
    sweep->add_option("--csv", config.csv_path, "Aggregated CSV path");
    add_tolerances(sweep);

    const auto args = expand_nested(argc, argv);
    std::vector<const char *> ptrs;
    for (const auto &a : args) {
        ptrs.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(ptrs.size()), ptrs.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << error_record("ParseError", e.what()) << '\n';
        return kExitError;
    }

    try {
        if (!field_text.empty()) {
            const auto parts = parse_uint_list(field_text);
            if (parts.size() != 2) {
                throw PovmError(ErrorCode::kParseError, "--field expects p,k");
            }
            config.p = static_cast<uint32_t>(parts[0]);
            config.k = static_cast<uint32_t>(parts[1]);
        }
        if (construct_q->parsed()) {
            config.command = Command::kConstructQ;
        } else if (construct_q1->parsed()) {
            config.command = Command::kConstructQ1;
        } else if (verify->parsed()) {
            config.command = Command::kVerify;
        } else if (fn_check->parsed()) {
            config.command = Command::kFnCheck;
        } else if (fn_count->parsed()) {
            config.command = Command::kFnCount;
        } else if (welch->parsed()) {
            config.command = Command::kWelch;
            config.construction = parse_construction(construction_text);
        } else if (libound->parsed()) {
            config.command = Command::kLiBound;
        } else {
            config.command = Command::kSweep;
            config.construction = parse_construction(construction_text);
            config.q_list = parse_uint_list(q_text);
        }
    } catch (const PovmError &ex) {
        err << error_record(error_code_name(ex.code()), ex.what()) << '\n';
        return kExitError;
    }
    return run(config, out, err);
}

}  // namespace povmforge::cli
