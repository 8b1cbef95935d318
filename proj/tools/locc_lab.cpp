// Copyright 2026 The locc-lab Authors
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

// locc_lab: command-line driver for the protocol catalog.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "locc/catalog.hpp"
#include "locc/engine.hpp"
#include "locc/serialize.hpp"

namespace {

using namespace locc;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_dims(const std::string &text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int d = 0;
        try {
            d = std::stoi(item, &used);
        } catch (const std::exception &) {
            throw UsageError("bad --dims entry '" + item + "'");
        }
        if (used != item.size()) {
            throw UsageError("bad --dims entry '" + item + "'");
        }
        out.push_back(d);
    }
    if (out.empty()) {
        throw UsageError("--dims is empty");
    }
    return out;
}

std::string dims_text(const std::vector<int> &dims) {
    std::string s;
    for (std::size_t k = 0; k < dims.size(); k++) {
        s += (k ? "," : "") + std::to_string(dims[k]);
    }
    return s;
}

std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to path, or stdout when path is empty.
void emit(const std::string &path, const std::string &text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

Json parse_json(const std::string &text, const std::string &what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &ex) {
        throw UsageError(what + " is not valid JSON: " + ex.what());
    }
}

/// "uniform", or a JSON file holding either a weight array in member order or an object label -> weight
/// (absent labels get weight 0). The engine normalizes.
std::vector<double> load_prior(const std::string &spec, const Ensemble &e) {
    if (spec.empty() || spec == "uniform") {
        return {};
    }
    Json j = parse_json(read_file(spec), "prior " + spec);
    std::vector<double> w(e.size(), 0.0);
    if (j.is_array()) {
        if (j.size() != e.size()) {
            throw UsageError("prior has " + std::to_string(j.size()) + " weights, ensemble has " +
                             std::to_string(e.size()) + " members");
        }
        for (std::size_t k = 0; k < j.size(); k++) {
            if (!j[k].is_number()) {
                throw UsageError("prior weights must be numbers");
            }
            w[k] = j[k].get<double>();
        }
    } else if (j.is_object()) {
        for (const auto &[label, value] : j.items()) {
            if (!value.is_number()) {
                throw UsageError("prior weight for " + label + " is not a number");
            }
            w[e.index_of(label)] = value.get<double>();
        }
    } else {
        throw UsageError("prior must be a JSON array or object");
    }
    return w;
}

struct Verification {
    RunReport report;
    std::vector<int> dims;
    int theorem = 0;
    bool has_declared = false;
    CostTally declared;
    CostComparison costs;
    bool ok = false;
};

Json verification_json(const Verification &v) {
    Json j = report_to_json(v.report);
    Json check;
    if (v.theorem) {
        check["theorem"] = v.theorem;
    }
    check["dims"] = v.dims;
    check["discrimination"] = v.report.success;
    check["orthogonality_preserved"] = v.report.orthogonality.violations.empty();
    if (v.has_declared) {
        check["declared"] = tally_to_json(v.declared);
        check["cost_match"] = v.costs.match;
        check["cost_discrepancies"] = v.costs.discrepancies;
    }
    check["ok"] = v.ok;
    j["verification"] = check;
    return j;
}

std::string verification_text(const Verification &v) {
    std::ostringstream out;
    const RunReport &r = v.report;
    double ebits = r.expected.ebits;
    out << r.protocol << " on " << r.ensemble << "\n";
    out << r.identified_count() << "/" << r.members.size() << " identified, " << fixed(ebits, 3)
        << (std::abs(ebits - 1.0) < 1e-12 ? " ebit" : " ebits") << "\n";
    for (const auto &[key, entry] : r.expected.entries) {
        out << "  " << key << ": " << format12(entry.copies) << " copies x " << format12(entry.ebits_per_copy)
            << " ebit\n";
    }
    if (v.theorem == 5) {
        auto f = cost_formula_thm5(v.dims);
        out << "expected BD-EPR copies: " << fixed(r.expected.copies("EPR(2)@B,D"), 6) << " = " << f.r << "/" << f.s
            << "\n";
    }
    if (v.theorem == 7) {
        auto f = cost_formula_thm7(v.dims);
        out << "expected AB-EPR copies: " << fixed(r.expected.copies("EPR(2)@A,B"), 6) << " = " << f.r << "/" << f.s
            << "\n";
    }
    for (const auto &note : r.notes) {
        out << "note: " << note << "\n";
    }
    out << "orthogonality: " << r.orthogonality.outcomes_checked << " outcomes, max overlap "
        << format12(r.orthogonality.max_overlap) << ", " << r.orthogonality.violations.size() << " violations\n";
    for (const auto &x : r.orthogonality.violations) {
        out << "  violation at " << x.path << ": " << x.first << " vs " << x.second << " overlap " << format12(x.overlap)
            << "\n";
    }
    if (v.has_declared) {
        out << "declared cost: " << format12(v.costs.declared_ebits) << " ebits, simulated "
            << format12(v.costs.simulated_ebits) << (v.costs.match ? " (match)" : " (MISMATCH)") << "\n";
        for (const auto &d : v.costs.discrepancies) {
            out << "  " << d << "\n";
        }
    }
    if (!r.failures.empty()) {
        out << "failures:\n";
        for (const auto &f : r.failures) {
            out << "  " << f.kind << " at " << f.path << ": " << f.message << "\n";
        }
    }
    out << (v.ok ? "OK" : "FAILED") << "\n";
    return out.str();
}

std::string render(const Verification &v, const std::string &format) {
    if (format == "json") {
        return verification_json(v).dump(2) + "\n";
    }
    if (format == "csv") {
        return report_to_csv(v.report);
    }
    return verification_text(v);
}

Verification verify_theorem(int id, std::vector<int> dims, const std::string &prior_spec) {
    Verification v;
    v.theorem = id;
    if (dims.empty()) {
        dims = theorem_info(id).default_dims;
    }
    check_dims(id, dims);
    v.dims = dims;
    ProtocolTree p = build(id, dims);
    Ensemble e = theorem_ensemble(id, dims);
    RunOptions options;
    options.prior = load_prior(prior_spec, e);
    v.report = run(p, e, options);
    v.declared = theorem_expected_cost(id, dims);
    v.has_declared = true;
    // The declared configuration assumes the uniform prior; any other prior is reported, not judged.
    if (options.prior.empty()) {
        v.costs = compare_costs(v.declared, v.report.expected);
    } else {
        v.costs = compare_costs(v.declared, v.report.expected, std::numeric_limits<double>::infinity());
        v.report.notes.push_back("non-uniform prior: expected cost is not compared with the declared configuration");
    }
    v.ok = v.report.success && v.report.orthogonality.violations.empty() && v.costs.match;
    return v;
}

int cmd_list() {
    for (const auto &t : theorems()) {
        std::cout << "theorem " << t.id << "  ensemble " << t.ensemble << "  dims " << dims_text(t.default_dims)
                  << "  " << t.summary << "\n";
    }
    return kExitOk;
}

struct VerifyArgs {
    int theorem = 0;
    std::string dims;
    std::string prior = "uniform";
    std::string format = "text";
    std::string out;
    std::string protocol;
    std::string ensemble;
};

int cmd_verify(const VerifyArgs &a) {
    Verification v;
    if (!a.protocol.empty()) {
        if (a.ensemble.empty()) {
            throw UsageError("--protocol needs --ensemble");
        }
        std::vector<int> dims = a.dims.empty() ? std::vector<int>{} : parse_dims(a.dims);
        ProtocolTree p;
        try {
            p = protocol_from_json(parse_json(read_file(a.protocol), "protocol " + a.protocol));
        } catch (const StructuralError &ex) {
            throw UsageError(std::string("malformed protocol: ") + ex.what());
        }
        Ensemble e = make_ensemble(a.ensemble, dims);
        v.dims = dims;
        RunOptions options;
        options.prior = load_prior(a.prior, e);
        v.report = run(p, e, options);
        v.ok = v.report.success && v.report.orthogonality.violations.empty();
    } else {
        if (a.theorem == 0) {
            throw UsageError("verify needs --theorem or --protocol");
        }
        v = verify_theorem(a.theorem, a.dims.empty() ? std::vector<int>{} : parse_dims(a.dims), a.prior);
    }
    emit(a.out, render(v, a.format));
    return v.ok ? kExitOk : kExitFailed;
}

std::string copies_text(const CostTally &t) {
    std::string s;
    for (const auto &[key, entry] : t.entries) {
        s += (s.empty() ? "" : "; ") + key + "=" + format12(entry.copies);
    }
    return s;
}

int cmd_cost_table(const std::string &dims_arg, const std::string &format, const std::string &path) {
    std::vector<int> dims = dims_arg.empty() ? std::vector<int>{3, 3, 3, 3} : parse_dims(dims_arg);
    for (int id = 3; id <= 7; id++) {
        check_dims(id, dims);
    }
    bool all = true;
    Json rows = Json::array();
    std::ostringstream csv;
    std::ostringstream text;
    csv << "theorem,copies,declared_ebits,simulated_ebits,delta\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%-8s %-16s %-16s %-12s  %s\n", "theorem", "declared_ebits", "simulated_ebits",
                  "delta", "copies");
    text << buf;
    for (int id = 3; id <= 7; id++) {
        Verification v = verify_theorem(id, dims, "uniform");
        all = all && v.ok;
        double delta = v.report.expected.ebits - v.declared.ebits;
        std::string copies = copies_text(v.report.expected);
        Json row;
        row["theorem"] = id;
        row["copies"] = Json::object();
        for (const auto &[key, entry] : v.report.expected.entries) {
            row["copies"][key] = round12(entry.copies);
        }
        row["declared_ebits"] = round12(v.declared.ebits);
        row["simulated_ebits"] = round12(v.report.expected.ebits);
        row["delta"] = round12(delta);
        row["ok"] = v.ok;
        rows.push_back(row);
        csv << id << ",\"" << copies << "\"," << format12(v.declared.ebits) << "," << format12(v.report.expected.ebits)
            << "," << format12(delta) << "\n";
        std::snprintf(buf, sizeof(buf), "%-8d %-16s %-16s %-12s  %s\n", id, format12(v.declared.ebits).c_str(),
                      format12(v.report.expected.ebits).c_str(), format12(delta).c_str(), copies.c_str());
        text << buf;
    }
    if (format == "json") {
        Json j;
        j["format"] = "locc-lab/cost-table";
        j["dims"] = dims;
        j["rows"] = rows;
        emit(path, j.dump(2) + "\n");
    } else if (format == "csv") {
        emit(path, csv.str());
    } else {
        emit(path, text.str());
    }
    return all ? kExitOk : kExitFailed;
}

int cmd_fig41(const std::string &path, int d3_max, int d4_max) {
    if (d3_max < 3 || d4_max < 3) {
        throw UsageError("fig41 maxima must be >= 3");
    }
    std::ostringstream out;
    out << "d3,d4,thm4_ebits,thm5_ebits\n";
    for (const auto &row : fig41_data(3, d3_max, 3, d4_max)) {
        out << row.d3 << "," << row.d4 << "," << format12(row.thm4_ebits) << "," << format12(row.thm5_ebits) << "\n";
    }
    emit(path, out.str());
    return kExitOk;
}

int cmd_ensemble(std::string kind, int theorem, const std::string &dims_arg, const std::string &path) {
    std::vector<int> dims = dims_arg.empty() ? std::vector<int>{} : parse_dims(dims_arg);
    if (theorem) {
        if (dims.empty()) {
            dims = theorem_info(theorem).default_dims;
        }
        check_dims(theorem, dims);
        emit(path, ensemble_to_json(theorem_ensemble(theorem, dims)).dump(2) + "\n");
        return kExitOk;
    }
    if (kind.empty()) {
        throw UsageError("ensemble needs --kind or --theorem");
    }
    if (dims.empty() && kind != "ghz4" && kind != "ghz5") {
        dims = kind == "sym5" ? std::vector<int>{3, 3, 3, 3, 3} : std::vector<int>{3, 3, 3, 3};
    }
    emit(path, ensemble_to_json(make_ensemble(kind, dims)).dump(2) + "\n");
    return kExitOk;
}

int cmd_export_protocol(int theorem, const std::string &dims_arg, const std::string &path) {
    std::vector<int> dims = dims_arg.empty() ? theorem_info(theorem).default_dims : parse_dims(dims_arg);
    check_dims(theorem, dims);
    emit(path, protocol_to_json(build(theorem, dims)).dump(2) + "\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"locc-lab: simulate entanglement-assisted LOCC discrimination protocols"};
    app.require_subcommand(1);

    auto *list = app.add_subcommand("list", "List the protocol catalog");

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "Run a protocol against its ensemble and check every claim");
    verify->add_option("--theorem", va.theorem, "Catalog entry (1-10)")->check(CLI::Range(1, 10));
    verify->add_option("--dims", va.dims, "Comma-separated local dimensions, e.g. 3,3,3,3");
    verify->add_option("--prior", va.prior, "uniform, or a JSON file of weights");
    verify->add_option("--format", va.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_option("--out", va.out, "Output file (default stdout)");
    verify->add_option("--protocol", va.protocol, "Protocol JSON file to run instead of a catalog entry");
    verify->add_option("--ensemble", va.ensemble, "Ensemble kind for --protocol (ghz4, ghz5, asym4, sym4, sym5)");

    std::string ct_dims, ct_format = "text", ct_out;
    auto *cost_table = app.add_subcommand("cost-table", "Declared vs simulated cost for theorems 3-7");
    cost_table->add_option("--dims", ct_dims, "Comma-separated local dimensions (default 3,3,3,3)");
    cost_table->add_option("--format", ct_format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    cost_table->add_option("--out", ct_out, "Output file (default stdout)");

    std::string fig_out;
    int d3_max = 20, d4_max = 20;
    auto *fig41 = app.add_subcommand("fig41", "Total cost of theorems 4 and 5 over a (d3, d4) grid with d1 = d2 = 4");
    fig41->add_option("--out", fig_out, "CSV file (default stdout)");
    fig41->add_option("--d3-max", d3_max, "Largest d3 (default 20)");
    fig41->add_option("--d4-max", d4_max, "Largest d4 (default 20)");

    std::string ens_kind, ens_dims, ens_out;
    int ens_theorem = 0;
    auto *ensemble = app.add_subcommand("ensemble", "Export an ensemble as JSON");
    ensemble->add_option("--kind", ens_kind, "ghz4, ghz5, asym4, sym4 or sym5");
    ensemble->add_option("--theorem", ens_theorem, "Use the ensemble of a catalog entry")->check(CLI::Range(1, 10));
    ensemble->add_option("--dims", ens_dims, "Comma-separated local dimensions");
    ensemble->add_option("--out", ens_out, "Output file (default stdout)");

    int exp_theorem = 0;
    std::string exp_dims, exp_out;
    auto *export_protocol = app.add_subcommand("export-protocol", "Export a catalog protocol tree as JSON");
    export_protocol->add_option("--theorem", exp_theorem, "Catalog entry (1-10)")
        ->required()
        ->check(CLI::Range(1, 10));
    export_protocol->add_option("--dims", exp_dims, "Comma-separated local dimensions");
    export_protocol->add_option("--out", exp_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*list) {
            return cmd_list();
        }
        if (*verify) {
            return cmd_verify(va);
        }
        if (*cost_table) {
            return cmd_cost_table(ct_dims, ct_format, ct_out);
        }
        if (*fig41) {
            return cmd_fig41(fig_out, d3_max, d4_max);
        }
        if (*ensemble) {
            return cmd_ensemble(ens_kind, ens_theorem, ens_dims, ens_out);
        }
        if (*export_protocol) {
            return cmd_export_protocol(exp_theorem, exp_dims, exp_out);
        }
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitUsage;
}
