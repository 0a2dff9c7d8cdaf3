#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qecc/catalog.hpp"
#include "qecc/errors.hpp"
#include "qecc/report.hpp"

using namespace qecc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// A code argument is either a file path or a catalog name.
CodeSpec load_code(const std::string& arg, std::size_t max_enum) {
    std::ifstream probe(arg);
    if (probe) {
        std::string name = arg;
        auto slash = name.find_last_of('/');
        if (slash != std::string::npos) name = name.substr(slash + 1);
        auto dot = name.rfind('.');
        if (dot != std::string::npos) name = name.substr(0, dot);
        return code_spec_from_text(read_file(arg), name, max_enum);
    }
    return catalog_code(arg, max_enum);
}

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

std::vector<int> parse_perm(const std::string& list, int total) {
    std::vector<int> perm;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) perm.push_back(std::stoi(tok) - 1);
    if (int(perm.size()) != total)
        throw InputError("permutation must list all " + std::to_string(total) + " coordinates");
    return perm;
}

SupportSet parse_support(const std::string& list) {
    SupportSet omega;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ',')) omega.push_back(std::stoi(tok) - 1);
    std::sort(omega.begin(), omega.end());
    omega.erase(std::unique(omega.begin(), omega.end()), omega.end());
    return omega;
}

int cmd_analyze(const std::string& file, const std::string& json_out, std::size_t max_enum) {
    CodeSpec spec = load_code(file, max_enum);
    AnalysisReport rep = run_analysis(spec);
    ordered_json j = report_to_json(rep);
    std::cout << "code " << rep.code_name << ": d=" << rep.d << " n=" << rep.n
              << " k=" << rep.k << " |S|=" << rep.group_order << "\n";
    std::cout << "minimal supports: " << rep.minimal_subcodes.size() << "\n";
    for (const auto& c : rep.coordinates) {
        std::cout << "  coordinate " << c.coordinate + 1 << ": " << to_string(c.cls);
        if (c.degenerate) std::cout << " (degenerate: " << c.degenerate_reason << ")";
        if (!c.witness_pauli.empty()) std::cout << " witness " << c.witness_pauli;
        std::cout << "\n";
    }
    if (rep.pi)
        std::cout << "pi: index " << rep.pi->index << " (" << rep.pi->tag << ")\n";
    bool ok = true;
    for (const auto& [name, verdict] : rep.check_verdicts) {
        std::cout << name << ": " << verdict << "\n";
        if (verdict != "ok") ok = false;
    }
    for (const auto& [section, msg] : rep.section_errors)
        std::cout << "section " << section << " skipped: " << msg << "\n";
    if (!json_out.empty()) write_json(json_out, j);
    if (!ok) return kExitViolation;
    return rep.section_errors.empty() ? kExitOk : kExitResource;
}

int cmd_verify_lemmas(int d, int n, bool exhaustive, int samples, uint64_t seed,
                      const std::string& json_out) {
    SweepConfig cfg;
    cfg.d = d;
    cfg.n = n;
    cfg.exhaustive = exhaustive;
    cfg.samples = samples;
    cfg.seed = seed;
    SweepReport rep = verify_lemmas(cfg);
    std::cout << "groups tested: " << rep.groups_tested << "\n";
    for (const auto& [name, count] : rep.checks) {
        std::cout << name << ": " << count.checked << " checks, " << count.violations
                  << " violations\n";
        for (const auto& ce : count.counterexamples) std::cout << "  counterexample: " << ce << "\n";
    }
    std::cout << "full-support pairs: " << rep.index_d2_groups << " (lc witness "
              << rep.lc_witness_found << " found, " << rep.lc_witness_missing << " missing)\n";
    if (!json_out.empty()) write_json(json_out, sweep_to_json(rep));
    return rep.all_clean() ? kExitOk : kExitViolation;
}

int cmd_check_gate(const std::string& file, const std::string& gate_file, int blocks,
                   const std::string& omega_list, const std::string& json_out,
                   std::size_t max_enum) {
    CodeSpec spec = load_code(file, max_enum);
    TransversalGate gate = parse_gate_text(read_file(gate_file), spec.stabilizer.n);
    if (blocks > 0 && gate.r != blocks)
        throw InputError("gate file blocks= disagrees with --blocks");
    std::optional<SupportSet> omega;
    if (!omega_list.empty()) omega = parse_support(omega_list);
    PreservationResult res = preserves_code(gate, spec, omega);
    std::cout << (res.preserves ? "preserves" : "does NOT preserve") << " (residual "
              << res.residual << ", " << res.method << ")\n";
    if (!json_out.empty()) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["tool_version"] = kToolVersion;
        j["preserves"] = res.preserves;
        j["residual"] = res.residual;
        j["method"] = res.method;
        write_json(json_out, j);
    }
    return res.preserves ? kExitOk : kExitViolation;
}

int cmd_automorphism(const std::string& file, const std::string& perm_list,
                     const std::string& gate_file, const std::string& json_out,
                     std::size_t max_enum) {
    CodeSpec spec = load_code(file, max_enum);
    int n = spec.stabilizer.n;
    TransversalGate gate =
        gate_file.empty()
            ? bitwise_gate(spec.stabilizer.d, n, CMatrix::identity(spec.stabilizer.d))
            : parse_gate_text(read_file(gate_file), n);
    std::vector<int> perm = parse_perm(perm_list, n * gate.r);
    PreservationResult res = check_code_automorphism(gate, perm, spec);
    std::cout << (res.preserves ? "automorphism" : "NOT an automorphism") << " (residual "
              << res.residual << ", " << res.method << ")\n";
    if (!json_out.empty()) {
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["tool_version"] = kToolVersion;
        j["automorphism"] = res.preserves;
        j["residual"] = res.residual;
        j["method"] = res.method;
        write_json(json_out, j);
    }
    return res.preserves ? kExitOk : kExitViolation;
}

int cmd_catalog(const std::string& name) {
    if (name.empty()) {
        for (const auto& c : catalog_names()) std::cout << c << "\n";
        return kExitOk;
    }
    CodeSpec spec = catalog_code(name);
    std::cout << print_code_file(spec);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact structure analysis for qudit stabilizer codes and their transversal gates"};
    app.require_subcommand(1);
    std::size_t max_enum = kGroupEnumBound;
    app.add_option("--max-elements", max_enum, "group enumeration bound");

    std::string file, json_out, gate_file, omega_list, perm_list, catalog_name;
    int d = 2, n = 3, samples = 500, blocks = 0;
    uint64_t seed = 1;
    bool exhaustive = false;

    auto* analyze = app.add_subcommand("analyze", "structural analysis of a code");
    analyze->add_option("file", file, "code file or catalog name")->required();
    analyze->add_option("--json", json_out, "write the JSON report here");

    auto* lemmas = app.add_subcommand("verify-lemmas", "sweep a corpus of stabilizer groups");
    lemmas->add_option("--d", d, "qudit dimension")->required();
    lemmas->add_option("--n", n, "qudit count")->required();
    lemmas->add_flag("--exhaustive", exhaustive, "all canonical groups (d=2, n<=4)");
    lemmas->add_option("--samples", samples, "random sample count");
    lemmas->add_option("--seed", seed, "random seed");
    lemmas->add_option("--json", json_out, "write the JSON report here");

    auto* check = app.add_subcommand("check-gate", "does a transversal gate preserve a code");
    check->add_option("file", file, "code file or catalog name")->required();
    check->add_option("--gate", gate_file, "gate file")->required();
    check->add_option("--blocks", blocks, "encoded block count r (default: from the gate file)");
    check->add_option("--omega", omega_list, "restrict to a subcode support (1-based, comma-separated)");
    check->add_option("--json", json_out, "write the JSON report here");

    auto* morph = app.add_subcommand("automorphism", "verify a candidate code automorphism");
    morph->add_option("file", file, "code file or catalog name")->required();
    morph->add_option("--perm", perm_list, "coordinate permutation (1-based images)")->required();
    morph->add_option("--gate", gate_file, "optional local gate file");
    morph->add_option("--json", json_out, "write the JSON report here");

    auto* cat = app.add_subcommand("catalog", "list built-in codes or print one");
    cat->add_option("name", catalog_name, "catalog entry");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(file, json_out, max_enum);
        if (lemmas->parsed())
            return cmd_verify_lemmas(d, n, exhaustive, samples, seed, json_out);
        if (check->parsed())
            return cmd_check_gate(file, gate_file, blocks, omega_list, json_out, max_enum);
        if (morph->parsed())
            return cmd_automorphism(file, perm_list, gate_file, json_out, max_enum);
        if (cat->parsed()) return cmd_catalog(catalog_name);
    } catch (const ResourceError& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return kExitResource;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
