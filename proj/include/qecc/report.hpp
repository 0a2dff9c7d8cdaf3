#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qecc/stabilizer.hpp"
#include "qecc/structure.hpp"
#include "qecc/unitary.hpp"

namespace qecc {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

using ordered_json = nlohmann::ordered_json;

// -------------------------------------------------------------------------
// Code files
//
//   d=<int> n=<int>
//   stabilizer:
//   <one generator per line>
//   gauge:            (optional)
//   <one generator per line>
//
// Generators: for d = 2 a length-n string over {I, X, Y, Z}; for any d a
// comma-separated list of x<a>z<b> tokens with an optional leading w<k>
// tau-phase token. '#' starts a comment. Parse-then-print round-trips to
// canonical form.
// -------------------------------------------------------------------------

struct ParsedCodeFile {
    int d = 2;
    int n = 1;
    std::vector<PauliElement> stabilizer_generators;
    std::vector<PauliElement> gauge_generators;
};

ParsedCodeFile parse_code_text(const std::string& text);
CodeSpec code_spec_from_text(const std::string& text, const std::string& name,
                             std::size_t max_enum = kGroupEnumBound);
std::string print_code_file(const CodeSpec& spec);

PauliElement parse_generator_line(const std::string& line, int d, int n);
std::string print_generator(const PauliElement& p);

// -------------------------------------------------------------------------
// Gate files
//
//   d=<int> blocks=<int>
//   all: <factors>
//   <coordinate>: <factors>       (1-based coordinates)
//
// Factors are whitespace-separated and combined by tensor product across the
// r block copies: named gates I, H, F, P, T, Tdag, Z(theta), X(theta), or
// matrix [[..],[..]] with [re, im] entries. theta accepts decimals and
// pi-fractions like pi/8, -3*pi/4. Unlisted coordinates default to identity.
// -------------------------------------------------------------------------

TransversalGate parse_gate_text(const std::string& text, int n);
CMatrix named_gate(const std::string& name, int d);
CMatrix rotation_gate(char axis, double theta);  // e^{i theta Z} / e^{i theta X}, d = 2

// -------------------------------------------------------------------------
// Analysis reports
// -------------------------------------------------------------------------

struct AnalysisReport {
    std::string code_name;
    int d = 2, n = 0, k = 0, gauge_k = 0, delta = -1;
    uint64_t group_order = 0;
    std::vector<MinimalSubcodeInfo> minimal_subcodes;
    std::vector<CoordinateConstraint> coordinates;
    std::vector<SingleQuditSubgroupInfo> single_qudit;
    std::optional<PiSubgroupInfo> pi;
    std::optional<DegenerateFactors> degenerate;
    // Per-lemma verdicts for this code: name -> "ok" / "violated: ..." /
    // "skipped: ...".
    std::map<std::string, std::string> check_verdicts;
    // Section name -> error message for parts that hit resource bounds.
    std::map<std::string, std::string> section_errors;
};

AnalysisReport run_analysis(const CodeSpec& spec);
ordered_json report_to_json(const AnalysisReport& report);

// -------------------------------------------------------------------------
// Lemma sweeps
// -------------------------------------------------------------------------

struct SweepConfig {
    int d = 2;
    int n = 3;
    bool exhaustive = false;  // d = 2, n <= 4 only
    int samples = 500;
    uint64_t seed = 1;
};

struct CheckCount {
    uint64_t checked = 0;
    uint64_t violations = 0;
    std::vector<std::string> counterexamples;  // at most a handful
};

struct SweepReport {
    SweepConfig config;
    uint64_t groups_tested = 0;
    // "lemma2": A_omega in {1,3} and triples have even weight  (d = 2)
    // "lemma3": [S : S<i>] in {1,2,4}                          (d = 2)
    // "lemma4": [S : Pi] in {1,2,4}; index 4 matches the
    //           [2m, 2m-2, 2] structure                        (d = 2)
    // "lemma5": [S : S<i>] <= d^2                              (d > 2)
    // "lemma6": [S : Pi] <= d^2; index d^2 matches the
    //           full-support-pair structure                    (d > 2)
    // "mj":     restricted minimal elements at uncovered j sharing a support
    //           share the Pauli at j
    std::map<std::string, CheckCount> checks;
    uint64_t index_d2_groups = 0;       // groups with [S : Pi] = d^2
    uint64_t lc_witness_found = 0;      // among those, witness located (d <= 4)
    uint64_t lc_witness_missing = 0;
    bool all_clean() const;
};

SweepReport verify_lemmas(const SweepConfig& config);
ordered_json sweep_to_json(const SweepReport& report);

}  // namespace qecc
