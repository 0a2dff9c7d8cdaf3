#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qecc/pauli.hpp"
#include "qecc/stabilizer.hpp"

namespace qecc {

// -------------------------------------------------------------------------
// Minimal supports and minimal subcodes
// -------------------------------------------------------------------------

// All minimal supports of S: supports of nonidentity elements such that no
// element's support is strictly contained in them. Sorted lexicographically.
std::vector<SupportSet> minimal_supports(const StabilizerGroup& s);

// Number of nonidentity elements supported exactly on a minimal omega.
// d = 2 only; always 1 or 3, and 3 forces |omega| even.
int a_omega(const StabilizerGroup& s, const SupportSet& omega);

// Structure of the minimal subcode on omega. For d = 2 this wraps a_omega;
// for d > 2 it reports the number of generators N_g in {1, 2}, the subgroup
// form <Z^m> or <X^{m1}, Z^{m2}> (m, m1, m2 divisors of d), and the common
// order of the single-coordinate factors. When a per-coordinate local
// Clifford normalization onto the standard form exists it is returned.
struct MinimalSubcodeInfo {
    SupportSet omega;
    int a_omega = -1;  // d = 2 only
    int n_g = 0;
    int m = 0;            // N_g = 1 form <Z^m>
    int m1 = 0, m2 = 0;   // N_g = 2 form <X^{m1}, Z^{m2}>
    int order = 0;        // exponent of the subcode group
    bool normalization_found = false;
    std::vector<std::array<int, 4>> normalization;  // per coordinate of omega
    std::string form() const;
};

MinimalSubcodeInfo classify_minimal_subcode(const StabilizerGroup& s, const SupportSet& omega);

// Restricted minimal elements through coordinate j: elements of
// S_j = { R : j in supp(R) } whose support contains no other S_j support.
std::vector<PauliElement> restricted_minimal_elements(const StabilizerGroup& s, int j);

// -------------------------------------------------------------------------
// Single-qudit subgroups and Pi
// -------------------------------------------------------------------------

struct SingleQuditSubgroupInfo {
    int coordinate = 0;
    StabilizerGroup subgroup;  // S<i> = { R in S : R acts as I on i }
    uint64_t index = 1;        // [S : S<i>]; in {1,2,4} for d=2, <= d^2 always
    SupportSet support;        // union of supports of S<i>
};

SingleQuditSubgroupInfo single_qudit_subgroup(const StabilizerGroup& s, int i);

struct PiSubgroupInfo {
    StabilizerGroup pi;  // smallest subgroup containing every S<i>
    uint64_t index = 1;  // [S : Pi]
    // "trivial" (index 1), "proper" (1 < index < d^2), or "full-support-pair"
    // (index d^2: S = {I, g_1, ..., g_{d^2-1}}, all of full support and
    // pairwise different on every coordinate; for d = 2 this is the
    // [2m, 2m-2, 2] family).
    std::string tag;
    bool structure_verified = false;  // the full-support characterization
    int two_m = 0;                    // d = 2, index 4: n = 2m
    bool lc_witness_found = false;    // per-coordinate Cliffords onto <X^n, Z^n>
    std::vector<std::array<int, 4>> lc_witness;
};

PiSubgroupInfo pi_subgroup(const StabilizerGroup& s, bool search_lc_witness = true);

// -------------------------------------------------------------------------
// Degenerate factors
// -------------------------------------------------------------------------

struct DegenerateFactors {
    // Coordinate pairs {i, j} where S factors as S' (x) (maximally entangled
    // pair stabilizer): |S_{ij}| = d^2 with no weight-1 element inside, and
    // |S_{ij}| * |S<ij>| = |S|.
    std::vector<std::pair<int, int>> bell_pairs;
    // Coordinates carrying weight-1 stabilizer elements.
    std::vector<int> trivial_coordinates;
};

DegenerateFactors detect_degenerate_factors(const StabilizerGroup& s);

// -------------------------------------------------------------------------
// Per-coordinate transversal-gate constraints
// -------------------------------------------------------------------------

enum class ConstraintClass {
    Clifford,
    SemiClifford,              // d = 2
    GeneralizedSemiClifford,   // d = 2
    SubgroupInvariant,         // d > 2
    SpanInvariant,             // d > 2
    Unconstrained,             // degenerate coordinates only
};

std::string to_string(ConstraintClass c);

struct CoordinateConstraint {
    int coordinate = 0;
    ConstraintClass cls = ConstraintClass::Unconstrained;
    bool degenerate = false;        // Bell factor or trivial qudit at j
    std::string degenerate_reason;  // empty when not degenerate
    // Which machinery produced the class.
    std::string coverage;  // "minimal-support", "restricted-minimal", "single-qudit-subgroup"
    SupportSet witness_support;     // lexicographically first qualifying support
    // d = 2: the single preserved Pauli axis ("X","Y","Z") for
    // (Generalized)SemiClifford. d > 2: generators of the preserved subgroup
    // as (x exponent, z exponent) pairs.
    std::string witness_pauli;
    std::vector<std::array<int, 2>> witness_subgroup;
};

CoordinateConstraint classify_coordinate(const StabilizerGroup& s, int j);

// Shared precomputation for classifying many coordinates of one group.
struct StructureContext {
    std::vector<SupportSet> minimal;
    DegenerateFactors degenerate;
};
StructureContext build_structure_context(const StabilizerGroup& s);
CoordinateConstraint classify_coordinate(const StabilizerGroup& s, int j,
                                         const StructureContext& ctx);

// Single-qudit Pauli name for exponents at d = 2.
std::string pauli_axis_name(int xe, int ze);

}  // namespace qecc
