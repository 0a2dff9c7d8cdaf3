#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qecc/dense.hpp"
#include "qecc/pauli.hpp"
#include "qecc/stabilizer.hpp"

namespace qecc {

// -------------------------------------------------------------------------
// Pauli transfer matrices
// -------------------------------------------------------------------------

// Conjugation coefficients of a unitary in the nonidentity Pauli basis:
// U R_s U^dag = sum_t alpha_ts R_t over the canonical order-p basis
// representatives. Rows and columns are orthonormal; for d = 2 all entries
// are real. Basis index: mixed-radix over coordinates of (x * d + z), with
// the identity (index 0) omitted, so the matrix has side d^{2r} - 1.
struct PauliTransferMatrix {
    int d = 2;
    int r = 1;
    CMatrix alpha;

    std::size_t side() const { return alpha.rows(); }
    // Exponent vectors of basis index i (flattened 1..side()).
    static PauliElement basis_element(int d, int r, std::size_t index);
    static std::size_t basis_index(const PauliElement& p);
};

PauliTransferMatrix transfer_matrix(const CMatrix& u, int d, int r);

// -------------------------------------------------------------------------
// Unitary classification
// -------------------------------------------------------------------------

enum class UnitaryClass { Clifford, SemiClifford, GeneralizedSemiClifford, General };
std::string to_string(UnitaryClass c);

struct UnitaryClassification {
    UnitaryClass cls = UnitaryClass::General;
    // Witness subgroup (exponent pairs per qudit flattened into basis
    // elements): the maximal abelian subgroup mapped onto / span-preserved,
    // and its image.
    std::vector<PauliElement> witness;
    std::vector<PauliElement> witness_image;
};

// Clifford iff the transfer matrix is monomial. SemiClifford iff some
// maximal abelian subgroup of the Pauli group maps onto another (monomial
// subblock). GeneralizedSemiClifford iff the span of some maximal abelian
// subgroup (d = 2) or of some nontrivial proper subgroup (d > 2) maps onto
// the span of another. Exact search: r <= 2 for d = 2, r = 1 otherwise.
UnitaryClassification classify_unitary(const CMatrix& u, int d, int r);

// Maximal abelian subgroups of the r-qudit Pauli group modulo phases,
// returned as lists of exponent-pair group elements (identity included).
std::vector<std::vector<PauliElement>> maximal_abelian_subgroups(int d, int r);

// -------------------------------------------------------------------------
// Transversal gates
// -------------------------------------------------------------------------

// U = (x)_j U_j acting on r blocks of an n-qudit code; factor j acts on
// the j-th qudit of every block. Blocks are laid out block-major: qudit
// (b, j) sits at global position b*n + j.
struct TransversalGate {
    int d = 2;
    int n = 1;
    int r = 1;
    std::vector<CMatrix> factors;  // n factors, each d^r x d^r
};

TransversalGate make_transversal(int d, int n, int r, std::vector<CMatrix> factors);
// All factors equal to the given single-qudit gate, r = 1.
TransversalGate bitwise_gate(int d, int n, const CMatrix& u1);

// Global qudit positions a factor acts on.
std::vector<int> factor_positions(const TransversalGate& g, int coordinate);

CVector apply_transversal(const TransversalGate& g, const CVector& state);
CMatrix conjugate_by_transversal(const TransversalGate& g, const CMatrix& m);

struct PreservationResult {
    bool preserves = false;
    double residual = 0.0;
    std::string method;  // "dense" or "codewords"
};

// Does U P U^dag = P hold for P = P_Q^{(x)r} (or rho_omega^{(x)r} when omega
// is given)? Dense when d^{nr} fits the bound; otherwise falls back to the
// CSS codeword check P U|psi> = U|psi> (full-code checks only).
PreservationResult preserves_code(const TransversalGate& gate, const CodeSpec& spec,
                                  const std::optional<SupportSet>& omega = std::nullopt,
                                  std::size_t dense_bound = kDenseBound);

// -------------------------------------------------------------------------
// Minimum-weight logical representatives
// -------------------------------------------------------------------------

struct LogicalWitness {
    int protected_index = 0;
    PauliElement alpha;  // the minimum-weight representative found
    SupportSet omega;
    int weight = 0;
    int order_q = 0;      // phase-free order of alpha
    int exponent_m = 0;   // d / order_q
    // Same-support representatives of the other logical axes, when they
    // exist (their absence is legitimate).
    std::optional<PauliElement> beta;
    std::optional<PauliElement> gamma;
    // Coordinatewise triple-distinctness of (alpha, beta, gamma), the local
    // Clifford equivalence to X/Y/Z products; verified, not assumed.
    bool locally_clifford_equivalent = false;
};

// Minimum-weight element of C(S) acting nontrivially on protected qudit p
// (and trivially on other protected qudits), modulo stabilizer, gauge and
// phases. The returned weight is a certified minimum: all smaller weights
// are exhausted. Throws InputError when k = 0.
LogicalWitness min_weight_logical(const CodeSpec& spec, int protected_index = 0);

// -------------------------------------------------------------------------
// Conjugated Pauli expansion (transversal gate applied to one Pauli)
// -------------------------------------------------------------------------

struct PauliSumTerm {
    cplx coefficient;
    PauliElement element;  // phase folded into the coefficient
};

struct ProjectedConjugation {
    std::vector<PauliSumTerm> centralizer_terms;
    std::vector<PauliSumTerm> other_terms;
};

// Expand U P U^dag in the Pauli basis (per-coordinate images multiplied out)
// and split the terms by centralizer membership. Bounded by kExpansionBound.
ProjectedConjugation project_conjugated(const TransversalGate& gate, const PauliElement& p,
                                        const StabilizerGroup& s,
                                        std::size_t term_bound = kExpansionBound);

// -------------------------------------------------------------------------
// Logical action and code automorphisms
// -------------------------------------------------------------------------

// The induced unitary on the codeword basis (CSS basis for CSS codes),
// up to global phase. Requires preserves_code to hold.
CMatrix logical_action(const TransversalGate& gate, const CodeSpec& spec,
                       std::size_t state_bound = std::size_t(1) << 20);

// Does (U P_pi) P_Q^{(x)r} (U P_pi)^dag = P_Q^{(x)r}? pi permutes the nr
// qudit coordinates (0-based, i -> pi[i]).
PreservationResult check_code_automorphism(const TransversalGate& gate,
                                           const std::vector<int>& pi, const CodeSpec& spec,
                                           std::size_t dense_bound = kDenseBound);

// Exhaustive search mode (n <= 6, r = 1): all coordinate permutations paired
// with per-coordinate Clifford gates that map the stabilizer group onto
// itself exactly. The Clifford parts are searched symplectically per
// coordinate with DFS pruning; phases are fixed by a Pauli correction solved
// over Z_d. d <= 4.
struct AutomorphismCandidate {
    std::vector<int> permutation;
    std::vector<std::array<int, 4>> local_cliffords;  // per coordinate
    bool clifford_nontrivial = false;
};

std::vector<AutomorphismCandidate> find_automorphisms(const StabilizerGroup& s,
                                                      bool permutations_only = false,
                                                      std::size_t limit = 100000);

}  // namespace qecc
