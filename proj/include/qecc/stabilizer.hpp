#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qecc/errors.hpp"
#include "qecc/pauli.hpp"
#include "qecc/zmod.hpp"

namespace qecc {

// Sorted set of 0-based coordinates.
using SupportSet = std::vector<int>;

// Enumerated group elements in a packed buffer (rows of 2n exponent bytes
// plus one phase byte) sorted by (exponents, phase). Shared, immutable.
class ElementList {
public:
    ElementList(int d, int n) : d_(d), n_(n), stride_(2 * std::size_t(n) + 1) {}

    std::size_t size() const { return buf_.size() / stride_; }
    int d() const { return d_; }
    int n() const { return n_; }

    PauliElement get(std::size_t i) const;
    // Support of element i without materializing it.
    SupportSet support_of(std::size_t i) const;
    bool is_identity_row(std::size_t i) const;

    void push(const PauliElement& p);
    void push_raw(const uint8_t* row) { buf_.insert(buf_.end(), row, row + stride_); }
    const uint8_t* row(std::size_t i) const { return buf_.data() + i * stride_; }
    std::size_t stride() const { return stride_; }

    // Sorts rows and removes duplicates; returns the index of a row whose
    // exponents collide with a different phase (a phased identity witness)
    // if one exists.
    std::optional<std::pair<std::size_t, std::size_t>> sort_unique();

private:
    int d_, n_;
    std::size_t stride_;
    std::vector<uint8_t> buf_;
};

struct ValidationFailure {
    enum Kind { NonCommutingPair, PhasedIdentity } kind;
    PauliElement witness_a;
    PauliElement witness_b;  // only for NonCommutingPair
    std::string message;
};

// Immutable after construction. Copies share the element cache.
struct StabilizerGroup {
    int d = 2;
    int n = 1;
    std::vector<PauliElement> generators;
    uint64_t order = 1;  // |S|, exact, computed even when not enumerated
    std::shared_ptr<const ElementList> elements;  // null when |S| > enum bound

    bool enumerated() const { return elements != nullptr; }
};

// Checks pairwise commutation and freedom from phased identities
// (q_d^l I with l != 0 is never in a stabilizer), computes |S| and caches
// the element set when |S| <= max_enum. Throws InputError with an embedded
// witness description on failure; use validate_check for the witness itself.
StabilizerGroup validate(const std::vector<PauliElement>& generators,
                         std::size_t max_enum = kGroupEnumBound);
std::optional<ValidationFailure> validate_check(const std::vector<PauliElement>& generators,
                                                std::size_t max_enum = kGroupEnumBound);

// The cached element list; throws ResourceError when the group was larger
// than the enumeration bound it was validated with.
const ElementList& enumerate_elements(const StabilizerGroup& s);

// P = (1/|S|) sum_{R in S} R. Hermitian idempotent; trace d^n / |S|.
CMatrix projector(const StabilizerGroup& s, std::size_t dense_bound = kDenseBound);

// S_omega = { R in S : supp(R) subseteq omega }, as a group on the same n.
StabilizerGroup restricted_subgroup(const StabilizerGroup& s, const SupportSet& omega);

// rho_omega = (1/|S_omega|) sum_{R in S_omega} R restricted to omega;
// proportional to the partial trace of projector(S) over the complement.
CMatrix reduced_projector(const StabilizerGroup& s, const SupportSet& omega,
                          std::size_t dense_bound = kDenseBound);

struct Centralizer {
    std::vector<PauliElement> generators;  // phase-0 representatives
    uint64_t size = 0;                     // count of (a|b) solutions mod d
};

// All Pauli exponent vectors commuting with every generator of S. Scans all
// d^{2n} candidates for n <= 6; otherwise solves the symplectic kernel over
// Z_d (Howell form, sound for composite d).
Centralizer centralizer(const StabilizerGroup& s);

// Does p commute with every generator?
bool in_centralizer(const StabilizerGroup& s, const PauliElement& p);

// Is p's exponent vector in the Z_d span of the given elements' exponents
// (i.e. p in the group generated, up to phase)?
bool in_exponent_span(const std::vector<PauliElement>& gens, const PauliElement& p);

// CSS presentation: X-type stabilizer generators X^{row} from hx, Z-type
// Z^{row} from hz, plus explicit logical representatives (one row per
// protected qudit). All rows are length-n vectors over Z_d.
struct CssPresentation {
    std::vector<std::vector<int>> hx;
    std::vector<std::vector<int>> hz;
    std::vector<std::vector<int>> logical_x;
    std::vector<std::vector<int>> logical_z;
};

struct CodeSpec {
    std::string name;
    StabilizerGroup stabilizer;
    std::vector<PauliElement> gauge_generators;
    int k = 0;        // protected qudits
    int gauge_k = 0;  // gauge qudits
    int delta = -1;   // declared distance, -1 when unknown
    std::optional<CssPresentation> css;
};

// Consistency checks: gauge generators commute with the stabilizer, the CSS
// presentation (when given) generates exactly the listed stabilizer, logical
// representatives commute with the stabilizer and pair symplectically.
void validate_code_spec(const CodeSpec& spec);

// Orthonormal codeword basis by coset sums: |l> proportional to
// sum_{c in rowspan(hx)} |sum_i l_i logical_x_i + c>. Each returned vector is
// verified to be a +1 eigenvector of every stabilizer generator. Logical
// index l runs over [0,d)^k in mixed-radix order.
std::vector<CVector> css_codewords(const CodeSpec& spec,
                                   std::size_t state_bound = std::size_t(1) << 20);

// Enumerate the additive span of the given rows (length-cols vectors) mod d;
// small spans only.
std::vector<std::vector<int>> enumerate_span(const std::vector<std::vector<int>>& rows, int d,
                                             std::size_t cols, std::size_t bound);

// Exponent matrix (x | z) of the given elements as rows over Z_d.
ZModMatrix exponent_matrix(const std::vector<PauliElement>& elems, int d, int n);

}  // namespace qecc
