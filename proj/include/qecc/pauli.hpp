#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qecc/dense.hpp"
#include "qecc/errors.hpp"

namespace qecc {

// Phase bookkeeping for the n-qudit Pauli group over Z_d.
//
// Phases are tracked as integer exponents of tau = e^{i pi / d}, i.e. a
// (2d)-th root of unity, so tau^2 = q_d = e^{2 pi i / d}. Working in
// tau-units keeps every phase integral for all d: the re-basing prefactor
// q_d^{-(d-1)/2 * m n} is a half-integer power of q_d when d is even, but is
// the integral tau power -(d-1) m n. For odd d, products of basis elements
// only ever produce even exponents (pure q_d powers).
struct PhaseExponent {
    int d = 2;
    int k = 0;  // 0 <= k < 2d

    static PhaseExponent zero(int d) { return PhaseExponent{d, 0}; }
    static PhaseExponent make(int d, int64_t raw);

    PhaseExponent plus(const PhaseExponent& other) const;
    PhaseExponent plus_tau_power(int64_t raw) const;
    PhaseExponent negated() const;
    bool is_zero() const { return k == 0; }
    bool is_even() const { return k % 2 == 0; }
    cplx value() const;  // tau^k
};

// A phased product of X/Z powers on n qudits of dimension d, kept in the
// canonical form   tau^k  *  (X^{x_1} Z^{z_1}) (x) ... (x) (X^{x_n} Z^{z_n})
// with every exponent reduced mod d. The single-qudit matrices follow
// X|j> = |j+1 mod d> and Z|j> = q_d^j |j>, which commute as
// Z^a X^b = q_d^{ab} X^b Z^a.
struct PauliElement {
    int d = 2;
    int n = 1;
    PhaseExponent phase;
    std::vector<int> x;  // X exponents, mod d
    std::vector<int> z;  // Z exponents, mod d

    static PauliElement identity(int d, int n);
    // Phase-0 element with the given exponent vectors.
    static PauliElement from_exponents(int d, std::vector<int> x, std::vector<int> z);
    // Exponents plus an explicit tau-power phase.
    static PauliElement from_exponents_phased(int d, std::vector<int> x, std::vector<int> z,
                                              int64_t tau_power);
    // X^xe Z^ze at one coordinate, identity elsewhere.
    static PauliElement single(int d, int n, int coord, int xe, int ze);
    // The canonical order-p representative: tau^{(p-1) sum_i x_i z_i} X^x Z^z,
    // whose phase-sensitive order equals its phase-free order. For d=2 this
    // is the Hermitian convention R(a,b) = i^{a.b} X^a Z^b, so e.g. "Y" is
    // tau^1 XZ.
    static PauliElement canonical(int d, std::vector<int> x, std::vector<int> z);

    bool is_identity() const;          // exact identity, phase included
    bool is_unphased_identity() const; // x = z = 0, any phase
    std::vector<int> support() const;  // 0-based coordinates
    int weight() const;

    // Byte keys for hashing / canonical ordering. The unphased key drops the
    // phase (used for phased-identity detection and coset logic).
    std::string key() const;
    std::string unphased_key() const;

    bool operator==(const PauliElement& other) const {
        return d == other.d && n == other.n && phase.k == other.phase.k && x == other.x &&
               z == other.z;
    }
};

// Canonical-form product p * q. Throws InputError on d/n mismatch.
PauliElement compose(const PauliElement& p, const PauliElement& q);
PauliElement inverse(const PauliElement& p);
PauliElement pauli_power(const PauliElement& p, int64_t m);

// c in Z_d with p q = q_d^c q p; 0 iff they commute.
int commutation_exponent(const PauliElement& p, const PauliElement& q);

// Smallest m >= 1 with p^m = I including the phase. Divides 2d.
int order(const PauliElement& p);
// Smallest m >= 1 with p^m proportional to I (phase ignored). Divides d.
int order_phase_free(const PauliElement& p);

// Dense unitary realization; requires d^n <= bound (ResourceError otherwise).
CMatrix to_matrix(const PauliElement& p, std::size_t bound = kDenseBound);

// Restriction of p to the listed coordinates (which must cover its support
// when used for subcode work; no check here beyond bounds).
PauliElement restrict_to(const PauliElement& p, const std::vector<int>& coords);

// Relabel coordinates: coordinate i of p becomes perm[i] of the result.
PauliElement permute_coordinates(const PauliElement& p, const std::vector<int>& perm);

// Tensor p at the front of q (coordinates of q shift up by p.n).
PauliElement tensor(const PauliElement& p, const PauliElement& q);

// A single-qudit Clifford conjugation given exactly by its action on the
// exponent lattice: X -> xbar, Z -> zbar, with tau-exact phases, plus a dense
// d x d unitary realization. Built from exponent pairs (m1, n1, m2, n2) via
//   xbar = tau^{-(d-1) m1 n1} Z^{m1} X^{n1},
//   zbar = tau^{-(d-1) m2 n2} Z^{m2} X^{n2},
// which keeps the spectrum of X and Z and the relation zbar xbar = q_d xbar zbar.
struct LocalCliffordMap {
    int d = 2;
    std::array<int, 4> pairs{};  // m1, n1, m2, n2
    PauliElement xbar;           // single-qudit image of X
    PauliElement zbar;           // single-qudit image of Z
    CMatrix unitary;             // d x d realization U with U X U^dag = xbar etc.

    // Conjugate a single-qudit element exactly.
    PauliElement apply_single(const PauliElement& p) const;
};

// Validates gcd(m1, n1, d) = 1, gcd(m2, n2, d) = 1 and the commutation-
// preserving determinant m2 n1 - m1 n2 = 1 (mod d); throws InputError.
LocalCliffordMap local_clifford_from_pairs(int m1, int n1, int m2, int n2, int d);

// All exponent-pair tuples defining distinct local Clifford actions (the
// symplectic group SL(2, Z_d) worth of them). Used by witness searches.
std::vector<std::array<int, 4>> enumerate_local_clifford_pairs(int d);

// Conjugate coordinate `coord` of p by the map (other coordinates untouched).
PauliElement apply_local_clifford(const LocalCliffordMap& map, const PauliElement& p, int coord);

}  // namespace qecc
