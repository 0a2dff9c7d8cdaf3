#pragma once

#include <stdexcept>
#include <string>

namespace qecc {

// Malformed or inconsistent caller input (dimension mismatch, bad generator
// set, syntax error in a code/gate file). Maps to CLI exit code 2.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A configured resource bound (dense matrix size, group enumeration size,
// Pauli expansion size) was exceeded. Maps to CLI exit code 3.
struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical tolerances, loosest where error accumulates over large sums.
inline constexpr double kConstructionTol = 1e-12;
inline constexpr double kUnitarityTol    = 1e-10;
inline constexpr double kPreservationTol = 1e-9;
inline constexpr double kBlockTol        = 1e-8;

// Dense realizations are limited to d^n <= kDenseBound.
inline constexpr std::size_t kDenseBound = 4096;

// Group element caches are limited to this many elements by default.
inline constexpr std::size_t kGroupEnumBound = std::size_t(1) << 20;

// Pauli-sum expansions are limited to this many terms.
inline constexpr std::size_t kExpansionBound = std::size_t(1) << 20;

}  // namespace qecc
