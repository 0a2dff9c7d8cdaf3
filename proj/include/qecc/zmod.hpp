#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qecc {

// Row-oriented matrices over Z_m for small composite or prime moduli.
//
// Z_m is not a field for composite m, so Gaussian elimination is unsound.
// Everything here is built on the Howell form, the canonical echelon form
// over Z_m: two matrices have equal row spans iff they have equal Howell
// forms, and span membership can be decided by reduction against the rows.
// Entries stay in [0, m) throughout, so there is no coefficient growth.
class ZModMatrix {
public:
    using Row = std::vector<int64_t>;

    ZModMatrix(int64_t mod, std::size_t cols) : mod_(mod), cols_(cols) {}
    ZModMatrix(int64_t mod, std::vector<Row> rows, std::size_t cols)
        : mod_(mod), cols_(cols), rows_(std::move(rows)) {
        for (auto& r : rows_) reduce_row(r);
    }

    int64_t mod() const { return mod_; }
    std::size_t cols() const { return cols_; }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<Row>& rows() const { return rows_; }

    void add_row(Row r) {
        reduce_row(r);
        rows_.push_back(std::move(r));
    }

    // Canonical Howell form of the row span. Idempotent.
    ZModMatrix howell() const;

    // Number of distinct elements in the row span (as a subgroup of Z_m^cols).
    // Requires/produces the Howell form internally.
    uint64_t span_size() const;

    // Is v in the row span (mod m)? If yes and coeffs is nonnull, a coefficient
    // vector c with c*rows == v (mod m) is stored, indexed against this
    // matrix's rows in their current order.
    bool spans(const Row& v, Row* coeffs = nullptr) const;

    // Generators of { x in Z_m^cols : rows * x == 0 (mod m) } where the rows
    // are the constraint rows of this matrix (i.e. the right kernel).
    std::vector<Row> kernel() const;

    // Number of solutions of rows * x == 0 (mod m).
    uint64_t kernel_size() const;

    // A particular solution of rows^T * c = v interpreted as: find c with
    // sum_i c_i * row_i == v (mod m). Returns nullopt when v is not spanned.
    std::optional<Row> solve_combination(const Row& v) const;

    bool operator==(const ZModMatrix& other) const {
        return mod_ == other.mod_ && cols_ == other.cols_ && rows_ == other.rows_;
    }

private:
    void reduce_row(Row& r) const;

    int64_t mod_;
    std::size_t cols_;
    std::vector<Row> rows_;
};

int64_t mod_reduce(int64_t value, int64_t mod);

// gcd(a, b) together with x, y such that a*x + b*y = g.
int64_t extended_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y);

// Multiplicative inverse mod m when it exists.
std::optional<int64_t> mod_inverse(int64_t a, int64_t mod);

}  // namespace qecc
