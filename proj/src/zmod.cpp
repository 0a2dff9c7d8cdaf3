#include "qecc/zmod.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace qecc {

int64_t mod_reduce(int64_t value, int64_t mod) {
    int64_t r = value % mod;
    return r < 0 ? r + mod : r;
}

int64_t extended_gcd(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    int64_t x1, y1;
    int64_t g = extended_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::optional<int64_t> mod_inverse(int64_t a, int64_t mod) {
    int64_t x, y;
    int64_t g = extended_gcd(mod_reduce(a, mod), mod, x, y);
    if (g != 1) return std::nullopt;
    return mod_reduce(x, mod);
}

void ZModMatrix::reduce_row(Row& r) const {
    assert(r.size() == cols_);
    for (auto& e : r) e = mod_reduce(e, mod_);
}

namespace {

// Unit u (mod m) with u*a == gcd(a, m) (mod m). Needs a != 0 mod m.
int64_t normalizing_unit(int64_t a, int64_t m) {
    a = mod_reduce(a, m);
    int64_t g = std::gcd(a, m);
    int64_t mg = m / g;
    auto inv = mod_inverse(a / g, mg);
    assert(inv.has_value());
    // Lift to a unit mod m: u0 + k*(m/g) is invertible mod m for some k < g.
    for (int64_t k = 0; k < g; ++k) {
        int64_t u = mod_reduce(*inv + k * mg, m);
        if (std::gcd(u, m) == 1) return u;
    }
    assert(false && "no unit lift found");
    return 1;
}

using Row = ZModMatrix::Row;

Row scaled(const Row& r, int64_t c, int64_t m) {
    Row out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = mod_reduce(r[i] * c, m);
    return out;
}

void add_scaled(Row& r, const Row& s, int64_t c, int64_t m) {
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod_reduce(r[i] + c * s[i], m);
}

bool is_zero(const Row& r) {
    return std::all_of(r.begin(), r.end(), [](int64_t e) { return e == 0; });
}

// Core Howell reduction. Pivoting is restricted to the first pivot_cols
// columns; any further columns ride along (used for coefficient tracking).
std::vector<Row> howell_rows(std::vector<Row> work, std::size_t pivot_cols, int64_t m) {
    std::vector<Row> pivot(pivot_cols);  // pivot[j]: row with leading col j
    while (!work.empty()) {
        Row r = std::move(work.back());
        work.pop_back();
        for (std::size_t j = 0; j < pivot_cols; ++j) {
            if (r[j] == 0) continue;
            if (!pivot[j].empty()) {
                int64_t a = pivot[j][j], b = r[j];
                int64_t x, y;
                int64_t g = extended_gcd(a, b, x, y);
                // [[x, y], [-b/g, a/g]] has determinant 1: span is preserved.
                Row np = scaled(pivot[j], x, m);
                add_scaled(np, r, y, m);
                Row nr = scaled(r, a / g, m);
                add_scaled(nr, pivot[j], mod_reduce(-(b / g), m), m);
                pivot[j] = std::move(np);
                r = std::move(nr);
                continue;
            }
            int64_t u = normalizing_unit(r[j], m);
            pivot[j] = scaled(r, u, m);  // leading entry now divides m
            int64_t g = std::gcd(pivot[j][j], m);
            if (g != 1) work.push_back(scaled(pivot[j], m / g, m));  // annihilator
            r.clear();
            break;
        }
        // Whatever is left of r has zeros in all pivot columns; drop it.
    }
    // Normalize leading entries to divisors of m (combining pivots via the
    // extended gcd can leave a non-divisor) and push annihilators to the
    // right until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < pivot_cols; ++j) {
            if (pivot[j].empty()) continue;
            int64_t g = std::gcd(pivot[j][j], m);
            if (pivot[j][j] != g) {
                pivot[j] = scaled(pivot[j], normalizing_unit(pivot[j][j], m), m);
                changed = true;
            }
        }
        if (changed) continue;
        for (std::size_t j = 0; j < pivot_cols; ++j) {
            if (pivot[j].empty()) continue;
            int64_t g = pivot[j][j];
            if (g == 1) continue;
            Row ann = scaled(pivot[j], m / g, m);
            // Reduce the annihilator against later pivots; if anything
            // survives, it is a new row the current form fails to span.
            for (std::size_t k = j + 1; k < pivot_cols; ++k) {
                if (ann[k] == 0 || pivot[k].empty()) continue;
                int64_t pg = pivot[k][k];
                if (ann[k] % pg != 0) break;
                add_scaled(ann, pivot[k], mod_reduce(-(ann[k] / pg), m), m);
            }
            bool survives = false;
            for (std::size_t k = j + 1; k < pivot_cols; ++k)
                if (ann[k] != 0) survives = true;
            if (survives) {
                // Re-run insertion of this row.
                std::vector<Row> rework = {ann};
                for (std::size_t k = 0; k < pivot_cols; ++k)
                    if (!pivot[k].empty()) rework.push_back(std::move(pivot[k]));
                pivot.assign(pivot_cols, Row{});
                auto redone = howell_rows(std::move(rework), pivot_cols, m);
                for (auto& row : redone) {
                    std::size_t lead = 0;
                    while (lead < pivot_cols && row[lead] == 0) ++lead;
                    if (lead < pivot_cols) pivot[lead] = std::move(row);
                }
                changed = true;
                break;
            }
        }
    }
    // Reduce entries above each pivot below the pivot value.
    for (std::size_t j = 0; j < pivot_cols; ++j) {
        if (pivot[j].empty()) continue;
        int64_t g = pivot[j][j];
        for (std::size_t k = 0; k < j; ++k) {
            if (pivot[k].empty() || pivot[k][j] == 0) continue;
            int64_t q = pivot[k][j] / g;
            add_scaled(pivot[k], pivot[j], mod_reduce(-q, m), m);
        }
    }
    std::vector<Row> out;
    for (std::size_t j = 0; j < pivot_cols; ++j)
        if (!pivot[j].empty() && !is_zero(pivot[j])) out.push_back(std::move(pivot[j]));
    return out;
}

}  // namespace

ZModMatrix ZModMatrix::howell() const {
    auto rows = howell_rows(rows_, cols_, mod_);
    return ZModMatrix(mod_, std::move(rows), cols_);
}

uint64_t ZModMatrix::span_size() const {
    auto h = howell_rows(rows_, cols_, mod_);
    uint64_t size = 1;
    for (const auto& r : h) {
        std::size_t lead = 0;
        while (lead < cols_ && r[lead] == 0) ++lead;
        assert(lead < cols_);
        size *= uint64_t(mod_ / std::gcd(r[lead], mod_));
    }
    return size;
}

bool ZModMatrix::spans(const Row& v, Row* coeffs) const {
    assert(v.size() == cols_);
    // Augment each row with coefficient-tracking columns.
    std::vector<Row> work;
    work.reserve(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Row r = rows_[i];
        r.resize(cols_ + rows_.size(), 0);
        r[cols_ + i] = 1;
        work.push_back(std::move(r));
    }
    auto h = howell_rows(std::move(work), cols_, mod_);
    Row rem(v);
    for (auto& e : rem) e = mod_reduce(e, mod_);
    Row combo(rows_.size(), 0);
    for (const auto& row : h) {
        std::size_t lead = 0;
        while (lead < cols_ && row[lead] == 0) ++lead;
        if (lead >= cols_) continue;
        if (rem[lead] == 0) continue;
        int64_t g = row[lead];
        if (rem[lead] % g != 0) return false;
        int64_t q = rem[lead] / g;
        for (std::size_t j = 0; j < cols_; ++j) rem[j] = mod_reduce(rem[j] - q * row[j], mod_);
        for (std::size_t j = 0; j < rows_.size(); ++j)
            combo[j] = mod_reduce(combo[j] + q * row[cols_ + j], mod_);
    }
    if (!is_zero(rem)) return false;
    if (coeffs) *coeffs = std::move(combo);
    return true;
}

std::optional<ZModMatrix::Row> ZModMatrix::solve_combination(const Row& v) const {
    Row c;
    if (!spans(v, &c)) return std::nullopt;
    return c;
}

std::vector<ZModMatrix::Row> ZModMatrix::kernel() const {
    // Right kernel of the constraint rows: Howell-reduce [A^T | I]; rows whose
    // A^T part vanished carry kernel generators in the identity part.
    std::size_t m = rows_.size();
    std::vector<Row> work;
    work.reserve(cols_);
    for (std::size_t i = 0; i < cols_; ++i) {
        Row r(m + cols_, 0);
        for (std::size_t k = 0; k < m; ++k) r[k] = mod_reduce(rows_[k][i], mod_);
        r[m + i] = 1;
        work.push_back(std::move(r));
    }
    auto h = howell_rows(std::move(work), m + cols_, mod_);
    std::vector<Row> gens;
    for (const auto& row : h) {
        bool head_zero = true;
        for (std::size_t k = 0; k < m; ++k)
            if (row[k] != 0) head_zero = false;
        if (!head_zero) continue;
        Row g(row.begin() + m, row.end());
        if (!is_zero(g)) gens.push_back(std::move(g));
    }
    return gens;
}

uint64_t ZModMatrix::kernel_size() const {
    auto gens = kernel();
    if (gens.empty()) return 1;
    return ZModMatrix(mod_, gens, cols_).span_size();
}

}  // namespace qecc
