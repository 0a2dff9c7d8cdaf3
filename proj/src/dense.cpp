#include "qecc/dense.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qecc {

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    assert(cols_ == other.rows_);
    CMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            cplx v = a_[i * cols_ + k];
            if (v == cplx{}) continue;
            const cplx* src = &other.a_[k * other.cols_];
            cplx* dst = &out.a_[i * other.cols_];
            for (std::size_t j = 0; j < other.cols_; ++j) dst[j] += v * src[j];
        }
    }
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& other) const {
    assert(rows_ == other.rows_ && cols_ == other.cols_);
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + other.a_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& other) const {
    assert(rows_ == other.rows_ && cols_ == other.cols_);
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - other.a_[i];
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    assert(rows_ == other.rows_ && cols_ == other.cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
    for (auto& v : a_) v *= scale;
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj(a_[i * cols_ + j]);
    return out;
}

CMatrix CMatrix::transpose() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = a_[i * cols_ + j];
    return out;
}

cplx CMatrix::trace() const {
    assert(rows_ == cols_);
    cplx t{};
    for (std::size_t i = 0; i < rows_; ++i) t += a_[i * cols_ + i];
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double s = 0;
    for (const auto& v : a_) s = std::max(s, std::abs(v));
    return s;
}

bool CMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    CMatrix p = (*this) * adjoint();
    return (p - identity(rows_)).max_abs() <= tol;
}

bool CMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    return ((*this) - adjoint()).max_abs() <= tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            cplx v = a(i, j);
            if (v == cplx{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
        }
    return out;
}

CMatrix matrix_power(const CMatrix& m, unsigned p) {
    CMatrix out = CMatrix::identity(m.rows());
    for (unsigned i = 0; i < p; ++i) out = out * m;
    return out;
}

double vector_norm(const CVector& v) {
    double s = 0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

void normalize(CVector& v) {
    double n = vector_norm(v);
    if (n == 0) throw std::invalid_argument("cannot normalize zero vector");
    for (auto& c : v) c /= n;
}

cplx inner_product(const CVector& a, const CVector& b) {
    assert(a.size() == b.size());
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

namespace {

// Iteration helper for "act on a qudit subset": enumerates all basis indices
// grouped by the coords digits. total = d^n, sub = d^k.
struct SubsetIndexer {
    std::vector<std::size_t> strides;  // stride of each selected coord
    std::vector<std::size_t> rest_strides;
    std::vector<int> rest_coords;
    std::size_t sub_dim;
    std::size_t rest_dim;
    int d;

    SubsetIndexer(const std::vector<int>& coords, int d_, int n) : d(d_) {
        std::vector<bool> in(n, false);
        for (int c : coords) in[c] = true;
        std::vector<std::size_t> coord_stride(n);
        std::size_t s = 1;
        for (int i = n - 1; i >= 0; --i) {
            coord_stride[i] = s;
            s *= d;
        }
        sub_dim = 1;
        for (int c : coords) {
            strides.push_back(coord_stride[c]);
            sub_dim *= d;
        }
        rest_dim = 1;
        for (int i = 0; i < n; ++i)
            if (!in[i]) {
                rest_coords.push_back(i);
                rest_strides.push_back(coord_stride[i]);
                rest_dim *= d;
            }
    }

    // Base index (all selected digits zero) of the b-th rest-assignment.
    std::size_t base(std::size_t b) const {
        std::size_t idx = 0;
        for (std::size_t i = rest_strides.size(); i-- > 0;) {
            idx += (b % d) * rest_strides[i];
            b /= d;
        }
        return idx;
    }

    // Offset of the s-th sub-assignment.
    std::size_t offset(std::size_t s) const {
        std::size_t idx = 0;
        for (std::size_t i = strides.size(); i-- > 0;) {
            idx += (s % d) * strides[i];
            s /= d;
        }
        return idx;
    }
};

}  // namespace

CVector apply_local_to_vector(const CMatrix& a, const std::vector<int>& coords, int d, int n,
                              const CVector& v) {
    SubsetIndexer ix(coords, d, n);
    assert(a.rows() == ix.sub_dim && a.cols() == ix.sub_dim);
    assert(v.size() == ix.sub_dim * ix.rest_dim);
    CVector out(v.size());
    std::vector<std::size_t> offsets(ix.sub_dim);
    for (std::size_t s = 0; s < ix.sub_dim; ++s) offsets[s] = ix.offset(s);
    CVector gathered(ix.sub_dim);
    for (std::size_t b = 0; b < ix.rest_dim; ++b) {
        std::size_t base = ix.base(b);
        for (std::size_t s = 0; s < ix.sub_dim; ++s) gathered[s] = v[base + offsets[s]];
        for (std::size_t i = 0; i < ix.sub_dim; ++i) {
            cplx acc{};
            for (std::size_t j = 0; j < ix.sub_dim; ++j) acc += a(i, j) * gathered[j];
            out[base + offsets[i]] = acc;
        }
    }
    return out;
}

CMatrix conjugate_by_local(const CMatrix& a, const std::vector<int>& coords, int d, int n,
                           const CMatrix& m) {
    SubsetIndexer ix(coords, d, n);
    std::size_t dim = ix.sub_dim * ix.rest_dim;
    assert(m.rows() == dim && m.cols() == dim);
    std::vector<std::size_t> offsets(ix.sub_dim);
    for (std::size_t s = 0; s < ix.sub_dim; ++s) offsets[s] = ix.offset(s);

    CMatrix tmp(dim, dim);
    // Left multiply by A (column by column).
    CVector gathered(ix.sub_dim);
    for (std::size_t col = 0; col < dim; ++col) {
        for (std::size_t b = 0; b < ix.rest_dim; ++b) {
            std::size_t base = ix.base(b);
            for (std::size_t s = 0; s < ix.sub_dim; ++s) gathered[s] = m(base + offsets[s], col);
            for (std::size_t i = 0; i < ix.sub_dim; ++i) {
                cplx acc{};
                for (std::size_t j = 0; j < ix.sub_dim; ++j) acc += a(i, j) * gathered[j];
                tmp(base + offsets[i], col) = acc;
            }
        }
    }
    // Right multiply by A^dagger (row by row).
    CMatrix out(dim, dim);
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t b = 0; b < ix.rest_dim; ++b) {
            std::size_t base = ix.base(b);
            for (std::size_t s = 0; s < ix.sub_dim; ++s) gathered[s] = tmp(row, base + offsets[s]);
            for (std::size_t i = 0; i < ix.sub_dim; ++i) {
                cplx acc{};
                for (std::size_t j = 0; j < ix.sub_dim; ++j) acc += gathered[j] * std::conj(a(i, j));
                out(row, base + offsets[i]) = acc;
            }
        }
    }
    return out;
}

CMatrix partial_trace(const CMatrix& m, int d, int n, const std::vector<int>& keep) {
    SubsetIndexer ix(keep, d, n);
    assert(m.rows() == ix.sub_dim * ix.rest_dim);
    std::vector<std::size_t> offsets(ix.sub_dim);
    for (std::size_t s = 0; s < ix.sub_dim; ++s) offsets[s] = ix.offset(s);
    CMatrix out(ix.sub_dim, ix.sub_dim);
    for (std::size_t b = 0; b < ix.rest_dim; ++b) {
        std::size_t base = ix.base(b);
        for (std::size_t i = 0; i < ix.sub_dim; ++i)
            for (std::size_t j = 0; j < ix.sub_dim; ++j)
                out(i, j) += m(base + offsets[i], base + offsets[j]);
    }
    return out;
}

namespace {

std::vector<std::size_t> permutation_index_map(const std::vector<int>& perm, int d, int n) {
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) dim *= d;
    std::vector<std::size_t> map(dim);
    std::vector<int> digits(n);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rem = idx;
        for (int i = n - 1; i >= 0; --i) {
            digits[i] = int(rem % d);
            rem /= d;
        }
        std::size_t out = 0;
        std::vector<int> nd(n);
        for (int i = 0; i < n; ++i) nd[perm[i]] = digits[i];
        for (int i = 0; i < n; ++i) out = out * d + nd[i];
        map[idx] = out;
    }
    return map;
}

}  // namespace

CMatrix conjugate_by_permutation(const CMatrix& m, const std::vector<int>& perm, int d, int n) {
    auto map = permutation_index_map(perm, d, n);
    CMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(map[i], map[j]) = m(i, j);
    return out;
}

CVector apply_permutation_to_vector(const CVector& v, const std::vector<int>& perm, int d, int n) {
    auto map = permutation_index_map(perm, d, n);
    CVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[map[i]] = v[i];
    return out;
}

bool equal_up_to_global_phase(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    // Phase from the largest entry of b, then exact comparison.
    std::size_t bi = 0, bj = 0;
    double best = -1;
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (std::abs(b(i, j)) > best) {
                best = std::abs(b(i, j));
                bi = i;
                bj = j;
            }
    if (best <= tol) return a.max_abs() <= tol;
    if (std::abs(a(bi, bj)) <= tol) return false;
    cplx phase = a(bi, bj) / b(bi, bj);
    phase /= std::abs(phase);
    CMatrix scaled = b;
    scaled *= phase;
    return (a - scaled).max_abs() <= tol;
}

}  // namespace qecc
