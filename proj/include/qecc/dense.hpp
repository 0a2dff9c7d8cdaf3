#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qecc {

using cplx = std::complex<double>;

// Minimal dense complex matrix. Sized for Hilbert spaces up to kDenseBound;
// no BLAS, no views, just enough linear algebra for exact small-code work.
class CMatrix {
public:
    CMatrix() : rows_(0), cols_(0) {}
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    CMatrix operator*(const CMatrix& other) const;
    CMatrix operator+(const CMatrix& other) const;
    CMatrix operator-(const CMatrix& other) const;
    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator*=(cplx scale);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    bool is_unitary(double tol) const;
    bool is_hermitian(double tol) const;

private:
    std::size_t rows_, cols_;
    std::vector<cplx> a_;
};

using CVector = std::vector<cplx>;

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix matrix_power(const CMatrix& m, unsigned p);

double vector_norm(const CVector& v);
void normalize(CVector& v);
cplx inner_product(const CVector& a, const CVector& b);  // <a|b>

// A|v> where A acts on the qudits listed in coords (ascending, 0-based) of an
// n-qudit register of local dimension d. Index convention: qudit 0 is the
// most significant digit.
CVector apply_local_to_vector(const CMatrix& a, const std::vector<int>& coords, int d, int n,
                              const CVector& v);

// A M A^dagger with A acting on the listed qudits.
CMatrix conjugate_by_local(const CMatrix& a, const std::vector<int>& coords, int d, int n,
                           const CMatrix& m);

// Trace out every qudit not in keep (keep ascending, 0-based). Result acts on
// the kept qudits in their original order.
CMatrix partial_trace(const CMatrix& m, int d, int n, const std::vector<int>& keep);

// Apply the coordinate relabeling i -> perm[i] to the register: returns
// P M P^dagger (perm is a bijection on {0..n-1}).
CMatrix conjugate_by_permutation(const CMatrix& m, const std::vector<int>& perm, int d, int n);
CVector apply_permutation_to_vector(const CVector& v, const std::vector<int>& perm, int d, int n);

// True when a == e^{i phi} b entrywise for some global phase.
bool equal_up_to_global_phase(const CMatrix& a, const CMatrix& b, double tol);

}  // namespace qecc
