#include "qecc/pauli.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "qecc/errors.hpp"

namespace qecc {

namespace {

int mod_pos(int64_t v, int m) {
    int64_t r = v % m;
    return int(r < 0 ? r + m : r);
}

void require_compatible(const PauliElement& p, const PauliElement& q) {
    if (p.d != q.d || p.n != q.n)
        throw InputError("Pauli elements have mismatched dimension or length (d=" +
                         std::to_string(p.d) + ",n=" + std::to_string(p.n) + ") vs (d=" +
                         std::to_string(q.d) + ",n=" + std::to_string(q.n) + ")");
}

}  // namespace

PhaseExponent PhaseExponent::make(int d, int64_t raw) {
    return PhaseExponent{d, mod_pos(raw, 2 * d)};
}

PhaseExponent PhaseExponent::plus(const PhaseExponent& other) const {
    assert(d == other.d);
    return make(d, int64_t(k) + other.k);
}

PhaseExponent PhaseExponent::plus_tau_power(int64_t raw) const {
    return make(d, int64_t(k) + raw);
}

PhaseExponent PhaseExponent::negated() const { return make(d, -int64_t(k)); }

cplx PhaseExponent::value() const {
    double angle = M_PI * double(k) / double(d);
    return cplx(std::cos(angle), std::sin(angle));
}

PauliElement PauliElement::identity(int d, int n) {
    PauliElement p;
    p.d = d;
    p.n = n;
    p.phase = PhaseExponent::zero(d);
    p.x.assign(n, 0);
    p.z.assign(n, 0);
    return p;
}

PauliElement PauliElement::from_exponents(int d, std::vector<int> x, std::vector<int> z) {
    return from_exponents_phased(d, std::move(x), std::move(z), 0);
}

PauliElement PauliElement::from_exponents_phased(int d, std::vector<int> x, std::vector<int> z,
                                                 int64_t tau_power) {
    if (d < 2) throw InputError("qudit dimension must be >= 2");
    if (x.size() != z.size() || x.empty()) throw InputError("exponent vectors empty or mismatched");
    PauliElement p;
    p.d = d;
    p.n = int(x.size());
    p.phase = PhaseExponent::make(d, tau_power);
    p.x = std::move(x);
    p.z = std::move(z);
    for (auto& e : p.x) e = mod_pos(e, d);
    for (auto& e : p.z) e = mod_pos(e, d);
    return p;
}

PauliElement PauliElement::single(int d, int n, int coord, int xe, int ze) {
    PauliElement p = identity(d, n);
    if (coord < 0 || coord >= n) throw InputError("coordinate out of range");
    p.x[coord] = mod_pos(xe, d);
    p.z[coord] = mod_pos(ze, d);
    return p;
}

PauliElement PauliElement::canonical(int d, std::vector<int> x, std::vector<int> z) {
    PauliElement p = from_exponents(d, std::move(x), std::move(z));
    int ord = order_phase_free(p);
    int64_t cross = 0;
    for (int i = 0; i < p.n; ++i) cross += int64_t(p.x[i]) * p.z[i];
    p.phase = PhaseExponent::make(d, (ord - 1) * cross);
    return p;
}

bool PauliElement::is_identity() const {
    return phase.is_zero() && is_unphased_identity();
}

bool PauliElement::is_unphased_identity() const {
    for (int i = 0; i < n; ++i)
        if (x[i] != 0 || z[i] != 0) return false;
    return true;
}

std::vector<int> PauliElement::support() const {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
        if (x[i] != 0 || z[i] != 0) s.push_back(i);
    return s;
}

int PauliElement::weight() const { return int(support().size()); }

std::string PauliElement::key() const {
    std::string k = unphased_key();
    k.push_back(char(phase.k));
    return k;
}

std::string PauliElement::unphased_key() const {
    std::string k;
    k.reserve(2 * n);
    for (int e : x) k.push_back(char(e));
    for (int e : z) k.push_back(char(e));
    return k;
}

PauliElement compose(const PauliElement& p, const PauliElement& q) {
    require_compatible(p, q);
    PauliElement out = p;
    int64_t cross = 0;  // Z^a X^b = q_d^{ab} X^b Z^a at each crossing
    for (int i = 0; i < p.n; ++i) {
        cross += int64_t(p.z[i]) * q.x[i];
        out.x[i] = mod_pos(p.x[i] + q.x[i], p.d);
        out.z[i] = mod_pos(p.z[i] + q.z[i], p.d);
    }
    out.phase = PhaseExponent::make(p.d, int64_t(p.phase.k) + q.phase.k + 2 * cross);
    return out;
}

PauliElement inverse(const PauliElement& p) {
    PauliElement out = p;
    int64_t cross = 0;
    for (int i = 0; i < p.n; ++i) {
        out.x[i] = mod_pos(-p.x[i], p.d);
        out.z[i] = mod_pos(-p.z[i], p.d);
        // (X^a Z^b)^-1 = Z^-b X^-a = q^{ab} X^-a Z^-b
        cross += int64_t(p.x[i]) * p.z[i];
    }
    out.phase = PhaseExponent::make(p.d, -int64_t(p.phase.k) + 2 * cross);
    return out;
}

PauliElement pauli_power(const PauliElement& p, int64_t m) {
    if (m < 0) return pauli_power(inverse(p), -m);
    PauliElement out = PauliElement::identity(p.d, p.n);
    for (int64_t i = 0; i < m; ++i) out = compose(out, p);
    return out;
}

int commutation_exponent(const PauliElement& p, const PauliElement& q) {
    require_compatible(p, q);
    int64_t c = 0;
    for (int i = 0; i < p.n; ++i) c += int64_t(p.z[i]) * q.x[i] - int64_t(p.x[i]) * q.z[i];
    return mod_pos(c, p.d);
}

int order(const PauliElement& p) {
    PauliElement acc = p;
    for (int m = 1; m <= 2 * p.d; ++m) {
        if (acc.is_identity()) return m;
        acc = compose(acc, p);
    }
    assert(false && "order of a Pauli element divides 2d");
    return 2 * p.d;
}

int order_phase_free(const PauliElement& p) {
    int g = p.d;
    for (int i = 0; i < p.n; ++i) g = std::gcd(g, std::gcd(p.x[i], p.z[i]));
    return p.d / g;
}

CMatrix to_matrix(const PauliElement& p, std::size_t bound) {
    std::size_t dim = 1;
    for (int i = 0; i < p.n; ++i) {
        dim *= std::size_t(p.d);
        if (dim > bound)
            throw ResourceError("dense realization needs d^n = " + std::to_string(p.d) + "^" +
                                std::to_string(p.n) + " > bound " + std::to_string(bound));
    }
    // Precompute the 2d roots of unity; every entry is one of them.
    std::vector<cplx> tau(2 * p.d);
    for (int k = 0; k < 2 * p.d; ++k) tau[k] = PhaseExponent{p.d, k}.value();

    CMatrix m(dim, dim);
    std::vector<int> digits(p.n);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t rem = col;
        for (int i = p.n - 1; i >= 0; --i) {
            digits[i] = int(rem % p.d);
            rem /= p.d;
        }
        int64_t k = p.phase.k;
        std::size_t row = 0;
        for (int i = 0; i < p.n; ++i) {
            k += 2 * int64_t(p.z[i]) * digits[i];     // Z^z |s> = q^{z s}|s>
            row = row * p.d + std::size_t(mod_pos(digits[i] + p.x[i], p.d));
        }
        m(row, col) = tau[mod_pos(k, 2 * p.d)];
    }
    return m;
}

PauliElement restrict_to(const PauliElement& p, const std::vector<int>& coords) {
    if (coords.empty()) throw InputError("cannot restrict to empty coordinate set");
    PauliElement out;
    out.d = p.d;
    out.n = int(coords.size());
    out.phase = p.phase;
    for (int c : coords) {
        if (c < 0 || c >= p.n) throw InputError("restriction coordinate out of range");
        out.x.push_back(p.x[c]);
        out.z.push_back(p.z[c]);
    }
    return out;
}

PauliElement permute_coordinates(const PauliElement& p, const std::vector<int>& perm) {
    if (int(perm.size()) != p.n) throw InputError("permutation length mismatch");
    PauliElement out = p;
    for (int i = 0; i < p.n; ++i) {
        out.x[perm[i]] = p.x[i];
        out.z[perm[i]] = p.z[i];
    }
    return out;
}

PauliElement tensor(const PauliElement& p, const PauliElement& q) {
    if (p.d != q.d) throw InputError("tensor of elements with different d");
    PauliElement out;
    out.d = p.d;
    out.n = p.n + q.n;
    out.phase = p.phase.plus(q.phase);
    out.x = p.x;
    out.x.insert(out.x.end(), q.x.begin(), q.x.end());
    out.z = p.z;
    out.z.insert(out.z.end(), q.z.begin(), q.z.end());
    return out;
}

PauliElement LocalCliffordMap::apply_single(const PauliElement& p) const {
    assert(p.n == 1 && p.d == d);
    PauliElement out = compose(pauli_power(xbar, p.x[0]), pauli_power(zbar, p.z[0]));
    out.phase = out.phase.plus(p.phase);
    return out;
}

LocalCliffordMap local_clifford_from_pairs(int m1, int n1, int m2, int n2, int d) {
    if (d < 2) throw InputError("qudit dimension must be >= 2");
    m1 = mod_pos(m1, d);
    n1 = mod_pos(n1, d);
    m2 = mod_pos(m2, d);
    n2 = mod_pos(n2, d);
    if (std::gcd(std::gcd(m1, n1), d) != 1)
        throw InputError("(m1, n1) must be primitive mod d");
    if (std::gcd(std::gcd(m2, n2), d) != 1)
        throw InputError("(m2, n2) must be primitive mod d");
    // Z^a X^b = q^{ab} X^b Z^a forces this determinant orientation for
    // zbar xbar = q xbar zbar to hold.
    if (mod_pos(int64_t(m2) * n1 - int64_t(m1) * n2, d) != 1)
        throw InputError("determinant m2*n1 - m1*n2 must be 1 mod d");

    LocalCliffordMap map;
    map.d = d;
    map.pairs = {m1, n1, m2, n2};
    // tau^{-(d-1) m n} Z^m X^n in canonical X-first form picks up q^{mn}.
    map.xbar = PauliElement::from_exponents_phased(d, {n1}, {m1},
                                                   int64_t(3 - d) * m1 * n1);
    map.zbar = PauliElement::from_exponents_phased(d, {n2}, {m2},
                                                   int64_t(3 - d) * m2 * n2);
    assert(commutation_exponent(map.zbar, map.xbar) == 1 % d);

    // Dense realization: map the Z eigenbasis onto the zbar eigenbasis, with
    // relative phases fixed by xbar. zbar's +1 eigenprojector is the group
    // average of its powers; xbar^d = I exactly by the phase convention, so
    // the ladder closes.
    CMatrix zmat = to_matrix(map.zbar);
    CMatrix proj(d, d);
    CMatrix acc = CMatrix::identity(d);
    for (int j = 0; j < d; ++j) {
        proj += acc;
        acc = acc * zmat;
    }
    proj *= cplx(1.0 / d, 0.0);
    // First column of the projector with nonzero norm.
    CVector v(d);
    for (std::size_t col = 0; col < std::size_t(d); ++col) {
        double norm2 = 0;
        for (std::size_t r = 0; r < std::size_t(d); ++r) norm2 += std::norm(proj(r, col));
        if (norm2 > 1e-9) {
            for (std::size_t r = 0; r < std::size_t(d); ++r) v[r] = proj(r, col);
            break;
        }
    }
    normalize(v);
    CMatrix xmat = to_matrix(map.xbar);
    CMatrix u(d, d);
    for (int k = 0; k < d; ++k) {
        for (std::size_t r = 0; r < std::size_t(d); ++r) u(r, k) = v[r];
        CVector next(d);
        for (std::size_t r = 0; r < std::size_t(d); ++r) {
            cplx s{};
            for (std::size_t c = 0; c < std::size_t(d); ++c) s += xmat(r, c) * v[c];
            next[r] = s;
        }
        v = std::move(next);
    }
    map.unitary = std::move(u);
    assert(map.unitary.is_unitary(kUnitarityTol));
    return map;
}

std::vector<std::array<int, 4>> enumerate_local_clifford_pairs(int d) {
    std::vector<std::array<int, 4>> out;
    for (int m1 = 0; m1 < d; ++m1)
        for (int n1 = 0; n1 < d; ++n1) {
            if (std::gcd(std::gcd(m1, n1), d) != 1) continue;
            for (int m2 = 0; m2 < d; ++m2)
                for (int n2 = 0; n2 < d; ++n2) {
                    if (std::gcd(std::gcd(m2, n2), d) != 1) continue;
                    if (mod_pos(int64_t(m2) * n1 - int64_t(m1) * n2, d) != 1) continue;
                    out.push_back({m1, n1, m2, n2});
                }
        }
    return out;
}

PauliElement apply_local_clifford(const LocalCliffordMap& map, const PauliElement& p, int coord) {
    if (coord < 0 || coord >= p.n) throw InputError("coordinate out of range");
    PauliElement single = PauliElement::from_exponents(p.d, {p.x[coord]}, {p.z[coord]});
    PauliElement image = map.apply_single(single);
    PauliElement out = p;
    out.x[coord] = image.x[0];
    out.z[coord] = image.z[0];
    out.phase = out.phase.plus(image.phase);
    return out;
}

}  // namespace qecc
