#include "qecc/unitary.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "qecc/errors.hpp"
#include "qecc/structure.hpp"

namespace qecc {

// -------------------------------------------------------------------------
// Pauli transfer matrices
// -------------------------------------------------------------------------

PauliElement PauliTransferMatrix::basis_element(int d, int r, std::size_t index) {
    std::vector<int> x(r), z(r);
    for (int i = r - 1; i >= 0; --i) {
        int digit = int(index % std::size_t(d * d));
        index /= std::size_t(d * d);
        x[i] = digit / d;
        z[i] = digit % d;
    }
    return PauliElement::canonical(d, x, z);
}

std::size_t PauliTransferMatrix::basis_index(const PauliElement& p) {
    std::size_t idx = 0;
    for (int i = 0; i < p.n; ++i)
        idx = idx * std::size_t(p.d * p.d) + std::size_t(p.x[i] * p.d + p.z[i]);
    return idx;
}

PauliTransferMatrix transfer_matrix(const CMatrix& u, int d, int r) {
    std::size_t dim = 1;
    std::size_t basis = 1;
    for (int i = 0; i < r; ++i) {
        dim *= std::size_t(d);
        basis *= std::size_t(d * d);
    }
    if (basis > 256) throw ResourceError("transfer matrix bound d^{2r} <= 256 exceeded");
    if (u.rows() != dim || u.cols() != dim) throw InputError("unitary has wrong dimension");
    if (!u.is_unitary(kUnitarityTol)) throw InputError("transfer matrix input is not unitary");

    PauliTransferMatrix out;
    out.d = d;
    out.r = r;
    out.alpha = CMatrix(basis - 1, basis - 1);
    CMatrix udag = u.adjoint();
    for (std::size_t s = 1; s < basis; ++s) {
        CMatrix image = u * to_matrix(PauliTransferMatrix::basis_element(d, r, s)) * udag;
        for (std::size_t t = 1; t < basis; ++t) {
            // tr(R_t^dag M) via the single nonzero entry per column of R_t.
            CMatrix rt = to_matrix(PauliTransferMatrix::basis_element(d, r, t));
            cplx tr{};
            for (std::size_t col = 0; col < dim; ++col) {
                for (std::size_t row = 0; row < dim; ++row) {
                    if (rt(row, col) == cplx{}) continue;
                    tr += std::conj(rt(row, col)) * image(row, col);
                    break;
                }
            }
            out.alpha(t - 1, s - 1) = tr / double(dim);
        }
    }
    if (!out.alpha.is_unitary(kPreservationTol))
        throw std::logic_error("transfer matrix rows/columns failed orthonormality");
    return out;
}

// -------------------------------------------------------------------------
// Maximal abelian subgroups (modulo phases)
// -------------------------------------------------------------------------

namespace {

using ExpVec = std::vector<int>;  // x_1..x_r, z_1..z_r

int symplectic_form(const ExpVec& a, const ExpVec& b, int d, int r) {
    int64_t c = 0;
    for (int i = 0; i < r; ++i) c += int64_t(a[r + i]) * b[i] - int64_t(a[i]) * b[r + i];
    c %= d;
    return int(c < 0 ? c + d : c);
}

std::vector<ExpVec> all_exponent_vectors(int d, int r) {
    std::size_t total = 1;
    for (int i = 0; i < 2 * r; ++i) total *= std::size_t(d);
    std::vector<ExpVec> out;
    for (std::size_t idx = 0; idx < total; ++idx) {
        ExpVec v(2 * r);
        std::size_t rem = idx;
        for (int i = 0; i < 2 * r; ++i) {
            v[i] = int(rem % d);
            rem /= d;
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::set<ExpVec> closure_of(const std::vector<ExpVec>& gens, int d) {
    std::set<ExpVec> group;
    group.insert(ExpVec(gens.empty() ? 0 : gens[0].size(), 0));
    bool grew = true;
    while (grew) {
        grew = false;
        auto next = group;
        for (const auto& a : group)
            for (const auto& g : gens) {
                ExpVec s(a.size());
                for (std::size_t i = 0; i < a.size(); ++i) s[i] = (a[i] + g[i]) % d;
                if (next.insert(s).second) grew = true;
            }
        group = std::move(next);
    }
    return group;
}

bool is_isotropic(const std::set<ExpVec>& group, int d, int r) {
    for (const auto& a : group)
        for (const auto& b : group)
            if (symplectic_form(a, b, d, r) != 0) return false;
    return true;
}

PauliElement element_from_expvec(const ExpVec& v, int d, int r) {
    std::vector<int> x(v.begin(), v.begin() + r), z(v.begin() + r, v.end());
    return PauliElement::canonical(d, x, z);
}

}  // namespace

std::vector<std::vector<PauliElement>> maximal_abelian_subgroups(int d, int r) {
    auto vectors = all_exponent_vectors(d, r);
    std::set<std::set<ExpVec>> isotropic;
    for (const auto& a : vectors) {
        auto single = closure_of({a}, d);
        if (is_isotropic(single, d, r)) isotropic.insert(single);
        for (const auto& b : vectors) {
            auto pair = closure_of({a, b}, d);
            if (is_isotropic(pair, d, r)) isotropic.insert(pair);
        }
    }
    std::vector<std::set<ExpVec>> maximal;
    for (const auto& g : isotropic) {
        bool contained = false;
        for (const auto& h : isotropic)
            if (g != h && std::includes(h.begin(), h.end(), g.begin(), g.end())) contained = true;
        if (!contained) maximal.push_back(g);
    }
    std::vector<std::vector<PauliElement>> out;
    for (const auto& g : maximal) {
        std::vector<PauliElement> elems;
        for (const auto& v : g) elems.push_back(element_from_expvec(v, d, r));
        out.push_back(std::move(elems));
    }
    return out;
}

// -------------------------------------------------------------------------
// Classification
// -------------------------------------------------------------------------

std::string to_string(UnitaryClass c) {
    switch (c) {
        case UnitaryClass::Clifford: return "Clifford";
        case UnitaryClass::SemiClifford: return "SemiClifford";
        case UnitaryClass::GeneralizedSemiClifford: return "GeneralizedSemiClifford";
        case UnitaryClass::General: return "General";
    }
    return "?";
}

namespace {

bool column_monomial(const CMatrix& alpha, std::size_t col, double tol) {
    int big = 0;
    for (std::size_t rowi = 0; rowi < alpha.rows(); ++rowi) {
        double a = std::abs(alpha(rowi, col));
        if (a > tol && a < 1.0 - tol) return false;
        if (a >= 1.0 - tol) ++big;
    }
    return big == 1;
}

std::size_t column_image_row(const CMatrix& alpha, std::size_t col, double tol) {
    for (std::size_t rowi = 0; rowi < alpha.rows(); ++rowi)
        if (std::abs(alpha(rowi, col)) >= 1.0 - tol) return rowi;
    return alpha.rows();
}

std::set<std::size_t> image_rows(const CMatrix& alpha, const std::set<std::size_t>& cols,
                                 double tol) {
    std::set<std::size_t> rows;
    for (std::size_t col : cols)
        for (std::size_t rowi = 0; rowi < alpha.rows(); ++rowi)
            if (std::abs(alpha(rowi, col)) > tol) rows.insert(rowi);
    return rows;
}

// All subgroups of Z_d^2 (r = 1), as sets of exponent vectors.
std::vector<std::set<ExpVec>> all_pair_subgroups(int d) {
    auto vectors = all_exponent_vectors(d, 1);
    std::set<std::set<ExpVec>> subgroups;
    for (const auto& a : vectors) {
        subgroups.insert(closure_of({a}, d));
        for (const auto& b : vectors) subgroups.insert(closure_of({a, b}, d));
    }
    return {subgroups.begin(), subgroups.end()};
}

}  // namespace

UnitaryClassification classify_unitary(const CMatrix& u, int d, int r) {
    if (!(d == 2 ? (r >= 1 && r <= 2) : r == 1))
        throw ResourceError("exact classification bounded to r <= 2 at d = 2, r = 1 otherwise");
    PauliTransferMatrix ptm = transfer_matrix(u, d, r);
    const double tol = kBlockTol;

    UnitaryClassification out;
    bool monomial = true;
    for (std::size_t col = 0; col < ptm.side(); ++col)
        if (!column_monomial(ptm.alpha, col, tol)) monomial = false;
    if (monomial) {
        out.cls = UnitaryClass::Clifford;
        return out;
    }

    auto subgroup_indices = [&](const std::vector<PauliElement>& elems) {
        std::set<std::size_t> idx;
        for (const auto& e : elems)
            if (!e.is_unphased_identity()) idx.insert(PauliTransferMatrix::basis_index(e) - 1);
        return idx;
    };

    auto maximal = maximal_abelian_subgroups(d, r);
    std::vector<std::set<std::size_t>> maximal_idx;
    for (const auto& g : maximal) maximal_idx.push_back(subgroup_indices(g));

    // Semi-Clifford: some maximal abelian subgroup maps onto another, i.e.
    // every nonidentity column of it is monomial.
    for (std::size_t gi = 0; gi < maximal.size(); ++gi) {
        bool all_monomial = true;
        for (std::size_t col : maximal_idx[gi])
            if (!column_monomial(ptm.alpha, col, tol)) all_monomial = false;
        if (!all_monomial) continue;
        out.cls = UnitaryClass::SemiClifford;
        out.witness = maximal[gi];
        for (std::size_t col : maximal_idx[gi]) {
            std::size_t rowi = column_image_row(ptm.alpha, col, tol);
            out.witness_image.push_back(PauliTransferMatrix::basis_element(d, r, rowi + 1));
        }
        return out;
    }

    // Generalized semi-Clifford: the span of some maximal abelian subgroup
    // (d = 2) or of some nontrivial proper subgroup (d > 2) maps into the
    // span of another subgroup of the same order.
    std::vector<std::set<ExpVec>> candidates;
    if (d == 2) {
        for (const auto& g : maximal) {
            std::set<ExpVec> vecs;
            for (const auto& e : g) {
                ExpVec v(e.x);
                v.insert(v.end(), e.z.begin(), e.z.end());
                vecs.insert(std::move(v));
            }
            candidates.push_back(std::move(vecs));
        }
    } else {
        for (auto& g : all_pair_subgroups(d)) {
            if (g.size() <= 1 || g.size() >= std::size_t(d) * std::size_t(d)) continue;
            candidates.push_back(std::move(g));
        }
    }
    auto vec_indices = [&](const std::set<ExpVec>& vecs) {
        std::set<std::size_t> idx;
        for (const auto& v : vecs) {
            bool zero = std::all_of(v.begin(), v.end(), [](int e) { return e == 0; });
            if (zero) continue;
            idx.insert(PauliTransferMatrix::basis_index(element_from_expvec(v, d, r)) - 1);
        }
        return idx;
    };
    for (const auto& from : candidates) {
        auto cols = vec_indices(from);
        auto rows = image_rows(ptm.alpha, cols, tol);
        for (const auto& to : candidates) {
            if (to.size() != from.size()) continue;
            auto target = vec_indices(to);
            if (std::includes(target.begin(), target.end(), rows.begin(), rows.end())) {
                out.cls = UnitaryClass::GeneralizedSemiClifford;
                for (const auto& v : from) out.witness.push_back(element_from_expvec(v, d, r));
                for (const auto& v : to) out.witness_image.push_back(element_from_expvec(v, d, r));
                return out;
            }
        }
    }
    out.cls = UnitaryClass::General;
    return out;
}

// -------------------------------------------------------------------------
// Transversal gates
// -------------------------------------------------------------------------

TransversalGate make_transversal(int d, int n, int r, std::vector<CMatrix> factors) {
    if (int(factors.size()) != n)
        throw InputError("transversal gate needs one factor per coordinate");
    std::size_t dim = 1;
    for (int i = 0; i < r; ++i) dim *= std::size_t(d);
    for (const auto& f : factors) {
        if (f.rows() != dim || f.cols() != dim)
            throw InputError("transversal factor has wrong dimension");
        if (!f.is_unitary(kUnitarityTol)) throw InputError("transversal factor is not unitary");
    }
    TransversalGate g;
    g.d = d;
    g.n = n;
    g.r = r;
    g.factors = std::move(factors);
    return g;
}

TransversalGate bitwise_gate(int d, int n, const CMatrix& u1) {
    return make_transversal(d, n, 1, std::vector<CMatrix>(n, u1));
}

std::vector<int> factor_positions(const TransversalGate& g, int coordinate) {
    std::vector<int> pos;
    for (int b = 0; b < g.r; ++b) pos.push_back(b * g.n + coordinate);
    return pos;
}

CVector apply_transversal(const TransversalGate& g, const CVector& state) {
    CVector v = state;
    for (int j = 0; j < g.n; ++j)
        v = apply_local_to_vector(g.factors[j], factor_positions(g, j), g.d, g.n * g.r, v);
    return v;
}

CMatrix conjugate_by_transversal(const TransversalGate& g, const CMatrix& m) {
    CMatrix out = m;
    for (int j = 0; j < g.n; ++j)
        out = conjugate_by_local(g.factors[j], factor_positions(g, j), g.d, g.n * g.r, out);
    return out;
}

namespace {

CVector apply_pauli_to_vector(const PauliElement& p, const CVector& v) {
    std::size_t dim = v.size();
    CVector out(dim);
    std::vector<int> digits(p.n);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        if (v[idx] == cplx{}) continue;
        std::size_t rem = idx;
        for (int i = p.n - 1; i >= 0; --i) {
            digits[i] = int(rem % p.d);
            rem /= p.d;
        }
        int64_t k = p.phase.k;
        std::size_t target = 0;
        for (int i = 0; i < p.n; ++i) {
            k += 2 * int64_t(p.z[i]) * digits[i];
            target = target * p.d + std::size_t((digits[i] + p.x[i]) % p.d);
        }
        out[target] += PhaseExponent::make(p.d, k).value() * v[idx];
    }
    return out;
}

CMatrix kron_power(const CMatrix& m, int r) {
    CMatrix out = CMatrix::identity(1);
    for (int i = 0; i < r; ++i) out = kron(out, m);
    return out;
}

}  // namespace

PreservationResult preserves_code(const TransversalGate& gate, const CodeSpec& spec,
                                  const std::optional<SupportSet>& omega,
                                  std::size_t dense_bound) {
    const StabilizerGroup& s = spec.stabilizer;
    if (gate.d != s.d) throw InputError("gate and code dimension mismatch");
    PreservationResult res;
    if (omega) {
        if (int(gate.factors.size()) != s.n && gate.factors.size() != omega->size())
            throw InputError("gate factor count mismatch");
        CMatrix rho = reduced_projector(s, *omega, dense_bound);
        std::size_t dim = 1;
        for (std::size_t i = 0; i < omega->size() * std::size_t(gate.r); ++i) {
            dim *= std::size_t(s.d);
            if (dim > dense_bound) throw ResourceError("restricted check exceeds dense bound");
        }
        CMatrix p = kron_power(rho, gate.r);
        std::vector<CMatrix> sub_factors;
        if (gate.factors.size() == omega->size())
            sub_factors = gate.factors;
        else
            for (int c : *omega) sub_factors.push_back(gate.factors[c]);
        TransversalGate sub = make_transversal(s.d, int(omega->size()), gate.r, sub_factors);
        CMatrix image = conjugate_by_transversal(sub, p);
        res.residual = (image - p).frobenius_norm();
        res.preserves = res.residual <= kPreservationTol;
        res.method = "dense";
        return res;
    }
    if (int(gate.factors.size()) != s.n) throw InputError("gate factor count mismatch");
    std::size_t dim = 1;
    bool dense_ok = true;
    for (int i = 0; i < s.n * gate.r; ++i) {
        dim *= std::size_t(s.d);
        if (dim > dense_bound) {
            dense_ok = false;
            break;
        }
    }
    if (dense_ok && s.enumerated()) {
        CMatrix p = kron_power(projector(s, dense_bound), gate.r);
        CMatrix image = conjugate_by_transversal(gate, p);
        res.residual = (image - p).frobenius_norm();
        res.preserves = res.residual <= kPreservationTol;
        res.method = "dense";
        return res;
    }
    if (!spec.css || gate.r != 1)
        throw ResourceError("code too large for dense check and no CSS codeword path");
    auto words = css_codewords(spec);
    double worst = 0;
    for (const auto& w : words) {
        CVector uw = apply_transversal(gate, w);
        for (const auto& g : s.generators) {
            CVector gw = apply_pauli_to_vector(g, uw);
            double diff = 0;
            for (std::size_t i = 0; i < uw.size(); ++i) diff += std::norm(gw[i] - uw[i]);
            worst = std::max(worst, std::sqrt(diff));
        }
    }
    res.residual = worst;
    res.preserves = worst <= kPreservationTol;
    res.method = "codewords";
    return res;
}

// -------------------------------------------------------------------------
// Minimum-weight logicals
// -------------------------------------------------------------------------

namespace {

std::pair<int, int> logical_signature(const PauliElement& e, const PauliElement& lz,
                                      const PauliElement& lx) {
    return {commutation_exponent(e, lz), commutation_exponent(e, lx)};
}

}  // namespace

LogicalWitness min_weight_logical(const CodeSpec& spec, int protected_index) {
    const StabilizerGroup& s = spec.stabilizer;
    if (spec.k == 0) throw InputError("code has no protected qudits");
    if (protected_index < 0 || protected_index >= spec.k)
        throw InputError("protected index out of range");

    // Modding subgroup: stabilizer plus gauge (the gauge freedom cannot
    // shrink a protected logical's weight, so it joins the quotient).
    std::vector<PauliElement> mod_gens = s.generators;
    for (const auto& g : spec.gauge_generators) mod_gens.push_back(g);
    ZModMatrix mod_span = exponent_matrix(mod_gens, s.d, s.n).howell();
    auto in_mod_span = [&](const PauliElement& e) {
        ZModMatrix::Row v(2 * std::size_t(s.n));
        for (int i = 0; i < s.n; ++i) {
            v[i] = e.x[i];
            v[s.n + i] = e.z[i];
        }
        return mod_span.spans(v);
    };

    std::vector<PauliElement> lx, lz;
    if (spec.css && !spec.css->logical_x.empty()) {
        for (int i = 0; i < spec.k; ++i) {
            lx.push_back(PauliElement::from_exponents(s.d, spec.css->logical_x[i],
                                                      std::vector<int>(s.n, 0)));
            lz.push_back(PauliElement::from_exponents(s.d, std::vector<int>(s.n, 0),
                                                      spec.css->logical_z[i]));
        }
    } else if (spec.k > 1) {
        throw InputError("k >= 2 requires explicit logical representatives");
    }

    // Candidates may be dressed with arbitrary gauge operators, so gauge
    // commutation is NOT required; only the stabilizer must be centralized
    // and the protected action must be right.
    auto qualifies = [&](const PauliElement& e) {
        if (!in_centralizer(s, e)) return false;
        if (lx.empty()) return !in_mod_span(e);
        auto sig = logical_signature(e, lz[protected_index], lx[protected_index]);
        if (sig == std::pair<int, int>{0, 0}) return false;
        for (int i = 0; i < spec.k; ++i) {
            if (i == protected_index) continue;
            if (logical_signature(e, lz[i], lx[i]) != std::pair<int, int>{0, 0}) return false;
        }
        return true;
    };

    // Weight-ordered exhaustive search; the first hit certifies the minimum.
    int d2m1 = s.d * s.d - 1;
    std::optional<PauliElement> found;
    for (int w = 1; w <= s.n && !found; ++w) {
        std::vector<int> comb(w);
        std::iota(comb.begin(), comb.end(), 0);
        while (!found) {
            std::vector<int> assign(w, 0);
            while (true) {
                PauliElement e = PauliElement::identity(s.d, s.n);
                bool valid = true;
                for (int i = 0; i < w; ++i) {
                    int digit = assign[i] + 1;  // skip identity at each slot
                    e.x[comb[i]] = digit / s.d;
                    e.z[comb[i]] = digit % s.d;
                    if (e.x[comb[i]] == 0 && e.z[comb[i]] == 0) valid = false;
                }
                if (valid && qualifies(e)) {
                    found = e;
                    break;
                }
                int i = w - 1;
                while (i >= 0 && ++assign[i] == d2m1) assign[i--] = 0;
                if (i < 0) break;
            }
            if (found) break;
            int i = w - 1;
            while (i >= 0 && comb[i] == s.n - w + i) --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < w; ++j) comb[j] = comb[j - 1] + 1;
        }
    }
    if (!found) throw InputError("no logical representative found");

    LogicalWitness out;
    out.protected_index = protected_index;
    out.alpha = *found;
    out.omega = found->support();
    out.weight = found->weight();
    out.order_q = order_phase_free(*found);
    out.exponent_m = s.d / out.order_q;

    if (s.d == 2 && !lx.empty()) {
        // Same-support representatives for the other two logical axes; their
        // absence is legitimate and reported as such.
        auto alpha_sig = logical_signature(out.alpha, lz[protected_index], lx[protected_index]);
        std::map<std::pair<int, int>, PauliElement> by_sig;
        int w = out.weight;
        std::vector<int> assign(w, 0);
        while (true) {
            PauliElement e = PauliElement::identity(s.d, s.n);
            bool valid = true;
            for (int i = 0; i < w; ++i) {
                int digit = assign[i] + 1;
                e.x[out.omega[i]] = digit / s.d;
                e.z[out.omega[i]] = digit % s.d;
                if (e.x[out.omega[i]] == 0 && e.z[out.omega[i]] == 0) valid = false;
            }
            if (valid && qualifies(e)) {
                auto sig = logical_signature(e, lz[protected_index], lx[protected_index]);
                if (!by_sig.count(sig)) by_sig[sig] = e;
            }
            int i = w - 1;
            while (i >= 0 && ++assign[i] == 3) assign[i--] = 0;
            if (i < 0) break;
        }
        std::vector<PauliElement> others;
        for (const auto& [sig, e] : by_sig)
            if (sig != alpha_sig) others.push_back(e);
        if (others.size() >= 2) {
            out.beta = others[0];
            out.gamma = others[1];
            // Coordinatewise the triple must exhaust three distinct axes.
            out.locally_clifford_equivalent = true;
            for (int c : out.omega) {
                std::set<std::pair<int, int>> axes;
                axes.insert({out.alpha.x[c], out.alpha.z[c]});
                axes.insert({out.beta->x[c], out.beta->z[c]});
                axes.insert({out.gamma->x[c], out.gamma->z[c]});
                if (axes.size() != 3 || axes.count({0, 0}))
                    out.locally_clifford_equivalent = false;
            }
        }
    } else {
        // Qudit reading: alpha ~ (X^m)^(x)|omega| up to local Cliffords when
        // every coordinate factor has order q and maps onto X^m.
        auto cliffords = enumerate_local_clifford_pairs(s.d);
        bool ok = true;
        for (int c : out.omega) {
            int po = s.d / std::gcd(s.d, std::gcd(out.alpha.x[c], out.alpha.z[c]));
            if (po != out.order_q) {
                ok = false;
                break;
            }
            bool coord_ok = false;
            for (const auto& sig : cliffords) {
                int xi = (out.alpha.x[c] * sig[1] + out.alpha.z[c] * sig[3]) % s.d;
                int zi = (out.alpha.x[c] * sig[0] + out.alpha.z[c] * sig[2]) % s.d;
                if (xi == out.exponent_m && zi == 0) {
                    coord_ok = true;
                    break;
                }
            }
            if (!coord_ok) ok = false;
        }
        out.locally_clifford_equivalent = ok;
    }
    return out;
}

// -------------------------------------------------------------------------
// Conjugated Pauli expansion
// -------------------------------------------------------------------------

ProjectedConjugation project_conjugated(const TransversalGate& gate, const PauliElement& p,
                                        const StabilizerGroup& s, std::size_t term_bound) {
    if (p.d != gate.d || p.n != gate.n * gate.r)
        throw InputError("Pauli element must live on all n*r qudits of the gate");

    struct FactorImage {
        std::vector<std::pair<cplx, PauliElement>> terms;  // r-qudit canonical elements
    };
    std::vector<FactorImage> images(gate.n);
    cplx overall = p.phase.value();
    std::size_t total_terms = 1;
    for (int j = 0; j < gate.n; ++j) {
        PauliElement pj = restrict_to(p, factor_positions(gate, j));
        pj.phase = PhaseExponent::zero(p.d);  // folded into `overall`
        if (pj.is_unphased_identity()) {
            images[j].terms.push_back({1.0, PauliElement::identity(p.d, gate.r)});
            continue;
        }
        // pj = tau^{-c} R_canon for the canonical basis representative.
        PauliElement canon = PauliElement::canonical(p.d, pj.x, pj.z);
        overall *= std::conj(canon.phase.value());
        PauliTransferMatrix ptm = transfer_matrix(gate.factors[j], gate.d, gate.r);
        std::size_t col = PauliTransferMatrix::basis_index(canon) - 1;
        for (std::size_t rowi = 0; rowi < ptm.side(); ++rowi) {
            cplx a = ptm.alpha(rowi, col);
            if (std::abs(a) < 1e-12) continue;
            images[j].terms.push_back(
                {a, PauliTransferMatrix::basis_element(gate.d, gate.r, rowi + 1)});
        }
        total_terms *= images[j].terms.size();
        if (total_terms > term_bound) throw ResourceError("Pauli expansion exceeds term bound");
    }

    ProjectedConjugation out;
    std::vector<std::size_t> pick(gate.n, 0);
    while (true) {
        cplx coeff = overall;
        PauliElement assembled = PauliElement::identity(p.d, p.n);
        int64_t phase_sum = 0;
        for (int j = 0; j < gate.n; ++j) {
            const auto& [a, elem] = images[j].terms[pick[j]];
            coeff *= a;
            auto pos = factor_positions(gate, j);
            for (int b = 0; b < gate.r; ++b) {
                assembled.x[pos[b]] = elem.x[b];
                assembled.z[pos[b]] = elem.z[b];
            }
            phase_sum += elem.phase.k;
        }
        // Terms carry phase-0 elements; canonical phases fold into the
        // coefficient.
        coeff *= PhaseExponent::make(p.d, phase_sum).value();
        PauliSumTerm term{coeff, assembled};
        if (in_centralizer(s, assembled))
            out.centralizer_terms.push_back(std::move(term));
        else
            out.other_terms.push_back(std::move(term));
        int j = gate.n - 1;
        while (j >= 0 && ++pick[j] == images[j].terms.size()) pick[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

// -------------------------------------------------------------------------
// Logical action
// -------------------------------------------------------------------------

CMatrix logical_action(const TransversalGate& gate, const CodeSpec& spec,
                       std::size_t state_bound) {
    if (gate.r != 1) throw ResourceError("logical action is computed for single blocks");
    if (!spec.css) throw InputError("logical action needs a codeword basis (CSS presentation)");
    auto check = preserves_code(gate, spec);
    if (!check.preserves)
        throw InputError("gate does not preserve the code (residual " +
                         std::to_string(check.residual) + ")");
    auto words = css_codewords(spec, state_bound);
    CMatrix action(words.size(), words.size());
    for (std::size_t col = 0; col < words.size(); ++col) {
        CVector image = apply_transversal(gate, words[col]);
        for (std::size_t rowi = 0; rowi < words.size(); ++rowi)
            action(rowi, col) = inner_product(words[rowi], image);
    }
    if (!action.is_unitary(kPreservationTol))
        throw std::logic_error("logical action failed unitarity");
    return action;
}

// -------------------------------------------------------------------------
// Code automorphisms
// -------------------------------------------------------------------------

PreservationResult check_code_automorphism(const TransversalGate& gate,
                                           const std::vector<int>& pi, const CodeSpec& spec,
                                           std::size_t dense_bound) {
    const StabilizerGroup& s = spec.stabilizer;
    int total = s.n * gate.r;
    if (int(pi.size()) != total) throw InputError("permutation must cover all n*r coordinates");
    std::vector<bool> seen(total, false);
    for (int v : pi) {
        if (v < 0 || v >= total || seen[v]) throw InputError("not a permutation");
        seen[v] = true;
    }
    std::size_t dim = 1;
    bool dense_ok = true;
    for (int i = 0; i < total; ++i) {
        dim *= std::size_t(s.d);
        if (dim > dense_bound) {
            dense_ok = false;
            break;
        }
    }
    PreservationResult res;
    if (dense_ok && s.enumerated()) {
        CMatrix p = kron_power(projector(s, dense_bound), gate.r);
        CMatrix permuted = conjugate_by_permutation(p, pi, s.d, total);
        CMatrix image = conjugate_by_transversal(gate, permuted);
        res.residual = (image - p).frobenius_norm();
        res.preserves = res.residual <= kPreservationTol;
        res.method = "dense";
        return res;
    }
    if (!spec.css || gate.r != 1)
        throw ResourceError("code too large for dense check and no CSS codeword path");
    auto words = css_codewords(spec);
    double worst = 0;
    for (const auto& w : words) {
        CVector pw = apply_permutation_to_vector(w, pi, s.d, total);
        CVector uw = apply_transversal(gate, pw);
        for (const auto& g : s.generators) {
            CVector gw = apply_pauli_to_vector(g, uw);
            double diff = 0;
            for (std::size_t i = 0; i < uw.size(); ++i) diff += std::norm(gw[i] - uw[i]);
            worst = std::max(worst, std::sqrt(diff));
        }
    }
    res.residual = worst;
    res.preserves = worst <= kPreservationTol;
    res.method = "codewords";
    return res;
}

namespace {

// Exact phase correction: a Pauli Q with q^{<Q, img_i>} fixing every
// generator phase mismatch against the matching group element. Mismatches
// must be even tau powers.
bool phase_correction_exists(const StabilizerGroup& s, const std::vector<PauliElement>& images) {
    std::size_t m = images.size();
    std::vector<int64_t> target;
    std::vector<std::vector<int64_t>> a_rows;
    const ElementList& elems = enumerate_elements(s);
    for (const auto& img : images) {
        int found_phase = -1;
        for (std::size_t e = 0; e < elems.size(); ++e) {
            PauliElement cand = elems.get(e);
            if (cand.x == img.x && cand.z == img.z) {
                found_phase = cand.phase.k;
                break;
            }
        }
        if (found_phase < 0) return false;
        int64_t delta = (found_phase - img.phase.k) % (2 * s.d);
        if (delta < 0) delta += 2 * s.d;
        if (delta % 2 != 0) return false;
        target.push_back((delta / 2) % s.d);
        std::vector<int64_t> row(2 * std::size_t(s.n));
        for (int i = 0; i < s.n; ++i) {
            row[i] = mod_reduce(-img.z[i], s.d);
            row[s.n + i] = img.x[i];
        }
        a_rows.push_back(std::move(row));
    }
    // Solve A Q = target over Z_d: target must lie in the column span of A.
    ZModMatrix at(s.d, m);
    for (std::size_t c = 0; c < 2 * std::size_t(s.n); ++c) {
        ZModMatrix::Row r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = a_rows[i][c];
        at.add_row(std::move(r));
    }
    ZModMatrix::Row t(target.begin(), target.end());
    return at.spans(t);
}

}  // namespace

std::vector<AutomorphismCandidate> find_automorphisms(const StabilizerGroup& s,
                                                      bool permutations_only,
                                                      std::size_t limit) {
    if (s.n > 6) throw ResourceError("exhaustive automorphism search is bounded to n <= 6");
    if (!permutations_only && s.d > 4)
        throw ResourceError("local Clifford automorphism search is bounded to d <= 4");
    const ElementList& elems = enumerate_elements(s);
    std::set<std::string> unphased_keys, phased_keys;
    for (std::size_t e = 0; e < elems.size(); ++e) {
        PauliElement el = elems.get(e);
        unphased_keys.insert(el.unphased_key());
        phased_keys.insert(el.key());
    }

    std::vector<std::map<std::pair<int, int>, int>> target_counts(s.n);
    for (std::size_t e = 0; e < elems.size(); ++e) {
        const uint8_t* r = elems.row(e);
        for (int c = 0; c < s.n; ++c) target_counts[c][{int(r[c]), int(r[s.n + c])}]++;
    }

    auto cliffords = enumerate_local_clifford_pairs(s.d);
    std::vector<LocalCliffordMap> maps;
    if (!permutations_only)
        for (const auto& c : cliffords)
            maps.push_back(local_clifford_from_pairs(c[0], c[1], c[2], c[3], s.d));

    std::vector<AutomorphismCandidate> out;
    std::vector<int> perm(s.n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<PauliElement> permuted;
        for (std::size_t e = 0; e < elems.size(); ++e)
            permuted.push_back(permute_coordinates(elems.get(e), perm));

        if (permutations_only) {
            bool match = true;
            for (const auto& pe : permuted)
                if (!phased_keys.count(pe.key())) {
                    match = false;
                    break;
                }
            if (match) {
                AutomorphismCandidate cand;
                cand.permutation = perm;
                cand.local_cliffords.assign(s.n, {0, 1, 1, 0});
                out.push_back(std::move(cand));
                if (out.size() >= limit) return out;
            }
            continue;
        }

        // Candidate sigmas per coordinate: restriction multisets must match.
        std::vector<std::map<std::pair<int, int>, int>> perm_counts(s.n);
        for (const auto& pe : permuted)
            for (int c = 0; c < s.n; ++c) perm_counts[c][{pe.x[c], pe.z[c]}]++;
        std::vector<std::vector<std::size_t>> candidates(s.n);
        bool feasible = true;
        for (int c = 0; c < s.n; ++c) {
            for (std::size_t mi = 0; mi < maps.size(); ++mi) {
                std::map<std::pair<int, int>, int> mapped;
                for (const auto& [pr, count] : perm_counts[c]) {
                    PauliElement single =
                        PauliElement::from_exponents(s.d, {pr.first}, {pr.second});
                    PauliElement img = maps[mi].apply_single(single);
                    mapped[{img.x[0], img.z[0]}] += count;
                }
                if (mapped == target_counts[c]) candidates[c].push_back(mi);
            }
            if (candidates[c].empty()) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;

        // DFS over coordinates with subset-support pruning.
        std::vector<std::size_t> chosen(s.n, 0);
        std::function<bool(int)> dfs = [&](int c) -> bool {
            if (c == s.n) {
                std::vector<PauliElement> images;
                for (const auto& g : s.generators) {
                    PauliElement img = permute_coordinates(g, perm);
                    for (int cc = 0; cc < s.n; ++cc)
                        img = apply_local_clifford(maps[candidates[cc][chosen[cc]]], img, cc);
                    if (!unphased_keys.count(img.unphased_key())) return false;
                    images.push_back(std::move(img));
                }
                if (!phase_correction_exists(s, images)) return false;
                AutomorphismCandidate cand;
                cand.permutation = perm;
                bool nontrivial = false;
                for (int cc = 0; cc < s.n; ++cc) {
                    auto tuple = cliffords[candidates[cc][chosen[cc]]];
                    cand.local_cliffords.push_back(tuple);
                    if (!(tuple == std::array<int, 4>{0, 1, 1, 0})) nontrivial = true;
                }
                cand.clifford_nontrivial = nontrivial;
                out.push_back(std::move(cand));
                return out.size() >= limit;
            }
            for (std::size_t pick = 0; pick < candidates[c].size(); ++pick) {
                chosen[c] = pick;
                bool ok = true;
                for (const auto& pe : permuted) {
                    SupportSet sup = pe.support();
                    if (!sup.empty() && sup.back() > c) continue;
                    PauliElement img = pe;
                    for (int cc = 0; cc <= c; ++cc)
                        img = apply_local_clifford(maps[candidates[cc][chosen[cc]]], img, cc);
                    if (!unphased_keys.count(img.unphased_key())) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                if (dfs(c + 1)) return true;
            }
            return false;
        };
        if (dfs(0)) return out;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace qecc
