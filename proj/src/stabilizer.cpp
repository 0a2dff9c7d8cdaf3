#include "qecc/stabilizer.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <numeric>
#include <set>

namespace qecc {

PauliElement ElementList::get(std::size_t i) const {
    const uint8_t* r = row(i);
    PauliElement p;
    p.d = d_;
    p.n = n_;
    p.x.assign(r, r + n_);
    p.z.assign(r + n_, r + 2 * n_);
    p.phase = PhaseExponent{d_, int(r[2 * n_])};
    return p;
}

SupportSet ElementList::support_of(std::size_t i) const {
    const uint8_t* r = row(i);
    SupportSet s;
    for (int c = 0; c < n_; ++c)
        if (r[c] != 0 || r[n_ + c] != 0) s.push_back(c);
    return s;
}

bool ElementList::is_identity_row(std::size_t i) const {
    const uint8_t* r = row(i);
    for (std::size_t k = 0; k < stride_; ++k)
        if (r[k] != 0) return false;
    return true;
}

void ElementList::push(const PauliElement& p) {
    assert(p.d == d_ && p.n == n_);
    for (int e : p.x) buf_.push_back(uint8_t(e));
    for (int e : p.z) buf_.push_back(uint8_t(e));
    buf_.push_back(uint8_t(p.phase.k));
}

std::optional<std::pair<std::size_t, std::size_t>> ElementList::sort_unique() {
    std::size_t count = size();
    std::vector<std::size_t> idx(count);
    for (std::size_t i = 0; i < count; ++i) idx[i] = i;
    const uint8_t* base = buf_.data();
    std::size_t st = stride_;
    std::sort(idx.begin(), idx.end(), [base, st](std::size_t a, std::size_t b) {
        return std::memcmp(base + a * st, base + b * st, st) < 0;
    });
    std::vector<uint8_t> out;
    out.reserve(buf_.size());
    std::optional<std::pair<std::size_t, std::size_t>> collision;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const uint8_t* r = base + idx[i] * st;
        if (kept > 0) {
            const uint8_t* prev = out.data() + (kept - 1) * st;
            if (std::memcmp(prev, r, st) == 0) continue;  // exact duplicate
            if (std::memcmp(prev, r, st - 1) == 0 && !collision)
                collision = std::make_pair(kept - 1, kept);  // same exponents, new phase
        }
        out.insert(out.end(), r, r + st);
        ++kept;
    }
    buf_ = std::move(out);
    return collision;
}

namespace {

ValidationFailure make_noncommuting(const PauliElement& a, const PauliElement& b) {
    ValidationFailure f;
    f.kind = ValidationFailure::NonCommutingPair;
    f.witness_a = a;
    f.witness_b = b;
    f.message = "generators do not commute";
    return f;
}

ValidationFailure make_phased_identity(const PauliElement& w) {
    ValidationFailure f;
    f.kind = ValidationFailure::PhasedIdentity;
    f.witness_a = w;
    f.message = "group contains a phased identity";
    return f;
}

// Closure of commuting phased generators by sort-unique rounds. Returns
// nullopt plus a failure when a phased identity shows up.
std::optional<ElementList> closure(const std::vector<PauliElement>& gens, std::size_t bound,
                                   std::optional<ValidationFailure>& failure) {
    int d = gens[0].d, n = gens[0].n;
    ElementList elems(d, n);
    elems.push(PauliElement::identity(d, n));
    for (const auto& g : gens) {
        int o = order(g);
        std::size_t have = elems.size();
        if (have * std::size_t(o) > 4 * bound)
            throw ResourceError("group enumeration exceeds bound " + std::to_string(bound));
        ElementList next(d, n);
        PauliElement gp = PauliElement::identity(d, n);
        for (int j = 0; j < o; ++j) {
            for (std::size_t i = 0; i < have; ++i) {
                PauliElement e = compose(elems.get(i), gp);
                next.push(e);
            }
            gp = compose(gp, g);
        }
        auto coll = next.sort_unique();
        if (coll) {
            PauliElement a = next.get(coll->first);
            PauliElement b = next.get(coll->second);
            failure = make_phased_identity(compose(inverse(a), b));
            return std::nullopt;
        }
        elems = std::move(next);
        if (elems.size() > bound)
            throw ResourceError("group enumeration exceeds bound " + std::to_string(bound));
    }
    // A phased identity may also appear directly as a nonzero-phase row with
    // zero exponents (e.g. a single generator -I).
    for (std::size_t i = 0; i < elems.size(); ++i) {
        PauliElement e = elems.get(i);
        if (e.is_unphased_identity() && !e.phase.is_zero()) {
            failure = make_phased_identity(e);
            return std::nullopt;
        }
    }
    return elems;
}

}  // namespace

ZModMatrix exponent_matrix(const std::vector<PauliElement>& elems, int d, int n) {
    ZModMatrix m(d, 2 * std::size_t(n));
    for (const auto& e : elems) {
        ZModMatrix::Row r(2 * std::size_t(n));
        for (int i = 0; i < n; ++i) {
            r[i] = e.x[i];
            r[n + i] = e.z[i];
        }
        m.add_row(std::move(r));
    }
    return m;
}

std::optional<ValidationFailure> validate_check(const std::vector<PauliElement>& generators,
                                                std::size_t max_enum) {
    if (generators.empty()) {
        ValidationFailure f;
        f.kind = ValidationFailure::NonCommutingPair;
        f.message = "empty generator list";
        return f;
    }
    int d = generators[0].d, n = generators[0].n;
    for (const auto& g : generators)
        if (g.d != d || g.n != n) {
            ValidationFailure f;
            f.kind = ValidationFailure::NonCommutingPair;
            f.message = "generators have mismatched d or n";
            return f;
        }
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (commutation_exponent(generators[i], generators[j]) != 0)
                return make_noncommuting(generators[i], generators[j]);
    // A generator whose phase-sensitive order exceeds its phase-free order
    // puts a phased identity into the group all by itself.
    for (const auto& g : generators) {
        PauliElement pw = pauli_power(g, order_phase_free(g));
        if (!pw.is_identity()) return make_phased_identity(pw);
    }
    uint64_t span = exponent_matrix(generators, d, n).span_size();
    if (span <= max_enum) {
        std::optional<ValidationFailure> failure;
        auto elems = closure(generators, max_enum, failure);
        if (failure) return failure;
        assert(elems && elems->size() == span);
        return std::nullopt;
    }
    // Too large to enumerate: products hitting the identity exponent vector
    // are exactly the kernel combinations; each must carry phase 0. The
    // kernel is enumerated as a group, which is small for near-independent
    // generator sets.
    auto exp = exponent_matrix(generators, d, n);
    // Left kernel: combinations over the generator index.
    ZModMatrix transposed(d, generators.size());
    for (std::size_t c = 0; c < 2 * std::size_t(n); ++c) {
        ZModMatrix::Row r(generators.size());
        for (std::size_t g = 0; g < generators.size(); ++g) r[g] = exp.rows()[g][c];
        transposed.add_row(std::move(r));
    }
    auto kernel_gens = transposed.kernel();
    std::vector<std::vector<int>> kg;
    for (const auto& r : kernel_gens) kg.emplace_back(r.begin(), r.end());
    auto combos = enumerate_span(kg, d, generators.size(), 4096);
    for (const auto& c : combos) {
        PauliElement prod = PauliElement::identity(d, n);
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (c[g] != 0) prod = compose(prod, pauli_power(generators[g], c[g]));
        if (!prod.is_identity()) return make_phased_identity(prod);
    }
    return std::nullopt;
}

StabilizerGroup validate(const std::vector<PauliElement>& generators, std::size_t max_enum) {
    auto failure = validate_check(generators, max_enum);
    if (failure) throw InputError("invalid stabilizer group: " + failure->message);
    StabilizerGroup s;
    s.d = generators[0].d;
    s.n = generators[0].n;
    s.generators = generators;
    s.order = exponent_matrix(generators, s.d, s.n).span_size();
    if (s.order <= max_enum) {
        std::optional<ValidationFailure> f;
        auto elems = closure(generators, max_enum, f);
        assert(elems && !f);
        s.elements = std::make_shared<const ElementList>(std::move(*elems));
    }
    return s;
}

const ElementList& enumerate_elements(const StabilizerGroup& s) {
    if (!s.elements)
        throw ResourceError("group of order " + std::to_string(s.order) +
                            " was not enumerated (bound exceeded)");
    return *s.elements;
}

CMatrix projector(const StabilizerGroup& s, std::size_t dense_bound) {
    std::size_t dim = 1;
    for (int i = 0; i < s.n; ++i) {
        dim *= std::size_t(s.d);
        if (dim > dense_bound)
            throw ResourceError("projector needs d^n > bound " + std::to_string(dense_bound));
    }
    const ElementList& elems = enumerate_elements(s);
    std::vector<cplx> tau(2 * s.d);
    for (int k = 0; k < 2 * s.d; ++k) tau[k] = PhaseExponent{s.d, k}.value();
    CMatrix p(dim, dim);
    std::vector<int> digits(s.n);
    double scale = 1.0 / double(elems.size());
    for (std::size_t e = 0; e < elems.size(); ++e) {
        const uint8_t* r = elems.row(e);
        for (std::size_t col = 0; col < dim; ++col) {
            std::size_t rem = col;
            for (int i = s.n - 1; i >= 0; --i) {
                digits[i] = int(rem % s.d);
                rem /= s.d;
            }
            int64_t k = r[2 * s.n];
            std::size_t rowi = 0;
            for (int i = 0; i < s.n; ++i) {
                k += 2 * int64_t(r[s.n + i]) * digits[i];
                rowi = rowi * s.d + std::size_t((digits[i] + r[i]) % s.d);
            }
            p(rowi, col) += tau[std::size_t(k % (2 * s.d))] * scale;
        }
    }
    return p;
}

StabilizerGroup restricted_subgroup(const StabilizerGroup& s, const SupportSet& omega) {
    const ElementList& elems = enumerate_elements(s);
    std::vector<bool> inside(s.n, false);
    for (int c : omega) {
        if (c < 0 || c >= s.n) throw InputError("support coordinate out of range");
        if (inside[c]) throw InputError("support coordinates must be distinct");
        inside[c] = true;
    }
    ElementList sub(s.d, s.n);
    std::vector<PauliElement> gens;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const uint8_t* r = elems.row(i);
        bool ok = true;
        for (int c = 0; c < s.n && ok; ++c)
            if (!inside[c] && (r[c] != 0 || r[s.n + c] != 0)) ok = false;
        if (!ok) continue;
        sub.push_raw(r);
        if (!elems.is_identity_row(i)) gens.push_back(elems.get(i));
    }
    sub.sort_unique();
    StabilizerGroup out;
    out.d = s.d;
    out.n = s.n;
    out.order = sub.size();
    if (gens.empty()) gens.push_back(PauliElement::identity(s.d, s.n));
    out.generators = std::move(gens);
    out.elements = std::make_shared<const ElementList>(std::move(sub));
    return out;
}

CMatrix reduced_projector(const StabilizerGroup& s, const SupportSet& omega,
                          std::size_t dense_bound) {
    if (omega.empty()) throw InputError("reduced projector needs a nonempty support");
    StabilizerGroup sub = restricted_subgroup(s, omega);
    const ElementList& elems = enumerate_elements(sub);
    std::size_t dim = 1;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        dim *= std::size_t(s.d);
        if (dim > dense_bound)
            throw ResourceError("reduced projector exceeds dense bound");
    }
    CMatrix p(dim, dim);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        PauliElement r = restrict_to(elems.get(i), omega);
        p += to_matrix(r, dense_bound);
    }
    p *= cplx(1.0 / double(elems.size()), 0.0);
    return p;
}

bool in_centralizer(const StabilizerGroup& s, const PauliElement& p) {
    for (const auto& g : s.generators)
        if (commutation_exponent(p, g) != 0) return false;
    return true;
}

Centralizer centralizer(const StabilizerGroup& s) {
    Centralizer out;
    // Constraint rows: commutation_exponent(x, g) = sum(x.z * g.x - x.x * g.z).
    ZModMatrix constraints(s.d, 2 * std::size_t(s.n));
    for (const auto& g : s.generators) {
        ZModMatrix::Row r(2 * std::size_t(s.n));
        for (int i = 0; i < s.n; ++i) {
            r[i] = mod_reduce(-g.z[i], s.d);
            r[s.n + i] = g.x[i];
        }
        constraints.add_row(std::move(r));
    }
    auto kernel = constraints.kernel();
    std::vector<std::vector<int>> rows;
    for (const auto& k : kernel) rows.emplace_back(k.begin(), k.end());
    out.size = constraints.kernel_size();
    // Canonicalize the generating set via the Howell form.
    ZModMatrix kmat(s.d, 2 * std::size_t(s.n));
    for (const auto& r : kernel) kmat.add_row(r);
    auto howell = kmat.howell();
    for (const auto& r : howell.rows()) {
        std::vector<int> xv(r.begin(), r.begin() + s.n);
        std::vector<int> zv(r.begin() + s.n, r.end());
        out.generators.push_back(PauliElement::from_exponents(s.d, xv, zv));
    }
    if (s.n <= 6) {
        // Cross-check by direct scan of all d^{2n} exponent vectors.
        uint64_t dim = 1;
        for (int i = 0; i < 2 * s.n; ++i) dim *= uint64_t(s.d);
        uint64_t count = 0;
        std::vector<int> xv(s.n), zv(s.n);
        for (uint64_t idx = 0; idx < dim; ++idx) {
            uint64_t rem = idx;
            for (int i = 0; i < s.n; ++i) {
                xv[i] = int(rem % s.d);
                rem /= s.d;
            }
            for (int i = 0; i < s.n; ++i) {
                zv[i] = int(rem % s.d);
                rem /= s.d;
            }
            PauliElement cand = PauliElement::from_exponents(s.d, xv, zv);
            if (in_centralizer(s, cand)) ++count;
        }
        if (count != out.size)
            throw std::logic_error("centralizer kernel disagrees with direct scan");
    }
    return out;
}

bool in_exponent_span(const std::vector<PauliElement>& gens, const PauliElement& p) {
    if (gens.empty()) return p.is_unphased_identity();
    ZModMatrix m = exponent_matrix(gens, p.d, p.n);
    ZModMatrix::Row v(2 * std::size_t(p.n));
    for (int i = 0; i < p.n; ++i) {
        v[i] = p.x[i];
        v[p.n + i] = p.z[i];
    }
    return m.spans(v);
}

std::vector<std::vector<int>> enumerate_span(const std::vector<std::vector<int>>& rows, int d,
                                             std::size_t cols, std::size_t bound) {
    std::size_t n = cols;
    std::set<std::vector<int>> span;
    span.insert(std::vector<int>(n, 0));
    for (const auto& r : rows) {
        // additive order of r mod d
        int g = d;
        for (int e : r) g = std::gcd(g, e);
        int ord = d / g;
        std::set<std::vector<int>> next;
        for (const auto& v : span) {
            std::vector<int> acc = v;
            for (int j = 0; j < ord; ++j) {
                next.insert(acc);
                for (std::size_t i = 0; i < n; ++i) acc[i] = (acc[i] + r[i]) % d;
            }
        }
        span = std::move(next);
        if (span.size() > bound) throw ResourceError("span enumeration exceeds bound");
    }
    return std::vector<std::vector<int>>(span.begin(), span.end());
}

void validate_code_spec(const CodeSpec& spec) {
    const StabilizerGroup& s = spec.stabilizer;
    for (const auto& g : spec.gauge_generators) {
        if (g.d != s.d || g.n != s.n) throw InputError("gauge generator dimension mismatch");
        if (!in_centralizer(s, g))
            throw InputError("gauge generator does not commute with the stabilizer");
    }
    if (spec.css) {
        const auto& css = *spec.css;
        std::vector<PauliElement> css_gens;
        for (const auto& row : css.hx) {
            if (int(row.size()) != s.n) throw InputError("CSS hx row length mismatch");
            css_gens.push_back(PauliElement::from_exponents(s.d, row, std::vector<int>(s.n, 0)));
        }
        for (const auto& row : css.hz) {
            if (int(row.size()) != s.n) throw InputError("CSS hz row length mismatch");
            css_gens.push_back(PauliElement::from_exponents(s.d, std::vector<int>(s.n, 0), row));
        }
        ZModMatrix a = exponent_matrix(css_gens, s.d, s.n).howell();
        ZModMatrix b = exponent_matrix(s.generators, s.d, s.n).howell();
        if (!(a == b)) throw InputError("CSS presentation does not generate the stabilizer");
        if (css.logical_x.size() != std::size_t(spec.k) ||
            css.logical_z.size() != std::size_t(spec.k))
            throw InputError("CSS logical representative count must equal k");
        for (int i = 0; i < spec.k; ++i) {
            PauliElement lx =
                PauliElement::from_exponents(s.d, css.logical_x[i], std::vector<int>(s.n, 0));
            PauliElement lz =
                PauliElement::from_exponents(s.d, std::vector<int>(s.n, 0), css.logical_z[i]);
            if (!in_centralizer(s, lx) || !in_centralizer(s, lz))
                throw InputError("CSS logical representative does not centralize the stabilizer");
            for (int j = 0; j < spec.k; ++j) {
                PauliElement ljz =
                    PauliElement::from_exponents(s.d, std::vector<int>(s.n, 0), css.logical_z[j]);
                int c = commutation_exponent(ljz, lx);
                if (c != ((i == j) ? 1 % s.d : 0))
                    throw InputError("CSS logical representatives do not pair symplectically");
            }
        }
    }
}

std::vector<CVector> css_codewords(const CodeSpec& spec, std::size_t state_bound) {
    if (!spec.css) throw InputError("code has no CSS presentation");
    const StabilizerGroup& s = spec.stabilizer;
    std::size_t dim = 1;
    for (int i = 0; i < s.n; ++i) {
        dim *= std::size_t(s.d);
        if (dim > state_bound) throw ResourceError("state vector dimension exceeds bound");
    }
    auto cosets = enumerate_span(spec.css->hx, s.d, std::size_t(s.n), state_bound);
    std::size_t logical_count = 1;
    for (int i = 0; i < spec.k; ++i) logical_count *= std::size_t(s.d);

    std::vector<CVector> words;
    for (std::size_t l = 0; l < logical_count; ++l) {
        std::vector<int> base(s.n, 0);
        std::size_t rem = l;
        for (int i = 0; i < spec.k; ++i) {
            int li = int(rem % s.d);
            rem /= s.d;
            for (int c = 0; c < s.n; ++c)
                base[c] = (base[c] + li * spec.css->logical_x[i][c]) % s.d;
        }
        CVector v(dim);
        for (const auto& c : cosets) {
            std::size_t idx = 0;
            for (int i = 0; i < s.n; ++i) idx = idx * s.d + std::size_t((base[i] + c[i]) % s.d);
            v[idx] += 1.0;
        }
        normalize(v);
        words.push_back(std::move(v));
    }
    // Every codeword must be a +1 eigenvector of every generator.
    for (const auto& w : words) {
        for (const auto& g : s.generators) {
            // Apply g directly: |t> component t = s + x picks up tau^{phase + 2 z.s}.
            CVector gw(dim);
            std::vector<int> digits(s.n);
            for (std::size_t idx = 0; idx < dim; ++idx) {
                if (w[idx] == cplx{}) continue;
                std::size_t rem = idx;
                for (int i = s.n - 1; i >= 0; --i) {
                    digits[i] = int(rem % s.d);
                    rem /= s.d;
                }
                int64_t k = g.phase.k;
                std::size_t target = 0;
                for (int i = 0; i < s.n; ++i) {
                    k += 2 * int64_t(g.z[i]) * digits[i];
                    target = target * s.d + std::size_t((digits[i] + g.x[i]) % s.d);
                }
                gw[target] += PhaseExponent::make(s.d, k).value() * w[idx];
            }
            double diff = 0;
            for (std::size_t idx = 0; idx < dim; ++idx) diff += std::norm(gw[idx] - w[idx]);
            if (std::sqrt(diff) > kUnitarityTol)
                throw InputError("CSS codeword fails stabilizer eigenvalue check");
        }
    }
    return words;
}

}  // namespace qecc
