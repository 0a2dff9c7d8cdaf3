#include "qecc/structure.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "qecc/errors.hpp"

namespace qecc {

namespace {

uint64_t support_mask(const SupportSet& s) {
    uint64_t m = 0;
    for (int c : s) m |= uint64_t(1) << c;
    return m;
}

bool strictly_contains(uint64_t outer, uint64_t inner) {
    return inner != outer && (inner & outer) == inner;
}

// (x, z) pair at one coordinate.
using ExpPair = std::array<int, 2>;

// Additive closure of exponent pairs in Z_d^2.
std::set<ExpPair> pair_group_closure(const std::set<ExpPair>& seed, int d) {
    std::set<ExpPair> group = seed;
    group.insert({0, 0});
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<ExpPair> next = group;
        for (const auto& a : group)
            for (const auto& b : seed) {
                ExpPair s = {(a[0] + b[0]) % d, (a[1] + b[1]) % d};
                if (next.insert(s).second) grew = true;
            }
        group = std::move(next);
    }
    return group;
}

int pair_order(const ExpPair& p, int d) {
    return d / std::gcd(d, std::gcd(p[0], p[1]));
}

// Action of an exponent-pair tuple (m1, n1, m2, n2) on (x, z):
// X -> X^{n1} Z^{m1}, Z -> X^{n2} Z^{m2}.
ExpPair clifford_pair_action(const std::array<int, 4>& c, const ExpPair& p, int d) {
    int x = (p[0] * c[1] + p[1] * c[3]) % d;
    int z = (p[0] * c[0] + p[1] * c[2]) % d;
    return {x, z};
}

std::vector<ExpPair> howell_pair_generators(const std::set<ExpPair>& group, int d) {
    ZModMatrix m(d, 2);
    for (const auto& p : group) m.add_row({p[0], p[1]});
    std::vector<ExpPair> out;
    ZModMatrix h = m.howell();
    for (const auto& r : h.rows()) out.push_back(ExpPair{int(r[0]), int(r[1])});
    return out;
}

}  // namespace

std::string pauli_axis_name(int xe, int ze) {
    if (xe == 0 && ze == 0) return "I";
    if (xe != 0 && ze == 0) return "X";
    if (xe == 0 && ze != 0) return "Z";
    return "Y";
}

std::vector<SupportSet> minimal_supports(const StabilizerGroup& s) {
    const ElementList& elems = enumerate_elements(s);
    std::set<uint64_t> masks;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        SupportSet sup = elems.support_of(i);
        if (!sup.empty()) masks.insert(support_mask(sup));
    }
    std::vector<SupportSet> out;
    for (uint64_t m : masks) {
        bool minimal = true;
        for (uint64_t other : masks)
            if (strictly_contains(m, other)) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        SupportSet sup;
        for (int c = 0; c < s.n; ++c)
            if (m & (uint64_t(1) << c)) sup.push_back(c);
        out.push_back(std::move(sup));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Nonidentity elements of S_omega, verifying omega is minimal: S_omega must
// be nontrivial and every nonidentity element must have support exactly omega.
std::vector<PauliElement> minimal_subcode_elements(const StabilizerGroup& s,
                                                   const SupportSet& omega) {
    StabilizerGroup sub = restricted_subgroup(s, omega);
    const ElementList& elems = enumerate_elements(sub);
    std::vector<PauliElement> out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        PauliElement e = elems.get(i);
        if (e.is_unphased_identity()) continue;
        if (e.support() != omega)
            throw InputError("support is not minimal: an element has smaller support");
        out.push_back(std::move(e));
    }
    if (out.empty()) throw InputError("support carries no stabilizer element");
    return out;
}

}  // namespace

int a_omega(const StabilizerGroup& s, const SupportSet& omega) {
    if (s.d != 2)
        throw InputError("a_omega is defined for qubit codes; use classify_minimal_subcode");
    int a = int(minimal_subcode_elements(s, omega).size());
    // The count is 1 or 3, and a triple forces even weight; both facts are
    // exercised exhaustively by the corpus sweeps.
    return a;
}

std::string MinimalSubcodeInfo::form() const {
    if (n_g == 1) return "<Z^" + std::to_string(m) + ">";
    return "<X^" + std::to_string(m1) + ",Z^" + std::to_string(m2) + ">";
}

MinimalSubcodeInfo classify_minimal_subcode(const StabilizerGroup& s, const SupportSet& omega) {
    auto elems = minimal_subcode_elements(s, omega);
    MinimalSubcodeInfo info;
    info.omega = omega;
    if (s.d == 2) info.a_omega = int(elems.size());

    // All single-coordinate factors of one element share one order; a power
    // of a violator would shrink the support below omega.
    for (const auto& e : elems) {
        int o = pair_order({e.x[omega[0]], e.z[omega[0]]}, s.d);
        for (int c : omega)
            if (pair_order({e.x[c], e.z[c]}, s.d) != o)
                throw InputError("minimal subcode element has mixed coordinate orders");
    }

    // Abstract structure of the subcode group (phases are irrelevant here).
    std::size_t size = elems.size() + 1;
    int exponent = 1;
    for (const auto& e : elems) exponent = std::lcm(exponent, order_phase_free(e));
    info.order = exponent;
    bool cyclic = std::size_t(exponent) == size;
    if (cyclic) {
        info.n_g = 1;
        info.m = s.d / exponent;
    } else {
        info.n_g = 2;
        int p2 = int(size / std::size_t(exponent));
        info.m1 = s.d / exponent;
        info.m2 = s.d / p2;
    }

    // Per-coordinate local Clifford normalization onto the standard form.
    auto cliffords = enumerate_local_clifford_pairs(s.d);
    auto find_sigma = [&](const std::vector<std::pair<ExpPair, ExpPair>>& constraints)
        -> std::optional<std::array<int, 4>> {
        for (const auto& c : cliffords) {
            bool ok = true;
            for (const auto& [from, to] : constraints)
                if (clifford_pair_action(c, from, s.d) != to) {
                    ok = false;
                    break;
                }
            if (ok) return c;
        }
        return std::nullopt;
    };

    auto pair_of = [&](const PauliElement& e, int c) -> ExpPair {
        return ExpPair{e.x[c], e.z[c]};
    };

    if (info.n_g == 1) {
        // A generator of the cyclic group, normalized to Z^m everywhere.
        for (const auto& u : elems) {
            if (order_phase_free(u) != exponent) continue;
            std::vector<std::array<int, 4>> sigmas;
            bool all_ok = true;
            for (int c : omega) {
                auto sigma = find_sigma({{pair_of(u, c), ExpPair{0, info.m}}});
                if (!sigma) {
                    all_ok = false;
                    break;
                }
                sigmas.push_back(*sigma);
            }
            if (all_ok) {
                info.normalization_found = true;
                info.normalization = std::move(sigmas);
                break;
            }
        }
    } else {
        // Generator pairs (u, v) spanning the subcode group, normalized to
        // (X^{m1}, Z^{m2}) everywhere.
        for (const auto& u : elems) {
            if (info.normalization_found) break;
            if (order_phase_free(u) != exponent) continue;
            for (const auto& v : elems) {
                if (info.normalization_found) break;
                if (exponent_matrix({u, v}, s.d, s.n).span_size() != size) continue;
                std::vector<std::array<int, 4>> sigmas;
                bool all_ok = true;
                for (int c : omega) {
                    auto sigma = find_sigma({{pair_of(u, c), ExpPair{info.m1, 0}},
                                             {pair_of(v, c), ExpPair{0, info.m2}}});
                    if (!sigma) {
                        all_ok = false;
                        break;
                    }
                    sigmas.push_back(*sigma);
                }
                if (all_ok) {
                    info.normalization_found = true;
                    info.normalization = std::move(sigmas);
                }
            }
        }
    }
    return info;
}

std::vector<PauliElement> restricted_minimal_elements(const StabilizerGroup& s, int j) {
    const ElementList& elems = enumerate_elements(s);
    std::vector<std::size_t> touching;
    std::vector<uint64_t> masks;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        SupportSet sup = elems.support_of(i);
        if (std::find(sup.begin(), sup.end(), j) == sup.end()) continue;
        touching.push_back(i);
        masks.push_back(support_mask(sup));
    }
    std::vector<PauliElement> out;
    for (std::size_t a = 0; a < touching.size(); ++a) {
        bool minimal = true;
        for (std::size_t b = 0; b < touching.size(); ++b)
            if (strictly_contains(masks[a], masks[b])) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(elems.get(touching[a]));
    }
    return out;
}

namespace {

StabilizerGroup subgroup_from_filter(
    const StabilizerGroup& s,
    const std::function<bool(const ElementList&, std::size_t)>& keep) {
    const ElementList& elems = enumerate_elements(s);
    ElementList sub(s.d, s.n);
    std::vector<PauliElement> gens;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (!keep(elems, i)) continue;
        sub.push_raw(elems.row(i));
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

}  // namespace

SingleQuditSubgroupInfo single_qudit_subgroup(const StabilizerGroup& s, int i) {
    if (i < 0 || i >= s.n) throw InputError("coordinate out of range");
    SingleQuditSubgroupInfo info;
    info.coordinate = i;
    info.subgroup = subgroup_from_filter(s, [i, &s](const ElementList& e, std::size_t idx) {
        const uint8_t* r = e.row(idx);
        return r[i] == 0 && r[s.n + i] == 0;
    });
    info.index = s.order / info.subgroup.order;
    std::set<int> sup;
    const ElementList& elems = enumerate_elements(info.subgroup);
    for (std::size_t e = 0; e < elems.size(); ++e)
        for (int c : elems.support_of(e)) sup.insert(c);
    info.support.assign(sup.begin(), sup.end());
    return info;
}

PiSubgroupInfo pi_subgroup(const StabilizerGroup& s, bool search_lc_witness) {
    const ElementList& elems = enumerate_elements(s);
    // Pi's exponent span is the span of the union of the S<i> exponent rows;
    // membership in a valid group is decided entirely by exponents.
    ZModMatrix span(s.d, 2 * std::size_t(s.n));
    for (int i = 0; i < s.n; ++i) {
        for (std::size_t e = 0; e < elems.size(); ++e) {
            const uint8_t* r = elems.row(e);
            if (r[i] != 0 || r[s.n + i] != 0) continue;
            ZModMatrix::Row row(2 * std::size_t(s.n));
            for (int c = 0; c < 2 * s.n; ++c) row[c] = r[c];
            span.add_row(std::move(row));
        }
    }
    ZModMatrix howell = span.howell();
    PiSubgroupInfo info;
    info.pi = subgroup_from_filter(s, [&howell, &s](const ElementList& e, std::size_t idx) {
        const uint8_t* r = e.row(idx);
        ZModMatrix::Row v(2 * std::size_t(s.n));
        for (int c = 0; c < 2 * s.n; ++c) v[c] = r[c];
        return howell.spans(v);
    });
    info.index = s.order / info.pi.order;
    uint64_t d2 = uint64_t(s.d) * s.d;

    if (info.index == 1) {
        info.tag = "trivial";
        return info;
    }
    if (info.index < d2) {
        info.tag = "proper";
        return info;
    }
    info.tag = "full-support-pair";
    // Index d^2 forces Pi = {I}, |S| = d^2, every nonidentity element of full
    // support, restrictions pairwise different at every coordinate.
    info.structure_verified = info.pi.order == 1 && s.order == d2;
    if (info.structure_verified) {
        for (std::size_t e = 0; e < elems.size() && info.structure_verified; ++e)
            if (!elems.is_identity_row(e) && int(elems.support_of(e).size()) != s.n)
                info.structure_verified = false;
        for (int c = 0; c < s.n && info.structure_verified; ++c) {
            std::set<ExpPair> seen;
            for (std::size_t e = 0; e < elems.size(); ++e) {
                const uint8_t* r = elems.row(e);
                seen.insert(ExpPair{int(r[c]), int(r[s.n + c])});
            }
            if (seen.size() != d2) info.structure_verified = false;
        }
    }
    if (s.d == 2 && info.structure_verified) {
        // Full-support triples anticommute coordinatewise, so n is even.
        if (s.n % 2 != 0) info.structure_verified = false;
        info.two_m = s.n;
    }
    if (!search_lc_witness || !info.structure_verified || s.d > 4) return info;

    // Witness search: generators (u, v) of S and per-coordinate symplectic
    // maps sending (u, v) to (X^{(x)n}, Z^{(x)n}). Generator changes rescale
    // the per-coordinate symplectic form of (u, v) uniformly, so a witness
    // can legitimately fail to exist; absence is reported, not fatal.
    auto cliffords = enumerate_local_clifford_pairs(s.d);
    for (std::size_t a = 0; a < elems.size() && !info.lc_witness_found; ++a) {
        if (elems.is_identity_row(a)) continue;
        PauliElement u = elems.get(a);
        if (order_phase_free(u) != s.d) continue;
        for (std::size_t b = 0; b < elems.size() && !info.lc_witness_found; ++b) {
            if (elems.is_identity_row(b) || a == b) continue;
            PauliElement v = elems.get(b);
            if (order_phase_free(v) != s.d) continue;
            if (exponent_matrix({u, v}, s.d, s.n).span_size() != d2) continue;
            std::vector<std::array<int, 4>> sigmas;
            bool all_ok = true;
            for (int c = 0; c < s.n && all_ok; ++c) {
                bool found = false;
                for (const auto& sig : cliffords) {
                    if (clifford_pair_action(sig, {u.x[c], u.z[c]}, s.d) == ExpPair{1, 0} &&
                        clifford_pair_action(sig, {v.x[c], v.z[c]}, s.d) == ExpPair{0, 1}) {
                        sigmas.push_back(sig);
                        found = true;
                        break;
                    }
                }
                all_ok = found;
            }
            if (all_ok) {
                info.lc_witness_found = true;
                info.lc_witness = std::move(sigmas);
            }
        }
    }
    return info;
}

DegenerateFactors detect_degenerate_factors(const StabilizerGroup& s) {
    const ElementList& elems = enumerate_elements(s);
    DegenerateFactors out;
    std::set<int> trivial;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        SupportSet sup = elems.support_of(i);
        if (sup.size() == 1) trivial.insert(sup[0]);
    }
    out.trivial_coordinates.assign(trivial.begin(), trivial.end());

    uint64_t d2 = uint64_t(s.d) * s.d;
    for (int i = 0; i < s.n; ++i)
        for (int j = i + 1; j < s.n; ++j) {
            StabilizerGroup pair = restricted_subgroup(s, {i, j});
            if (pair.order != d2) continue;
            // Maximally entangled: no weight-1 element within the pair.
            const ElementList& pe = enumerate_elements(pair);
            bool entangled = true;
            for (std::size_t e = 0; e < pe.size(); ++e)
                if (pe.support_of(e).size() == 1) entangled = false;
            if (!entangled) continue;
            // The pair factor splits off: S = S_pair x S<pair>.
            StabilizerGroup rest =
                subgroup_from_filter(s, [i, j, &s](const ElementList& el, std::size_t idx) {
                    const uint8_t* r = el.row(idx);
                    return r[i] == 0 && r[s.n + i] == 0 && r[j] == 0 && r[s.n + j] == 0;
                });
            if (pair.order * rest.order == s.order) out.bell_pairs.push_back({i, j});
        }
    return out;
}

std::string to_string(ConstraintClass c) {
    switch (c) {
        case ConstraintClass::Clifford: return "Clifford";
        case ConstraintClass::SemiClifford: return "SemiClifford";
        case ConstraintClass::GeneralizedSemiClifford: return "GeneralizedSemiClifford";
        case ConstraintClass::SubgroupInvariant: return "SubgroupInvariant";
        case ConstraintClass::SpanInvariant: return "SpanInvariant";
        case ConstraintClass::Unconstrained: return "Unconstrained";
    }
    return "?";
}

StructureContext build_structure_context(const StabilizerGroup& s) {
    StructureContext ctx;
    ctx.minimal = minimal_supports(s);
    ctx.degenerate = detect_degenerate_factors(s);
    return ctx;
}

CoordinateConstraint classify_coordinate(const StabilizerGroup& s, int j) {
    return classify_coordinate(s, j, build_structure_context(s));
}

CoordinateConstraint classify_coordinate(const StabilizerGroup& s, int j,
                                         const StructureContext& ctx) {
    if (j < 0 || j >= s.n) throw InputError("coordinate out of range");
    CoordinateConstraint out;
    out.coordinate = j;

    const DegenerateFactors& degen = ctx.degenerate;
    for (auto [a, b] : degen.bell_pairs)
        if (a == j || b == j) {
            out.degenerate = true;
            out.degenerate_reason = "bell-pair";
            out.witness_support = {a, b};
        }
    for (int t : degen.trivial_coordinates)
        if (t == j && !out.degenerate) {
            out.degenerate = true;
            out.degenerate_reason = "trivial-qudit";
            out.witness_support = {j};
        }

    const auto& minima = ctx.minimal;
    std::vector<SupportSet> covering;
    for (const auto& omega : minima)
        if (std::find(omega.begin(), omega.end(), j) != omega.end()) covering.push_back(omega);

    if (s.d == 2) {
        bool clifford_triple = false;
        SupportSet clifford_witness;
        std::map<std::string, SupportSet> exact_axis;  // axis -> lex-first support
        std::map<std::string, SupportSet> span_axis;
        for (const auto& omega : covering) {
            if (omega.size() == 1) continue;  // trivial qudit, flagged above
            auto elems = minimal_subcode_elements(s, omega);
            if (elems.size() == 3) {
                if (omega.size() == 2) continue;  // Bell pair, flagged above
                if (!clifford_triple) {
                    clifford_triple = true;
                    clifford_witness = omega;
                }
            } else {
                std::string axis = pauli_axis_name(elems[0].x[j], elems[0].z[j]);
                auto& target = (omega.size() >= 3) ? exact_axis : span_axis;
                if (!target.count(axis)) target[axis] = omega;
            }
        }
        if (clifford_triple) {
            out.cls = ConstraintClass::Clifford;
            out.coverage = "minimal-support";
            out.witness_support = clifford_witness;
            return out;
        }
        if (exact_axis.size() >= 2) {
            // Two distinct exactly-normalized axes determine the image of the
            // third, so every Pauli maps to a single Pauli.
            out.cls = ConstraintClass::Clifford;
            out.coverage = "minimal-support";
            out.witness_support = exact_axis.begin()->second;
            return out;
        }
        if (exact_axis.size() == 1) {
            out.cls = ConstraintClass::SemiClifford;
            out.coverage = "minimal-support";
            out.witness_pauli = exact_axis.begin()->first;
            out.witness_support = exact_axis.begin()->second;
            return out;
        }
        if (!span_axis.empty()) {
            out.cls = ConstraintClass::GeneralizedSemiClifford;
            out.coverage = "minimal-support";
            out.witness_pauli = span_axis.begin()->first;
            out.witness_support = span_axis.begin()->second;
            return out;
        }
    } else {
        ConstraintClass best = ConstraintClass::Unconstrained;
        SupportSet best_support;
        std::vector<ExpPair> best_gens;
        uint64_t d2 = uint64_t(s.d) * s.d;
        auto rank = [](ConstraintClass c) {
            if (c == ConstraintClass::Clifford) return 3;
            if (c == ConstraintClass::SubgroupInvariant) return 2;
            if (c == ConstraintClass::SpanInvariant) return 1;
            return 0;
        };
        for (const auto& omega : covering) {
            auto elems = minimal_subcode_elements(s, omega);
            std::set<ExpPair> at_j;
            for (const auto& e : elems) at_j.insert(ExpPair{e.x[j], e.z[j]});
            auto group = pair_group_closure(at_j, s.d);
            bool full = group.size() == d2;
            ConstraintClass cls;
            if (omega.size() >= 3)
                cls = full ? ConstraintClass::Clifford : ConstraintClass::SubgroupInvariant;
            else if (omega.size() == 2 && !full)
                cls = ConstraintClass::SpanInvariant;
            else
                continue;  // weight-2 full group is a Bell pair; weight 1 is trivial
            if (rank(cls) > rank(best)) {
                best = cls;
                best_support = omega;
                best_gens = howell_pair_generators(group, s.d);
            }
        }
        if (best != ConstraintClass::Unconstrained) {
            out.cls = best;
            out.coverage = "minimal-support";
            out.witness_support = best_support;
            out.witness_subgroup.assign(best_gens.begin(), best_gens.end());
            return out;
        }
    }

    // A degenerate coordinate whose only covering supports were the
    // degenerate ones carries no constraint at all (a Bell factor is
    // preserved by the full single-qudit continuum).
    if (out.degenerate) {
        out.cls = ConstraintClass::Unconstrained;
        out.coverage = "minimal-support";
        return out;
    }

    // Not covered by any minimal support: restricted minimal elements. For a
    // fixed support, the Paulis at j generate a proper subgroup whose span
    // must stay invariant.
    auto mj = restricted_minimal_elements(s, j);
    if (mj.empty()) {
        out.degenerate = true;
        out.degenerate_reason = "no stabilizer support";
        out.cls = ConstraintClass::Unconstrained;
        out.coverage = "restricted-minimal";
        return out;
    }
    SupportSet first_support;
    for (const auto& e : mj) {
        SupportSet sup = e.support();
        if (first_support.empty() || sup < first_support) first_support = sup;
    }
    std::set<ExpPair> at_j;
    for (const auto& e : mj)
        if (e.support() == first_support) at_j.insert(ExpPair{e.x[j], e.z[j]});
    auto group = pair_group_closure(at_j, s.d);

    // When j lies outside the support of Pi, the same restriction arises from
    // the coset structure of S<j>; tag the coverage accordingly.
    bool outside_pi = true;
    {
        const ElementList& elems = enumerate_elements(s);
        for (int i = 0; i < s.n && outside_pi; ++i) {
            for (std::size_t e = 0; e < elems.size(); ++e) {
                const uint8_t* r = elems.row(e);
                if (r[i] != 0 || r[s.n + i] != 0) continue;  // want members of S<i>
                if (r[j] != 0 || r[s.n + j] != 0) {
                    outside_pi = false;
                    break;
                }
            }
        }
    }
    out.coverage = outside_pi ? "single-qudit-subgroup" : "restricted-minimal";
    out.witness_support = first_support;
    if (s.d == 2) {
        out.cls = ConstraintClass::GeneralizedSemiClifford;
        if (at_j.size() != 1)
            throw InputError("restricted minimal elements with one support disagree at j");
        auto p = *at_j.begin();
        out.witness_pauli = pauli_axis_name(p[0], p[1]);
    } else {
        out.cls = ConstraintClass::SpanInvariant;
        out.witness_subgroup.assign(howell_pair_generators(group, s.d).begin(),
                                    howell_pair_generators(group, s.d).end());
    }
    return out;
}

}  // namespace qecc
