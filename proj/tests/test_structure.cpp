#include "doctest.h"

#include <algorithm>
#include <set>

#include "qecc/catalog.hpp"
#include "qecc/errors.hpp"
#include "qecc/structure.hpp"

using namespace qecc;

namespace {

PauliElement from_string(const std::string& s) {
    std::vector<int> x(s.size(), 0), z(s.size(), 0);
    int ycount = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 'X') x[i] = 1;
        if (s[i] == 'Z') z[i] = 1;
        if (s[i] == 'Y') {
            x[i] = 1;
            z[i] = 1;
            ++ycount;
        }
    }
    return PauliElement::from_exponents_phased(2, x, z, ycount);
}

}  // namespace

TEST_CASE("minimal supports: steane, shor, bell") {
    auto steane = catalog_code("steane");
    auto ms = minimal_supports(steane.stabilizer);
    REQUIRE(ms.size() == 7);
    for (const auto& omega : ms) CHECK(omega.size() == 4);
    // The seven supports are the weight-4 words of the dual Hamming code.
    std::vector<SupportSet> expected = {{0, 1, 3, 6}, {0, 1, 4, 5}, {0, 2, 3, 5},
                                        {0, 2, 4, 6}, {1, 2, 3, 4}, {1, 2, 5, 6},
                                        {3, 4, 5, 6}};
    std::sort(expected.begin(), expected.end());
    CHECK(ms == expected);

    auto shor = catalog_code("shor");
    auto shor_ms = minimal_supports(shor.stabilizer);
    std::vector<SupportSet> shor_expected = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5},
                                             {4, 5}, {6, 7}, {6, 8}, {7, 8}};
    CHECK(shor_ms == shor_expected);

    auto bell = validate({from_string("XX"), from_string("ZZ")});
    CHECK(minimal_supports(bell) == std::vector<SupportSet>{{0, 1}});
}

TEST_CASE("a_omega values") {
    auto bell = validate({from_string("XX"), from_string("ZZ")});
    CHECK(a_omega(bell, {0, 1}) == 3);

    auto shor = catalog_code("shor");
    CHECK(a_omega(shor.stabilizer, {0, 1}) == 1);

    auto steane = catalog_code("steane");
    for (const auto& omega : minimal_supports(steane.stabilizer))
        CHECK(a_omega(steane.stabilizer, omega) == 3);

    // Non-minimal support rejected.
    CHECK_THROWS_AS(a_omega(shor.stabilizer, {0, 1, 2}), InputError);
}

TEST_CASE("classify_minimal_subcode at d = 3 and d = 4") {
    auto zzz = validate({PauliElement::from_exponents(3, {0, 0, 0}, {1, 1, 1})});
    auto info = classify_minimal_subcode(zzz, {0, 1, 2});
    CHECK(info.n_g == 1);
    CHECK(info.m == 1);
    CHECK(info.order == 3);
    CHECK(info.form() == "<Z^1>");
    CHECK(info.normalization_found);

    auto z2z2 = validate({PauliElement::from_exponents(4, {0, 0}, {2, 2})});
    auto info4 = classify_minimal_subcode(z2z2, {0, 1});
    CHECK(info4.n_g == 1);
    CHECK(info4.m == 2);
    CHECK(info4.order == 2);
    CHECK(info4.form() == "<Z^2>");

    auto xz3 = validate({PauliElement::from_exponents(3, {1, 1, 1}, {0, 0, 0}),
                         PauliElement::from_exponents(3, {0, 0, 0}, {1, 1, 1})});
    auto info33 = classify_minimal_subcode(xz3, {0, 1, 2});
    CHECK(info33.n_g == 2);
    CHECK(info33.m1 == 1);
    CHECK(info33.m2 == 1);
    CHECK(info33.normalization_found);

    // d=2 wrapping: bell triple.
    auto bell = validate({from_string("XX"), from_string("ZZ")});
    auto infob = classify_minimal_subcode(bell, {0, 1});
    CHECK(infob.a_omega == 3);
    CHECK(infob.n_g == 2);
}

TEST_CASE("restricted minimal elements") {
    auto zz = validate({from_string("ZZ")});
    auto m0 = restricted_minimal_elements(zz, 0);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0] == from_string("ZZ"));

    auto shor = catalog_code("shor");
    auto m = restricted_minimal_elements(shor.stabilizer, 0);
    REQUIRE(m.size() == 2);
    std::set<std::string> keys;
    for (const auto& e : m) keys.insert(e.key());
    CHECK(keys.count(from_string("ZZIIIIIII").key()) == 1);
    CHECK(keys.count(from_string("ZIZIIIIII").key()) == 1);

    auto steane = catalog_code("steane");
    auto ms = restricted_minimal_elements(steane.stabilizer, 0);
    // Four minimal supports contain coordinate 0, three elements each.
    CHECK(ms.size() == 12);
    for (const auto& e : ms) CHECK(e.weight() == 4);
}

TEST_CASE("single qudit subgroups and their indices") {
    auto code422 = catalog_code("422");
    auto info = single_qudit_subgroup(code422.stabilizer, 0);
    CHECK(info.subgroup.order == 1);
    CHECK(info.index == 4);
    CHECK(info.support.empty());

    auto steane = catalog_code("steane");
    for (int i = 0; i < 7; ++i) CHECK(single_qudit_subgroup(steane.stabilizer, i).index == 4);

    auto xz3 = validate({PauliElement::from_exponents(3, {1, 1, 1}, {0, 0, 0}),
                         PauliElement::from_exponents(3, {0, 0, 0}, {1, 1, 1})});
    CHECK(single_qudit_subgroup(xz3, 0).index == 9);
}

TEST_CASE("pi subgroup: steane trivial, 422 full-support pair, qutrit pair") {
    auto steane = catalog_code("steane");
    auto pi = pi_subgroup(steane.stabilizer);
    CHECK(pi.index == 1);
    CHECK(pi.tag == "trivial");
    CHECK(pi.pi.order == steane.stabilizer.order);

    auto code422 = catalog_code("422");
    auto pi4 = pi_subgroup(code422.stabilizer);
    CHECK(pi4.index == 4);
    CHECK(pi4.tag == "full-support-pair");
    CHECK(pi4.structure_verified);
    CHECK(pi4.two_m == 4);
    CHECK(pi4.pi.order == 1);
    CHECK(pi4.lc_witness_found);

    auto xz3 = validate({PauliElement::from_exponents(3, {1, 1, 1}, {0, 0, 0}),
                         PauliElement::from_exponents(3, {0, 0, 0}, {1, 1, 1})});
    auto pi3 = pi_subgroup(xz3);
    CHECK(pi3.index == 9);
    CHECK(pi3.tag == "full-support-pair");
    CHECK(pi3.structure_verified);
    CHECK(pi3.lc_witness_found);
}

TEST_CASE("pi subgroup index d^2 without a strict local Clifford witness") {
    // <X(x)X, Z(x)Z^2> at d = 3: full support, pairwise different
    // restrictions, but the coordinate symplectic forms (1, 2) cannot be
    // rescaled to (1, 1), so no per-coordinate SL(2, Z_3) witness exists.
    auto g = validate({PauliElement::from_exponents(3, {1, 1}, {0, 0}),
                       PauliElement::from_exponents(3, {0, 0}, {1, 2})});
    auto pi = pi_subgroup(g);
    CHECK(pi.index == 9);
    CHECK(pi.structure_verified);
    CHECK(!pi.lc_witness_found);
}

TEST_CASE("degenerate factor detection") {
    // Bell (x) Steane on 9 qubits.
    auto steane = catalog_code("steane");
    std::vector<PauliElement> gens;
    auto bellx = from_string("XX"), bellz = from_string("ZZ");
    for (const auto& g : {bellx, bellz}) {
        std::vector<int> x(9, 0), z(9, 0);
        for (int i = 0; i < 2; ++i) {
            x[i] = g.x[i];
            z[i] = g.z[i];
        }
        gens.push_back(PauliElement::from_exponents(2, x, z));
    }
    for (const auto& g : steane.stabilizer.generators) {
        std::vector<int> x(9, 0), z(9, 0);
        for (int i = 0; i < 7; ++i) {
            x[i + 2] = g.x[i];
            z[i + 2] = g.z[i];
        }
        gens.push_back(PauliElement::from_exponents(2, x, z));
    }
    auto combined = validate(gens);
    auto degen = detect_degenerate_factors(combined);
    REQUIRE(degen.bell_pairs.size() == 1);
    CHECK(degen.bell_pairs[0] == std::pair<int, int>{0, 1});
    CHECK(degen.trivial_coordinates.empty());

    // {Z (x) I} has a trivial qudit at coordinate 0.
    auto zi = validate({from_string("ZI")});
    auto degen2 = detect_degenerate_factors(zi);
    CHECK(degen2.bell_pairs.empty());
    CHECK(degen2.trivial_coordinates == std::vector<int>{0});

    // Steane is clean.
    auto degen3 = detect_degenerate_factors(steane.stabilizer);
    CHECK(degen3.bell_pairs.empty());
    CHECK(degen3.trivial_coordinates.empty());
}

TEST_CASE("coordinate classification: steane all Clifford") {
    auto steane = catalog_code("steane");
    auto ctx = build_structure_context(steane.stabilizer);
    for (int j = 0; j < 7; ++j) {
        auto c = classify_coordinate(steane.stabilizer, j, ctx);
        CHECK(c.cls == ConstraintClass::Clifford);
        CHECK(!c.degenerate);
        CHECK(c.coverage == "minimal-support");
    }
}

TEST_CASE("coordinate classification: <ZZZ> is semi-Clifford with Z witness") {
    auto single = validate({from_string("ZZZ")});
    auto c = classify_coordinate(single, 1);
    CHECK(c.cls == ConstraintClass::SemiClifford);
    CHECK(c.witness_pauli == "Z");
    CHECK(c.witness_support == SupportSet{0, 1, 2});
}

TEST_CASE("coordinate classification: shor all generalized semi-Clifford with Z witness") {
    auto shor = catalog_code("shor");
    auto ctx = build_structure_context(shor.stabilizer);
    for (int j = 0; j < 9; ++j) {
        auto c = classify_coordinate(shor.stabilizer, j, ctx);
        CHECK(c.cls == ConstraintClass::GeneralizedSemiClifford);
        CHECK(c.witness_pauli == "Z");
        CHECK(c.witness_support.size() == 2);
        CHECK(!c.degenerate);
    }
}

TEST_CASE("coordinate classification: bell pair is degenerate") {
    auto bell = validate({from_string("XX"), from_string("ZZ")});
    auto c = classify_coordinate(bell, 0);
    CHECK(c.degenerate);
    CHECK(c.degenerate_reason == "bell-pair");
    CHECK(c.cls == ConstraintClass::Unconstrained);
}

TEST_CASE("coordinate classification: qutrit repetition is subgroup-invariant") {
    auto zzz3 = validate({PauliElement::from_exponents(3, {0, 0, 0}, {1, 1, 1})});
    auto c = classify_coordinate(zzz3, 0);
    CHECK(c.cls == ConstraintClass::SubgroupInvariant);
    REQUIRE(c.witness_subgroup.size() == 1);
    CHECK(c.witness_subgroup[0] == std::array<int, 2>{0, 1});

    // Full pair group over three coordinates: Clifford.
    auto xz3 = validate({PauliElement::from_exponents(3, {1, 1, 1}, {0, 0, 0}),
                         PauliElement::from_exponents(3, {0, 0, 0}, {1, 1, 1})});
    auto c2 = classify_coordinate(xz3, 0);
    CHECK(c2.cls == ConstraintClass::Clifford);
}

TEST_CASE("classification is permutation equivariant") {
    auto shor = catalog_code("shor");
    std::vector<int> perm = {4, 7, 2, 0, 8, 1, 3, 6, 5};
    std::vector<PauliElement> permuted;
    for (const auto& g : shor.stabilizer.generators)
        permuted.push_back(permute_coordinates(g, perm));
    auto pshor = validate(permuted);
    auto ctx = build_structure_context(shor.stabilizer);
    auto pctx = build_structure_context(pshor);
    for (int j = 0; j < 9; ++j) {
        auto a = classify_coordinate(shor.stabilizer, j, ctx);
        auto b = classify_coordinate(pshor, perm[j], pctx);
        CHECK(a.cls == b.cls);
        CHECK(a.witness_pauli == b.witness_pauli);
    }
}

TEST_CASE("uncovered coordinates: M_j elements sharing a support share the Pauli at j") {
    // Checked on catalog codes (the lemma sweeps cover random corpora): when
    // no minimal support contains j, two restricted minimal elements with
    // the same support cannot differ at coordinate j.
    for (const char* name : {"bell", "422", "513", "steane", "shor"}) {
        auto spec = catalog_code(name);
        auto minima = minimal_supports(spec.stabilizer);
        for (int j = 0; j < spec.stabilizer.n; ++j) {
            bool covered = false;
            for (const auto& omega : minima)
                if (std::find(omega.begin(), omega.end(), j) != omega.end()) covered = true;
            if (covered) continue;
            auto mj = restricted_minimal_elements(spec.stabilizer, j);
            for (std::size_t a = 0; a < mj.size(); ++a)
                for (std::size_t b = a + 1; b < mj.size(); ++b)
                    if (mj[a].support() == mj[b].support()) {
                        CHECK(mj[a].x[j] == mj[b].x[j]);
                        CHECK(mj[a].z[j] == mj[b].z[j]);
                    }
        }
    }
}
