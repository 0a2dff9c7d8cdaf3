// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qecc/catalog.hpp"
#include "qecc/report.hpp"
#include "qecc/structure.hpp"
#include "qecc/unitary.hpp"

using namespace qecc;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                label.c_str(), secs, error.empty() ? "" : " error: ", error.c_str());
    if (!ok) ++failures;
}

CMatrix hadamard() {
    CMatrix h(2, 2);
    double r = 1.0 / std::sqrt(2.0);
    h(0, 0) = h(0, 1) = h(1, 0) = r;
    h(1, 1) = -r;
    return h;
}

CMatrix phase_gate_2() {
    CMatrix p(2, 2);
    p(0, 0) = 1;
    p(1, 1) = cplx(0, 1);
    return p;
}

CMatrix t_gate(bool dagger = false) {
    CMatrix t(2, 2);
    t(0, 0) = 1;
    double a = dagger ? -M_PI / 4 : M_PI / 4;
    t(1, 1) = cplx(std::cos(a), std::sin(a));
    return t;
}

CMatrix z_rotation(double theta) {
    CMatrix u(2, 2);
    u(0, 0) = cplx(std::cos(theta), std::sin(theta));
    u(1, 1) = cplx(std::cos(theta), -std::sin(theta));
    return u;
}

CMatrix axis_rotation(double angle) {
    double c = std::cos(angle / 2), s = std::sin(angle / 2) / std::sqrt(3.0);
    CMatrix u(2, 2);
    u(0, 0) = cplx(c, -s);
    u(0, 1) = cplx(-s, -s);
    u(1, 0) = cplx(s, -s);
    u(1, 1) = cplx(c, s);
    return u;
}

CMatrix random_unitary_2x2(std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    cplx a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
    double n1 = std::sqrt(std::norm(a) + std::norm(b));
    a /= n1;
    b /= n1;
    CMatrix u(2, 2);
    u(0, 0) = a;
    u(1, 0) = b;
    u(0, 1) = -std::conj(b);
    u(1, 1) = std::conj(a);
    return u;
}

// Shared corpus for criteria 1 and 2: exhaustive d=2 n<=4 plus 1000 random
// n=5 groups.
std::vector<SweepReport> qubit_corpus;

void build_qubit_corpus() {
    for (int n = 2; n <= 4; ++n) {
        SweepConfig cfg;
        cfg.d = 2;
        cfg.n = n;
        cfg.exhaustive = true;
        qubit_corpus.push_back(verify_lemmas(cfg));
    }
    SweepConfig rnd;
    rnd.d = 2;
    rnd.n = 5;
    rnd.exhaustive = false;
    rnd.samples = 1000;
    rnd.seed = 20250808;
    qubit_corpus.push_back(verify_lemmas(rnd));
}

}  // namespace

int main() {
    criterion(1, "minimal subcode counts: exhaustive d=2 n<=4 plus 1000 random n=5 groups", [] {
        build_qubit_corpus();
        uint64_t checked = 0;
        for (const auto& rep : qubit_corpus) {
            if (rep.checks.at("minimal-subcode-counts").violations != 0) return false;
            checked += rep.checks.at("minimal-subcode-counts").checked;
        }
        return checked > 0;
    });

    criterion(2, "single-qudit indices all in {1,2,4} on the same corpus", [] {
        uint64_t checked = 0;
        for (const auto& rep : qubit_corpus) {
            if (rep.checks.at("single-qudit-index").violations != 0) return false;
            checked += rep.checks.at("single-qudit-index").checked;
        }
        return checked > 0;
    });

    criterion(3, "qudit indices <= d^2: d in {3,4,6}, n <= 3, 500 samples each", [] {
        for (int d : {3, 4, 6}) {
            for (int n : {2, 3}) {
                SweepConfig cfg;
                cfg.d = d;
                cfg.n = n;
                cfg.samples = 500;
                cfg.seed = 1000 * d + n;
                auto rep = verify_lemmas(cfg);
                if (rep.checks.at("single-qudit-index").violations != 0) return false;
                if (rep.checks.at("pi-index").violations != 0) return false;
            }
        }
        return true;
    });

    criterion(4, "index-d^2 structure: [[4,2,2]] and the <X^n, Z^n> pairs", [] {
        auto p422 = pi_subgroup(catalog_code("422").stabilizer);
        if (!(p422.index == 4 && p422.tag == "full-support-pair" && p422.structure_verified &&
              p422.two_m == 4))
            return false;
        for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {4, 4}}) {
            std::vector<int> ones(n, 1), zeros(n, 0);
            auto g = validate({PauliElement::from_exponents(d, ones, zeros),
                               PauliElement::from_exponents(d, zeros, ones)});
            auto pi = pi_subgroup(g);
            if (pi.index != uint64_t(d) * d) return false;
            if (!pi.structure_verified || !pi.lc_witness_found) return false;
        }
        return true;
    });

    criterion(5, "Steane: 7 weight-4 triples, bitwise H/P preserve, logical H, all Clifford", [] {
        auto steane = catalog_code("steane");
        auto minima = minimal_supports(steane.stabilizer);
        if (minima.size() != 7) return false;
        for (const auto& omega : minima)
            if (omega.size() != 4 || a_omega(steane.stabilizer, omega) != 3) return false;
        auto h = preserves_code(bitwise_gate(2, 7, hadamard()), steane);
        if (!h.preserves || h.residual >= 1e-9) return false;
        auto p = preserves_code(bitwise_gate(2, 7, phase_gate_2()), steane);
        if (!p.preserves || p.residual >= 1e-9) return false;
        CMatrix action = logical_action(bitwise_gate(2, 7, hadamard()), steane);
        if (!equal_up_to_global_phase(action, hadamard(), 1e-8)) return false;
        auto ctx = build_structure_context(steane.stabilizer);
        for (int j = 0; j < 7; ++j)
            if (classify_coordinate(steane.stabilizer, j, ctx).cls != ConstraintClass::Clifford)
                return false;
        return true;
    });

    criterion(6, "Shor: phase-pair rotations preserve with identity action; 9x GSC(Z)", [] {
        auto shor = catalog_code("shor");
        for (double theta : {0.3, 1.1}) {
            std::vector<CMatrix> factors(9, CMatrix::identity(2));
            factors[0] = z_rotation(theta);
            factors[1] = z_rotation(-theta);
            auto gate = make_transversal(2, 9, 1, factors);
            auto res = preserves_code(gate, shor);
            if (!res.preserves || res.residual >= 1e-9) return false;
            CMatrix action = logical_action(gate, shor);
            if (!equal_up_to_global_phase(action, CMatrix::identity(2), 1e-8)) return false;
        }
        auto ctx = build_structure_context(shor.stabilizer);
        for (int j = 0; j < 9; ++j) {
            auto c = classify_coordinate(shor.stabilizer, j, ctx);
            if (c.cls != ConstraintClass::GeneralizedSemiClifford || c.witness_pauli != "Z")
                return false;
        }
        return true;
    });

    criterion(7, "rm15: codewords are stabilizer eigenvectors; bitwise Tdag acts as logical T", [] {
        auto rm = catalog_code("rm15");
        auto words = css_codewords(rm);
        if (words.size() != 2) return false;
        // Eigenvector check at 1e-10 directly.
        for (const auto& w : words) {
            for (const auto& g : rm.stabilizer.generators) {
                // g acts by basis permutation and phases.
                CVector gw(w.size());
                std::vector<int> digits(15);
                for (std::size_t idx = 0; idx < w.size(); ++idx) {
                    if (w[idx] == cplx{}) continue;
                    std::size_t rem = idx;
                    for (int i = 14; i >= 0; --i) {
                        digits[i] = int(rem % 2);
                        rem /= 2;
                    }
                    int64_t k = g.phase.k;
                    std::size_t target = 0;
                    for (int i = 0; i < 15; ++i) {
                        k += 2 * int64_t(g.z[i]) * digits[i];
                        target = target * 2 + std::size_t((digits[i] + g.x[i]) % 2);
                    }
                    gw[target] += PhaseExponent::make(2, k).value() * w[idx];
                }
                double diff = 0;
                for (std::size_t i = 0; i < w.size(); ++i) diff += std::norm(gw[i] - w[i]);
                if (std::sqrt(diff) >= 1e-10) return false;
            }
        }
        auto gate = bitwise_gate(2, 15, t_gate(true));
        auto res = preserves_code(gate, rm);
        if (!res.preserves || res.method != "codewords") return false;
        CMatrix action = logical_action(gate, rm);
        return equal_up_to_global_phase(action, t_gate(), 1e-8);
    });

    criterion(8, "Bell pair: U (x) conj(U) preserves for 20 random U; factor detection", [] {
        auto bell = catalog_code("bell");
        std::mt19937 rng(20250808);
        for (int trial = 0; trial < 20; ++trial) {
            CMatrix u = random_unitary_2x2(rng);
            CMatrix uc(2, 2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) uc(i, j) = std::conj(u(i, j));
            auto res = preserves_code(make_transversal(2, 2, 1, {u, uc}), bell);
            if (!res.preserves || res.residual >= 1e-9) return false;
        }
        // Bell (x) Steane: the factor must be found at {1, 2}.
        auto steane = catalog_code("steane");
        std::vector<PauliElement> gens;
        for (const char* s2 : {"XX", "ZZ"}) {
            std::vector<int> x(9, 0), z(9, 0);
            for (int i = 0; i < 2; ++i) {
                x[i] = s2[i] == 'X';
                z[i] = s2[i] == 'Z';
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
        auto degen = detect_degenerate_factors(validate(gens));
        return degen.bell_pairs.size() == 1 && degen.bell_pairs[0] == std::pair<int, int>{0, 1};
    });

    criterion(9, "classifier truth table: H, T, axis rotation, bitwise T on Steane", [] {
        if (classify_unitary(hadamard(), 2, 1).cls != UnitaryClass::Clifford) return false;
        auto t = classify_unitary(t_gate(), 2, 1);
        if (t.cls != UnitaryClass::SemiClifford) return false;
        bool has_z = false;
        for (const auto& w : t.witness)
            if (w.x == std::vector<int>{0} && w.z == std::vector<int>{1}) has_z = true;
        if (!has_z) return false;
        if (classify_unitary(axis_rotation(0.3), 2, 1).cls != UnitaryClass::General) return false;
        auto res = preserves_code(bitwise_gate(2, 7, t_gate()), catalog_code("steane"));
        return !res.preserves && res.residual > 0.1;
    });

    criterion(10, "negative control: e^{i theta Z} never preserves 513 or Steane", [] {
        for (const char* name : {"513", "steane"}) {
            auto spec = catalog_code(name);
            int n = spec.stabilizer.n;
            for (double theta : {M_PI / 8, M_PI / 5}) {
                for (int c = 0; c < n; ++c) {
                    std::vector<CMatrix> factors(n, CMatrix::identity(2));
                    factors[c] = z_rotation(theta);
                    if (preserves_code(make_transversal(2, n, 1, factors), spec).preserves)
                        return false;
                }
                if (preserves_code(bitwise_gate(2, n, z_rotation(theta)), spec).preserves)
                    return false;
            }
        }
        return true;
    });

    criterion(11, "automorphisms: 513 cyclic passes, Bell swap passes, Steane swap fails", [] {
        auto five = catalog_code("513");
        auto id5 = bitwise_gate(2, 5, CMatrix::identity(2));
        if (!check_code_automorphism(id5, {1, 2, 3, 4, 0}, five).preserves) return false;
        auto bell = catalog_code("bell");
        if (!check_code_automorphism(bitwise_gate(2, 2, CMatrix::identity(2)), {1, 0}, bell)
                 .preserves)
            return false;
        auto steane = catalog_code("steane");
        auto id7 = bitwise_gate(2, 7, CMatrix::identity(2));
        return !check_code_automorphism(id7, {1, 0, 2, 3, 4, 5, 6}, steane).preserves;
    });

    criterion(12, "cross-oracle: reduced projectors match partial traces (|omega| <= 3)", [] {
        for (const char* name : {"bell", "422", "513", "steane", "shor"}) {
            auto spec = catalog_code(name);
            const auto& s = spec.stabilizer;
            CMatrix p = projector(s);
            for (int a = 0; a < s.n; ++a)
                for (int b = a; b < s.n; ++b)
                    for (int c = b; c < s.n; ++c) {
                        SupportSet omega = {a};
                        if (b != a) omega.push_back(b);
                        if (c != b && c != a) omega.push_back(c);
                        CMatrix traced = partial_trace(p, s.d, s.n, omega);
                        CMatrix reduced = reduced_projector(s, omega);
                        traced *= cplx(1.0 / traced.trace().real(), 0);
                        reduced *= cplx(1.0 / reduced.trace().real(), 0);
                        if ((traced - reduced).max_abs() >= 1e-10) return false;
                    }
        }
        return true;
    });

    std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "SUCCESS" : "FAILURE", failures);
    return failures == 0 ? 0 : 1;
}
