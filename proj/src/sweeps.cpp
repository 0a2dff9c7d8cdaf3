#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "qecc/errors.hpp"
#include "qecc/report.hpp"
#include "qecc/structure.hpp"

namespace qecc {

namespace {

void note_violation(CheckCount& count, const StabilizerGroup& s) {
    ++count.violations;
    if (count.counterexamples.size() < 3) {
        std::string desc;
        for (const auto& g : s.generators) {
            if (!desc.empty()) desc += " ; ";
            desc += print_generator(g);
        }
        count.counterexamples.push_back(desc);
    }
}

void check_group(const StabilizerGroup& s, SweepReport& rep) {
    ++rep.groups_tested;
    auto minima = minimal_supports(s);
    uint64_t d2 = uint64_t(s.d) * s.d;

    if (s.d == 2) {
        auto& counts = rep.checks["minimal-subcode-counts"];
        for (const auto& omega : minima) {
            ++counts.checked;
            uint64_t a = restricted_subgroup(s, omega).order - 1;
            bool ok = (a == 1 || a == 3) && (a != 3 || omega.size() % 2 == 0);
            if (!ok) note_violation(counts, s);
        }
        auto& indices = rep.checks["single-qudit-index"];
        for (int i = 0; i < s.n; ++i) {
            ++indices.checked;
            uint64_t idx = single_qudit_subgroup(s, i).index;
            if (!(idx == 1 || idx == 2 || idx == 4)) note_violation(indices, s);
        }
        auto& pi_check = rep.checks["pi-index"];
        ++pi_check.checked;
        auto pi = pi_subgroup(s);
        bool ok = pi.index == 1 || pi.index == 2 || pi.index == 4;
        if (pi.index == 4) {
            ok = ok && pi.structure_verified;
            ++rep.index_d2_groups;
            if (pi.lc_witness_found)
                ++rep.lc_witness_found;
            else
                ++rep.lc_witness_missing;
        }
        if (!ok) note_violation(pi_check, s);
    } else {
        auto& indices = rep.checks["single-qudit-index"];
        for (int i = 0; i < s.n; ++i) {
            ++indices.checked;
            if (single_qudit_subgroup(s, i).index > d2) note_violation(indices, s);
        }
        auto& pi_check = rep.checks["pi-index"];
        ++pi_check.checked;
        auto pi = pi_subgroup(s, s.d <= 4);
        bool ok = pi.index <= d2;
        if (pi.index == d2) {
            ok = ok && pi.structure_verified;
            ++rep.index_d2_groups;
            if (s.d <= 4) {
                if (pi.lc_witness_found)
                    ++rep.lc_witness_found;
                else
                    ++rep.lc_witness_missing;
            }
        }
        if (!ok) note_violation(pi_check, s);
    }

    // Restricted minimal elements at uncovered coordinates. For d = 2 a
    // shared support forces a shared Pauli at j; for d > 2 the Paulis at j
    // over one support form a proper subgroup (powers of one basis element
    // are allowed there).
    auto& rmp = rep.checks["restricted-minimal-paulis"];
    for (int j = 0; j < s.n; ++j) {
        bool covered = false;
        for (const auto& omega : minima)
            if (std::find(omega.begin(), omega.end(), j) != omega.end()) covered = true;
        if (covered) continue;
        auto elems = restricted_minimal_elements(s, j);
        if (elems.empty()) continue;
        ++rmp.checked;
        bool ok = true;
        if (s.d == 2) {
            for (std::size_t a = 0; a < elems.size() && ok; ++a)
                for (std::size_t b = a + 1; b < elems.size() && ok; ++b)
                    if (elems[a].support() == elems[b].support() &&
                        (elems[a].x[j] != elems[b].x[j] || elems[a].z[j] != elems[b].z[j]))
                        ok = false;
        } else {
            std::map<std::string, std::vector<std::size_t>> by_support;
            for (std::size_t a = 0; a < elems.size(); ++a) {
                std::string key;
                for (int c : elems[a].support()) key += char(c);
                by_support[key].push_back(a);
            }
            for (const auto& [key, idxs] : by_support) {
                // Subgroup generated by the j-restrictions must be proper.
                std::vector<PauliElement> singles;
                for (std::size_t a : idxs)
                    singles.push_back(
                        PauliElement::from_exponents(s.d, {elems[a].x[j]}, {elems[a].z[j]}));
                if (exponent_matrix(singles, s.d, 1).span_size() >= uint64_t(s.d) * s.d)
                    ok = false;
            }
        }
        if (!ok) note_violation(rmp, s);
    }
}

// All reduced-row-echelon matrices over F_2 with `cols` columns and the given
// rank, reported as row bitmasks.
void enumerate_rref(int cols, int rank, const std::function<void(const std::vector<uint32_t>&)>& f) {
    std::vector<int> pivots(rank);
    std::function<void(int, int)> choose = [&](int from, int idx) {
        if (idx == rank) {
            // Free positions: (row i, col j) with j > pivot_i, j not a pivot.
            std::vector<std::pair<int, int>> free_pos;
            std::vector<bool> is_pivot(cols, false);
            for (int p : pivots) is_pivot[p] = true;
            for (int i = 0; i < rank; ++i)
                for (int j = pivots[i] + 1; j < cols; ++j)
                    if (!is_pivot[j]) free_pos.push_back({i, j});
            std::vector<uint32_t> rows(rank);
            std::function<void(std::size_t)> fill = [&](std::size_t k) {
                if (k == free_pos.size()) {
                    std::vector<uint32_t> complete = rows;
                    for (int i = 0; i < rank; ++i) complete[i] |= uint32_t(1) << pivots[i];
                    f(complete);
                    return;
                }
                auto [i, j] = free_pos[k];
                fill(k + 1);
                rows[i] |= uint32_t(1) << j;
                fill(k + 1);
                rows[i] &= ~(uint32_t(1) << j);
            };
            fill(0);
            return;
        }
        for (int c = from; c <= cols - (rank - idx); ++c) {
            pivots[idx] = c;
            choose(c + 1, idx + 1);
        }
    };
    choose(0, 0);
}

int symplectic_form_masks(uint32_t a, uint32_t b, int n) {
    uint32_t ax = a & ((1u << n) - 1), az = a >> n;
    uint32_t bx = b & ((1u << n) - 1), bz = b >> n;
    return __builtin_popcount((az & bx) ^ (ax & bz)) % 2;
}

PauliElement element_from_mask(uint32_t mask, int n) {
    std::vector<int> x(n), z(n);
    for (int i = 0; i < n; ++i) {
        x[i] = (mask >> i) & 1;
        z[i] = (mask >> (n + i)) & 1;
    }
    return PauliElement::canonical(2, x, z);
}

}  // namespace

SweepReport verify_lemmas(const SweepConfig& config) {
    if (config.d < 2) throw InputError("sweep needs d >= 2");
    if (config.exhaustive && (config.d != 2 || config.n > 4))
        throw InputError("exhaustive sweeps are defined for d = 2, n <= 4");
    SweepReport rep;
    rep.config = config;

    if (config.exhaustive) {
        int cols = 2 * config.n;
        for (int rank = 1; rank <= std::min(3, cols); ++rank) {
            enumerate_rref(cols, rank, [&](const std::vector<uint32_t>& rows) {
                // Canonical generators must commute pairwise.
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (std::size_t j = i + 1; j < rows.size(); ++j)
                        if (symplectic_form_masks(rows[i], rows[j], config.n)) return;
                std::vector<PauliElement> gens;
                for (uint32_t m : rows) gens.push_back(element_from_mask(m, config.n));
                check_group(validate(gens), rep);
            });
        }
        return rep;
    }

    std::mt19937_64 rng(config.seed);
    int max_gens = std::min(config.n, config.n >= 5 ? 4 : 3);
    int attempts_left = config.samples * 1000;
    for (int sample = 0; sample < config.samples; ++sample) {
        while (true) {
            if (--attempts_left < 0)
                throw ResourceError("rejection sampling failed to find enough valid groups");
            int m = 1 + int(rng() % uint64_t(max_gens));
            std::vector<PauliElement> gens;
            for (int g = 0; g < m; ++g) {
                std::vector<int> x(config.n), z(config.n);
                bool nonzero = false;
                for (int i = 0; i < config.n; ++i) {
                    x[i] = int(rng() % uint64_t(config.d));
                    z[i] = int(rng() % uint64_t(config.d));
                    if (x[i] || z[i]) nonzero = true;
                }
                if (!nonzero) x[0] = 1;
                gens.push_back(PauliElement::canonical(config.d, x, z));
            }
            if (validate_check(gens)) continue;  // rejected: resample
            check_group(validate(gens), rep);
            break;
        }
    }
    return rep;
}

}  // namespace qecc
