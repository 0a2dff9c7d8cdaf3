#include "qecc/catalog.hpp"

#include <algorithm>

#include "qecc/errors.hpp"

namespace qecc {

namespace {

PauliElement x_type(int n, const std::vector<int>& row) {
    return PauliElement::from_exponents(2, row, std::vector<int>(n, 0));
}

PauliElement z_type(int n, const std::vector<int>& row) {
    return PauliElement::from_exponents(2, std::vector<int>(n, 0), row);
}

std::vector<PauliElement> css_generators(int n, const CssPresentation& css) {
    std::vector<PauliElement> gens;
    for (const auto& r : css.hx) gens.push_back(x_type(n, r));
    for (const auto& r : css.hz) gens.push_back(z_type(n, r));
    return gens;
}

CodeSpec make_css(const std::string& name, int n, int k, int delta, CssPresentation css,
                  std::size_t max_enum) {
    CodeSpec spec;
    spec.name = name;
    spec.k = k;
    spec.delta = delta;
    spec.css = std::move(css);
    spec.stabilizer = validate(css_generators(n, *spec.css), max_enum);
    validate_code_spec(spec);
    return spec;
}

// Pauli string over IXYZ with the Hermitian Y convention (tau^1 XZ).
PauliElement from_ixyz(const std::string& s) {
    std::vector<int> x(s.size(), 0), z(s.size(), 0);
    int ys = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 'X') x[i] = 1;
        if (s[i] == 'Z') z[i] = 1;
        if (s[i] == 'Y') {
            x[i] = 1;
            z[i] = 1;
            ++ys;
        }
    }
    return PauliElement::from_exponents_phased(2, x, z, ys);
}

// Binary nullspace basis of the given rows (kernel over Z_2).
std::vector<std::vector<int>> binary_nullspace(const std::vector<std::vector<int>>& rows, int n) {
    ZModMatrix m(2, std::size_t(n));
    for (const auto& r : rows) {
        ZModMatrix::Row zr(r.begin(), r.end());
        m.add_row(std::move(zr));
    }
    std::vector<std::vector<int>> out;
    for (const auto& k : m.kernel()) out.emplace_back(k.begin(), k.end());
    return out;
}

CodeSpec build_rm15(std::size_t max_enum) {
    // Evaluation points y = 1..15; coordinate j hosts point y = j + 1.
    const int n = 15;
    std::vector<std::vector<int>> coords(4, std::vector<int>(n, 0));
    std::vector<int> ones(n, 1);
    for (int y = 1; y <= n; ++y)
        for (int b = 0; b < 4; ++b) coords[b][y - 1] = (y >> b) & 1;
    // X stabilizers: the even subcode of the punctured first-order code
    // (the four coordinate-function rows, weight 8 each).
    CssPresentation css;
    css.hx = coords;
    // Z stabilizers: the dual of the full first-order code (rows plus all-ones).
    std::vector<std::vector<int>> c1 = coords;
    c1.push_back(ones);
    css.hz = binary_nullspace(c1, n);
    css.logical_x = {ones};
    css.logical_z = {ones};
    return make_css("rm15", n, 1, 3, std::move(css), max_enum);
}

CodeSpec build_golay23(std::size_t max_enum) {
    // Cyclic [23,12,7] code from g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1.
    const int n = 23;
    std::vector<int> g = {1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1};  // degree 0..11
    std::vector<std::vector<int>> c1;
    for (int shift = 0; shift < 12; ++shift) {
        std::vector<int> row(n, 0);
        for (int i = 0; i <= 11; ++i) row[(i + shift) % n] = g[i];
        c1.push_back(row);
    }
    CssPresentation css;
    css.hx = binary_nullspace(c1, n);  // dual code, contained in c1
    css.hz = css.hx;
    css.logical_x = {std::vector<int>(n, 1)};
    css.logical_z = {std::vector<int>(n, 1)};
    return make_css("golay23", n, 1, 7, std::move(css), max_enum);
}

}  // namespace

std::vector<std::string> catalog_names() {
    return {"bell", "422", "513", "steane", "shor", "rm15", "golay23"};
}

CodeSpec catalog_code(const std::string& name, std::size_t max_enum) {
    if (name == "bell") {
        CssPresentation css;
        css.hx = {{1, 1}};
        css.hz = {{1, 1}};
        return make_css("bell", 2, 0, 2, std::move(css), max_enum);
    }
    if (name == "422") {
        CssPresentation css;
        css.hx = {{1, 1, 1, 1}};
        css.hz = {{1, 1, 1, 1}};
        css.logical_x = {{1, 1, 0, 0}, {1, 0, 1, 0}};
        css.logical_z = {{1, 0, 1, 0}, {1, 1, 0, 0}};
        return make_css("422", 4, 2, 2, std::move(css), max_enum);
    }
    if (name == "513") {
        CodeSpec spec;
        spec.name = "513";
        spec.k = 1;
        spec.delta = 3;
        spec.stabilizer = validate({from_ixyz("XZZXI"), from_ixyz("IXZZX"), from_ixyz("XIXZZ"),
                                    from_ixyz("ZXIXZ")},
                                   max_enum);
        validate_code_spec(spec);
        return spec;
    }
    if (name == "steane") {
        CssPresentation css;
        css.hx = {{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
        css.hz = css.hx;
        css.logical_x = {{1, 1, 1, 1, 1, 1, 1}};
        css.logical_z = {{1, 1, 1, 1, 1, 1, 1}};
        return make_css("steane", 7, 1, 3, std::move(css), max_enum);
    }
    if (name == "shor") {
        CssPresentation css;
        css.hz = {{1, 1, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0, 0, 0, 0},
                  {0, 0, 0, 1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1, 0, 0, 0},
                  {0, 0, 0, 0, 0, 0, 1, 1, 0}, {0, 0, 0, 0, 0, 0, 0, 1, 1}};
        css.hx = {{1, 1, 1, 1, 1, 1, 0, 0, 0}, {0, 0, 0, 1, 1, 1, 1, 1, 1}};
        css.logical_x = {{1, 1, 1, 1, 1, 1, 1, 1, 1}};
        css.logical_z = {{1, 0, 0, 1, 0, 0, 1, 0, 0}};
        return make_css("shor", 9, 1, 3, std::move(css), max_enum);
    }
    if (name == "rm15") return build_rm15(max_enum);
    if (name == "golay23") return build_golay23(max_enum);
    std::string known;
    for (const auto& c : catalog_names()) known += (known.empty() ? "" : ", ") + c;
    throw InputError("unknown catalog code '" + name + "'; known: " + known);
}

}  // namespace qecc
