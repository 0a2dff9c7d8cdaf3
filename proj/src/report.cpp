#include "qecc/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qecc/errors.hpp"

namespace qecc {

// -------------------------------------------------------------------------
// Code file parsing
// -------------------------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
    auto pos = s.find('#');
    return strip(pos == std::string::npos ? s : s.substr(0, pos));
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InputError("cannot parse " + what + " from '" + s + "'");
    }
}

}  // namespace

PauliElement parse_generator_line(const std::string& line, int d, int n) {
    // General syntax: optional w<k>, then n comma-separated x<a>z<b> tokens.
    if (line.find(',') != std::string::npos || line.find('x') != std::string::npos) {
        std::vector<std::string> tokens;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) tokens.push_back(strip(tok));
        int64_t phase = 0;
        std::size_t start = 0;
        if (!tokens.empty() && tokens[0].size() > 1 && tokens[0][0] == 'w') {
            phase = parse_int(tokens[0].substr(1), "phase token");
            start = 1;
        }
        if (tokens.size() - start != std::size_t(n))
            throw InputError("generator '" + line + "' must list " + std::to_string(n) +
                             " coordinates");
        std::vector<int> x(n), z(n);
        for (int i = 0; i < n; ++i) {
            const std::string& t = tokens[start + i];
            auto zpos = t.find('z');
            if (t.empty() || t[0] != 'x' || zpos == std::string::npos)
                throw InputError("bad coordinate token '" + t + "' (want x<a>z<b>)");
            x[i] = parse_int(t.substr(1, zpos - 1), "x exponent");
            z[i] = parse_int(t.substr(zpos + 1), "z exponent");
        }
        return PauliElement::from_exponents_phased(d, x, z, phase);
    }
    // IXYZ string (d = 2 only).
    if (d != 2) throw InputError("IXYZ generator syntax needs d=2: '" + line + "'");
    if (int(line.size()) != n)
        throw InputError("generator '" + line + "' must have length " + std::to_string(n));
    std::vector<int> x(n, 0), z(n, 0);
    int ys = 0;
    for (int i = 0; i < n; ++i) {
        switch (line[i]) {
            case 'I': break;
            case 'X': x[i] = 1; break;
            case 'Z': z[i] = 1; break;
            case 'Y':
                x[i] = 1;
                z[i] = 1;
                ++ys;
                break;
            default:
                throw InputError(std::string("bad Pauli letter '") + line[i] + "' in '" + line +
                                 "'");
        }
    }
    return PauliElement::from_exponents_phased(2, x, z, ys);
}

std::string print_generator(const PauliElement& p) {
    if (p.d == 2) {
        // IXYZ form whenever the phase is the canonical i^{#Y}.
        int ys = 0;
        std::string s;
        for (int i = 0; i < p.n; ++i) {
            if (p.x[i] && p.z[i]) {
                s += 'Y';
                ++ys;
            } else if (p.x[i])
                s += 'X';
            else if (p.z[i])
                s += 'Z';
            else
                s += 'I';
        }
        if (p.phase.k == ys % 4) return s;
    }
    std::string out;
    if (p.phase.k != 0) out += "w" + std::to_string(p.phase.k) + ",";
    for (int i = 0; i < p.n; ++i) {
        if (i) out += ",";
        out += "x" + std::to_string(p.x[i]) + "z" + std::to_string(p.z[i]);
    }
    return out;
}

ParsedCodeFile parse_code_text(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    ParsedCodeFile out;
    bool have_header = false;
    enum Section { None, Stabilizer, Gauge } section = None;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = strip_comment(line);
        if (line.empty()) continue;
        if (!have_header) {
            std::stringstream hs(line);
            std::string dtok, ntok;
            hs >> dtok >> ntok;
            if (dtok.rfind("d=", 0) != 0 || ntok.rfind("n=", 0) != 0)
                throw InputError("line " + std::to_string(lineno) +
                                 ": expected header 'd=<int> n=<int>'");
            out.d = parse_int(dtok.substr(2), "d");
            out.n = parse_int(ntok.substr(2), "n");
            if (out.d < 2 || out.n < 1)
                throw InputError("header needs d >= 2 and n >= 1");
            have_header = true;
            continue;
        }
        if (line == "stabilizer:") {
            section = Stabilizer;
            continue;
        }
        if (line == "gauge:") {
            section = Gauge;
            continue;
        }
        if (section == None)
            throw InputError("line " + std::to_string(lineno) +
                             ": generator before a 'stabilizer:' section");
        try {
            PauliElement g = parse_generator_line(line, out.d, out.n);
            (section == Stabilizer ? out.stabilizer_generators : out.gauge_generators)
                .push_back(std::move(g));
        } catch (const InputError& e) {
            throw InputError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_header) throw InputError("missing 'd=<int> n=<int>' header");
    if (out.stabilizer_generators.empty()) throw InputError("no stabilizer generators");
    return out;
}

CodeSpec code_spec_from_text(const std::string& text, const std::string& name,
                             std::size_t max_enum) {
    ParsedCodeFile parsed = parse_code_text(text);
    CodeSpec spec;
    spec.name = name;
    spec.stabilizer = validate(parsed.stabilizer_generators, max_enum);
    spec.gauge_generators = parsed.gauge_generators;
    // Derived parameters: |S| = d^{n - k - k'}; the gauge group contributes
    // d^{2k'} to |span(S u G)| / |S|.
    double logd = std::log(double(spec.stabilizer.order)) / std::log(double(parsed.d));
    int stab_rank = int(std::llround(logd));
    bool power = std::pow(double(parsed.d), double(stab_rank)) == double(spec.stabilizer.order);
    if (power) {
        std::vector<PauliElement> all = parsed.stabilizer_generators;
        for (const auto& g : parsed.gauge_generators) all.push_back(g);
        uint64_t joint = exponent_matrix(all, parsed.d, parsed.n).span_size();
        uint64_t ratio = joint / spec.stabilizer.order;
        int gauge_rank = int(std::llround(std::log(double(ratio)) / std::log(double(parsed.d))));
        spec.gauge_k = gauge_rank / 2;
        spec.k = parsed.n - stab_rank - spec.gauge_k;
    } else {
        spec.k = -1;  // not a qudit-power subspace; leave undeclared
    }
    validate_code_spec(spec);
    return spec;
}

std::string print_code_file(const CodeSpec& spec) {
    std::string out = "d=" + std::to_string(spec.stabilizer.d) +
                      " n=" + std::to_string(spec.stabilizer.n) + "\n";
    out += "stabilizer:\n";
    for (const auto& g : spec.stabilizer.generators) out += print_generator(g) + "\n";
    if (!spec.gauge_generators.empty()) {
        out += "gauge:\n";
        for (const auto& g : spec.gauge_generators) out += print_generator(g) + "\n";
    }
    return out;
}

// -------------------------------------------------------------------------
// Gate files
// -------------------------------------------------------------------------

namespace {

double parse_angle(const std::string& raw) {
    std::string s = strip(raw);
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    double value;
    auto star = s.find("*pi");
    auto pipos = s.find("pi");
    try {
        if (star != std::string::npos) {
            double mult = std::stod(s.substr(0, star));
            std::string rest = s.substr(star + 3);
            double div = 1;
            if (!rest.empty() && rest[0] == '/') div = std::stod(rest.substr(1));
            value = mult * M_PI / div;
        } else if (pipos == 0) {
            std::string rest = s.substr(2);
            double div = 1;
            if (!rest.empty() && rest[0] == '/') div = std::stod(rest.substr(1));
            value = M_PI / div;
        } else {
            std::size_t used = 0;
            value = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
        }
    } catch (const std::exception&) {
        throw InputError("cannot parse angle '" + raw + "'");
    }
    return neg ? -value : value;
}

CMatrix parse_matrix_json(const std::string& payload, std::size_t dim) {
    ordered_json j;
    try {
        j = ordered_json::parse(payload);
    } catch (const std::exception& e) {
        throw InputError(std::string("bad matrix JSON: ") + e.what());
    }
    if (!j.is_array() || j.size() != dim) throw InputError("matrix must have d^r rows");
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!j[i].is_array() || j[i].size() != dim) throw InputError("matrix row length mismatch");
        for (std::size_t k = 0; k < dim; ++k) {
            const auto& cell = j[i][k];
            if (cell.is_number()) {
                m(i, k) = cplx(cell.get<double>(), 0);
            } else if (cell.is_array() && cell.size() == 2) {
                m(i, k) = cplx(cell[0].get<double>(), cell[1].get<double>());
            } else {
                throw InputError("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return m;
}

// One whitespace-separated factor expression (named gate or matrix [...]).
CMatrix parse_factor(const std::string& expr, int d) {
    std::string s = strip(expr);
    if (s.rfind("matrix", 0) == 0) return parse_matrix_json(strip(s.substr(6)), std::size_t(d));
    auto paren = s.find('(');
    if (paren != std::string::npos && s.back() == ')') {
        std::string name = s.substr(0, paren);
        double theta = parse_angle(s.substr(paren + 1, s.size() - paren - 2));
        if (name == "Z" || name == "X") {
            if (d != 2) throw InputError("rotation gates are defined for d=2");
            return rotation_gate(name[0], theta);
        }
        throw InputError("unknown parametric gate '" + name + "'");
    }
    return named_gate(s, d);
}

// Factors separated by whitespace, tensored across r blocks. `matrix [...]`
// swallows the rest of the line.
CMatrix parse_factor_list(const std::string& text, int d, int r) {
    std::vector<CMatrix> parts;
    std::string s = strip(text);
    while (!s.empty()) {
        if (s.rfind("matrix", 0) == 0) {
            parts.push_back(parse_factor(s, d));
            s.clear();
            break;
        }
        auto sp = s.find_first_of(" \t");
        std::string tok = sp == std::string::npos ? s : s.substr(0, sp);
        parts.push_back(parse_factor(tok, d));
        s = sp == std::string::npos ? "" : strip(s.substr(sp));
    }
    if (parts.empty()) throw InputError("empty gate expression");
    std::size_t dim = 1;
    for (int i = 0; i < r; ++i) dim *= std::size_t(d);
    if (parts.size() == 1 && parts[0].rows() == dim) return parts[0];
    if (int(parts.size()) != r)
        throw InputError("expected " + std::to_string(r) + " factors or one full matrix");
    CMatrix m = CMatrix::identity(1);
    for (const auto& p : parts) m = kron(m, p);
    if (m.rows() != dim) throw InputError("gate expression has the wrong dimension");
    return m;
}

}  // namespace

CMatrix named_gate(const std::string& name, int d) {
    if (name == "I") return CMatrix::identity(std::size_t(d));
    if (name == "F" || (name == "H" && d == 2)) {
        // Fourier: F|j> = (1/sqrt d) sum_k q^{jk} |k>.
        CMatrix f(d, d);
        double scale = 1.0 / std::sqrt(double(d));
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double a = 2 * M_PI * j * k / d;
                f(k, j) = cplx(std::cos(a) * scale, std::sin(a) * scale);
            }
        return f;
    }
    if (name == "P") {
        // diag(tau^{k(k-1)}): the qudit phase gate, diag(1, i) at d = 2.
        CMatrix p(d, d);
        for (int k = 0; k < d; ++k) {
            double a = M_PI * double(k) * (k - 1) / d;
            p(k, k) = cplx(std::cos(a), std::sin(a));
        }
        return p;
    }
    if (name == "T" || name == "Tdag") {
        if (d != 2) throw InputError("T gate is defined for d=2");
        CMatrix t(2, 2);
        t(0, 0) = 1;
        double a = name == "T" ? M_PI / 4 : -M_PI / 4;
        t(1, 1) = cplx(std::cos(a), std::sin(a));
        return t;
    }
    throw InputError("unknown gate '" + name + "' (known: I, H, F, P, T, Tdag, Z(t), X(t))");
}

CMatrix rotation_gate(char axis, double theta) {
    CMatrix z(2, 2);
    z(0, 0) = cplx(std::cos(theta), std::sin(theta));
    z(1, 1) = cplx(std::cos(theta), -std::sin(theta));
    if (axis == 'Z') return z;
    CMatrix h = named_gate("H", 2);
    return h * z * h;
}

TransversalGate parse_gate_text(const std::string& text, int n) {
    std::stringstream ss(text);
    std::string line;
    int d = -1, r = -1;
    std::optional<std::string> all_expr;
    std::map<int, std::string> coord_expr;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = strip_comment(line);
        if (line.empty()) continue;
        if (!have_header) {
            std::stringstream hs(line);
            std::string dtok, btok;
            hs >> dtok >> btok;
            if (dtok.rfind("d=", 0) != 0 || btok.rfind("blocks=", 0) != 0)
                throw InputError("line " + std::to_string(lineno) +
                                 ": expected header 'd=<int> blocks=<int>'");
            d = parse_int(dtok.substr(2), "d");
            r = parse_int(btok.substr(7), "blocks");
            if (d < 2 || r < 1) throw InputError("gate header needs d >= 2, blocks >= 1");
            have_header = true;
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw InputError("line " + std::to_string(lineno) + ": expected '<coord>: <gate>'");
        std::string key = strip(line.substr(0, colon));
        std::string expr = strip(line.substr(colon + 1));
        if (key == "all") {
            all_expr = expr;
        } else {
            int coord = parse_int(key, "coordinate");
            if (coord < 1 || coord > n)
                throw InputError("line " + std::to_string(lineno) + ": coordinate " + key +
                                 " out of range 1.." + std::to_string(n));
            coord_expr[coord - 1] = expr;
        }
    }
    if (!have_header) throw InputError("missing 'd=<int> blocks=<int>' header");
    std::vector<CMatrix> factors;
    std::size_t dim = 1;
    for (int i = 0; i < r; ++i) dim *= std::size_t(d);
    for (int c = 0; c < n; ++c) {
        if (coord_expr.count(c))
            factors.push_back(parse_factor_list(coord_expr[c], d, r));
        else if (all_expr)
            factors.push_back(parse_factor_list(*all_expr, d, r));
        else
            factors.push_back(CMatrix::identity(dim));
    }
    return make_transversal(d, n, r, std::move(factors));
}

// -------------------------------------------------------------------------
// Analysis reports
// -------------------------------------------------------------------------

AnalysisReport run_analysis(const CodeSpec& spec) {
    AnalysisReport rep;
    rep.code_name = spec.name;
    rep.d = spec.stabilizer.d;
    rep.n = spec.stabilizer.n;
    rep.k = spec.k;
    rep.gauge_k = spec.gauge_k;
    rep.delta = spec.delta;
    rep.group_order = spec.stabilizer.order;
    const StabilizerGroup& s = spec.stabilizer;

    std::optional<StructureContext> ctx;
    try {
        ctx = build_structure_context(s);
    } catch (const ResourceError& e) {
        rep.section_errors["structure"] = e.what();
    }

    if (ctx) {
        rep.degenerate = ctx->degenerate;
        try {
            bool counts_ok = true, mixed_order_ok = true;
            for (const auto& omega : ctx->minimal) {
                MinimalSubcodeInfo info;
                try {
                    info = classify_minimal_subcode(s, omega);
                } catch (const InputError&) {
                    mixed_order_ok = false;
                    continue;
                }
                if (s.d == 2 &&
                    !((info.a_omega == 1 || info.a_omega == 3) &&
                      (info.a_omega != 3 || omega.size() % 2 == 0)))
                    counts_ok = false;
                rep.minimal_subcodes.push_back(std::move(info));
            }
            if (s.d == 2)
                rep.check_verdicts["minimal-subcode-counts"] = counts_ok ? "ok" : "violated";
            if (!mixed_order_ok)
                rep.check_verdicts["minimal-order"] = "violated";
        } catch (const ResourceError& e) {
            rep.section_errors["minimal-subcodes"] = e.what();
        }

        try {
            for (int j = 0; j < s.n; ++j)
                rep.coordinates.push_back(classify_coordinate(s, j, *ctx));
        } catch (const ResourceError& e) {
            rep.section_errors["coordinates"] = e.what();
        }
    }

    try {
        bool ok = true;
        for (int i = 0; i < s.n; ++i) {
            auto info = single_qudit_subgroup(s, i);
            uint64_t idx = info.index;
            if (s.d == 2)
                ok = ok && (idx == 1 || idx == 2 || idx == 4);
            else
                ok = ok && idx <= uint64_t(s.d) * s.d;
            rep.single_qudit.push_back(std::move(info));
        }
        rep.check_verdicts["single-qudit-index"] = ok ? "ok" : "violated";
    } catch (const ResourceError& e) {
        rep.section_errors["single-qudit"] = e.what();
    }

    try {
        auto pi = pi_subgroup(s);
        bool within = pi.index <= uint64_t(s.d) * s.d &&
                      (s.d != 2 || pi.index == 1 || pi.index == 2 || pi.index == 4);
        bool characterized = pi.index != uint64_t(s.d) * s.d || pi.structure_verified;
        rep.check_verdicts["pi-index"] =
            within && characterized ? "ok" : "violated";
        rep.pi = std::move(pi);
    } catch (const ResourceError& e) {
        rep.section_errors["pi-subgroup"] = e.what();
    }
    return rep;
}

namespace {

ordered_json support_json(const SupportSet& s) {
    ordered_json arr = ordered_json::array();
    for (int c : s) arr.push_back(c + 1);  // 1-based in reports
    return arr;
}

}  // namespace

ordered_json report_to_json(const AnalysisReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    ordered_json code;
    code["name"] = rep.code_name;
    code["d"] = rep.d;
    code["n"] = rep.n;
    code["k"] = rep.k;
    code["gauge_k"] = rep.gauge_k;
    code["delta"] = rep.delta;
    code["group_order"] = rep.group_order;
    j["code"] = code;

    ordered_json minimal = ordered_json::array();
    for (const auto& info : rep.minimal_subcodes) {
        ordered_json m;
        m["omega"] = support_json(info.omega);
        if (rep.d == 2) m["a_omega"] = info.a_omega;
        m["n_g"] = info.n_g;
        m["form"] = info.form();
        m["order"] = info.order;
        m["normalization_found"] = info.normalization_found;
        minimal.push_back(std::move(m));
    }
    j["minimal_subcodes"] = minimal;

    ordered_json coords = ordered_json::array();
    for (const auto& c : rep.coordinates) {
        ordered_json cj;
        cj["coordinate"] = c.coordinate + 1;
        cj["class"] = to_string(c.cls);
        cj["degenerate"] = c.degenerate;
        if (c.degenerate) cj["reason"] = c.degenerate_reason;
        cj["coverage"] = c.coverage;
        cj["witness_support"] = support_json(c.witness_support);
        if (!c.witness_pauli.empty()) cj["witness_pauli"] = c.witness_pauli;
        if (!c.witness_subgroup.empty()) {
            ordered_json gens = ordered_json::array();
            for (const auto& g : c.witness_subgroup) gens.push_back({g[0], g[1]});
            cj["witness_subgroup"] = gens;
        }
        coords.push_back(std::move(cj));
    }
    j["coordinates"] = coords;

    ordered_json singles = ordered_json::array();
    for (const auto& info : rep.single_qudit) {
        ordered_json sj;
        sj["coordinate"] = info.coordinate + 1;
        sj["index"] = info.index;
        sj["support"] = support_json(info.support);
        singles.push_back(std::move(sj));
    }
    j["single_qudit_subgroups"] = singles;

    if (rep.pi) {
        ordered_json pj;
        pj["index"] = rep.pi->index;
        pj["tag"] = rep.pi->tag;
        pj["structure_verified"] = rep.pi->structure_verified;
        if (rep.pi->two_m) pj["two_m"] = rep.pi->two_m;
        pj["lc_witness_found"] = rep.pi->lc_witness_found;
        j["pi"] = pj;
    }
    if (rep.degenerate) {
        ordered_json dj;
        ordered_json pairs = ordered_json::array();
        for (auto [a, b] : rep.degenerate->bell_pairs) pairs.push_back({a + 1, b + 1});
        dj["bell_pairs"] = pairs;
        ordered_json triv = ordered_json::array();
        for (int c : rep.degenerate->trivial_coordinates) triv.push_back(c + 1);
        dj["trivial_coordinates"] = triv;
        j["degenerate_factors"] = dj;
    }
    ordered_json lem;
    for (const auto& [name, verdict] : rep.check_verdicts) lem[name] = verdict;
    j["check_verdicts"] = lem;
    ordered_json errs;
    for (const auto& [name, msg] : rep.section_errors) errs[name] = msg;
    j["section_errors"] = errs;
    return j;
}

bool SweepReport::all_clean() const {
    for (const auto& [name, count] : checks)
        if (count.violations != 0) return false;
    return true;
}

ordered_json sweep_to_json(const SweepReport& rep) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = kToolVersion;
    ordered_json cfg;
    cfg["d"] = rep.config.d;
    cfg["n"] = rep.config.n;
    cfg["mode"] = rep.config.exhaustive ? "exhaustive" : "samples";
    if (!rep.config.exhaustive) {
        cfg["samples"] = rep.config.samples;
        cfg["seed"] = rep.config.seed;
    }
    j["config"] = cfg;
    j["groups_tested"] = rep.groups_tested;
    ordered_json checks;
    for (const auto& [name, count] : rep.checks) {
        ordered_json lj;
        lj["checked"] = count.checked;
        lj["violations"] = count.violations;
        if (!count.counterexamples.empty()) lj["counterexamples"] = count.counterexamples;
        checks[name] = lj;
    }
    j["checks"] = checks;
    ordered_json pi;
    pi["index_d2_groups"] = rep.index_d2_groups;
    pi["lc_witness_found"] = rep.lc_witness_found;
    pi["lc_witness_missing"] = rep.lc_witness_missing;
    j["full_support_pairs"] = pi;
    j["clean"] = rep.all_clean();
    return j;
}

}  // namespace qecc
