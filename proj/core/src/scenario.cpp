#include "hypstab/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string_view>
#include <utility>

#include "hypstab/errors.hpp"
#include "hypstab/models.hpp"

namespace hypstab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool valid_key(std::string_view k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return true;
}

double parse_number(std::string_view v, int line) {
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
        throw ParseError(line, "expected a number, got '" + std::string(v) + "'");
    return x;
}

long long parse_integer(std::string_view v, int line) {
    long long x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ParseError(line, "expected an integer, got '" + std::string(v) + "'");
    return x;
}

std::uint64_t parse_seed_value(std::string_view v, int line) {
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ParseError(line, "expected an unsigned integer, got '" + std::string(v) + "'");
    return x;
}

bool parse_boolean(std::string_view v, int line) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError(line, "expected true or false, got '" + std::string(v) + "'");
}

std::string parse_string(std::string_view v, int line) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"')
        throw ParseError(line, "expected a quoted string, got '" + std::string(v) + "'");
    std::string_view body = v.substr(1, v.size() - 2);
    if (body.find('"') != std::string_view::npos)
        throw ParseError(line, "string contains an embedded quote");
    return std::string(body);
}

// Top-level comma split of the contents of a bracketed list; nested brackets
// are kept intact for the caller.
std::vector<std::string_view> split_list(std::string_view v, int line) {
    v = trim(v);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ParseError(line, "expected a [...] list, got '" + std::string(v) + "'");
    std::string_view inner = v.substr(1, v.size() - 2);
    std::vector<std::string_view> out;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i < inner.size(); ++i) {
        char c = inner[i];
        if (c == '[') ++depth;
        else if (c == ']') {
            if (--depth < 0) throw ParseError(line, "unbalanced brackets");
        } else if (c == ',' && depth == 0) {
            out.push_back(trim(inner.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError(line, "unbalanced brackets");
    std::string_view last = trim(inner.substr(start));
    if (!last.empty()) out.push_back(last);
    else if (!out.empty()) throw ParseError(line, "empty list element");
    for (std::string_view e : out)
        if (e.empty()) throw ParseError(line, "empty list element");
    return out;
}

std::vector<double> parse_number_list(std::string_view v, int line) {
    std::vector<double> out;
    for (std::string_view e : split_list(v, line)) out.push_back(parse_number(e, line));
    return out;
}

std::vector<bool> parse_bool_list(std::string_view v, int line) {
    std::vector<bool> out;
    for (std::string_view e : split_list(v, line)) out.push_back(parse_boolean(e, line));
    return out;
}

Matrix parse_matrix(std::string_view v, int line) {
    std::vector<std::vector<double>> rows;
    for (std::string_view e : split_list(v, line)) {
        if (e.empty() || e.front() != '[')
            throw ParseError(line, "expected a matrix row [...], got '" + std::string(e) + "'");
        rows.push_back(parse_number_list(e, line));
    }
    if (rows.empty()) throw ParseError(line, "matrix has no rows");
    size_t cols = rows.front().size();
    if (cols == 0) throw ParseError(line, "matrix row is empty");
    std::vector<double> entries;
    for (const auto& r : rows) {
        if (r.size() != cols) throw ParseError(line, "matrix rows differ in length");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return Matrix(static_cast<int>(rows.size()), static_cast<int>(cols), std::move(entries));
}

struct Pair {
    int line = 0;
    std::string key, value;
};

struct RawSection {
    int line = 0;
    bool seen = false;
    std::vector<Pair> pairs;
};

struct RawFile {
    RawSection system, boundary, sim, analysis;
};

RawFile lex(const std::string& text) {
    RawFile raw;
    RawSection* current = nullptr;
    int line_no = 0;
    size_t pos = 0;
    bool first_section = true;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos, (eol == std::string::npos ? text.size() : eol) - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(line_no, "malformed section header '" + std::string(line) + "'");
            std::string_view name = trim(line.substr(1, line.size() - 2));
            RawSection* s = nullptr;
            if (name == "system") s = &raw.system;
            else if (name == "boundary") s = &raw.boundary;
            else if (name == "sim") s = &raw.sim;
            else if (name == "analysis") s = &raw.analysis;
            else throw ParseError(line_no, "unknown section [" + std::string(name) + "]");
            if (first_section && s != &raw.system)
                throw ParseError(line_no, "[system] must be the first section");
            first_section = false;
            if (s->seen) throw ParseError(line_no, "duplicate section [" + std::string(name) + "]");
            s->seen = true;
            s->line = line_no;
            current = s;
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, "expected key = value, got '" + std::string(line) + "'");
        std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (!valid_key(key)) throw ParseError(line_no, "malformed key '" + std::string(key) + "'");
        if (value.empty()) throw ParseError(line_no, "missing value for key '" + std::string(key) + "'");
        if (!current) throw ParseError(line_no, "key '" + std::string(key) + "' outside of a section");
        current->pairs.push_back({line_no, std::string(key), std::string(value)});
    }
    return raw;
}

// Tracks which keys a section consumed; anything else is a typo.
class SectionReader {
public:
    SectionReader(const RawSection& raw, std::string name) : raw_(raw), name_(std::move(name)) {}

    template <typename F>
    void process(F&& assign) const {
        std::set<std::string> seen;
        for (const Pair& p : raw_.pairs) {
            if (!seen.insert(p.key).second)
                throw ParseError(p.line, "duplicate key '" + p.key + "'");
            if (!assign(p))
                throw ParseError(p.line, "unknown key '" + p.key + "' in [" + name_ + "]");
        }
    }

    void require(std::initializer_list<const char*> keys) const {
        for (const char* k : keys) {
            bool found = false;
            for (const Pair& p : raw_.pairs)
                if (p.key == k) { found = true; break; }
            if (!found)
                throw ParseError(raw_.line, "missing required key '" + std::string(k) + "' in [" + name_ + "]");
        }
    }

    int line_of(const char* key) const {
        for (const Pair& p : raw_.pairs)
            if (p.key == key) return p.line;
        return raw_.line;
    }

private:
    const RawSection& raw_;
    std::string name_;
};

int to_int(long long v, int line) {
    if (v < -(1LL << 31) || v >= (1LL << 31)) throw ParseError(line, "integer out of range");
    return static_cast<int>(v);
}

void check_positive(double v, const char* key, int line) {
    if (!(v > 0.0)) throw ParseError(line, std::string(key) + " must be positive");
}

std::string fmt(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

std::string fmt(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out + "]";
}

std::string fmt(const std::vector<bool>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i] ? "true" : "false";
    }
    return out + "]";
}

std::string fmt(const Matrix& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out += ", ";
        out += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += fmt(m(i, j));
        }
        out += "]";
    }
    return out + "]";
}

const char* kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::density_flow: return "density_flow";
        case SystemKind::saint_venant: return "saint_venant";
        case SystemKind::generic: return "generic";
    }
    return "";
}

int system_size(const Scenario& sc) {
    return sc.kind == SystemKind::generic ? sc.m->rows() : 2;
}

void check_mask(const std::vector<bool>& mask, int n, const char* key, int line) {
    if (!mask.empty() && static_cast<int>(mask.size()) != n)
        throw ParseError(line, std::string(key) + " needs one entry per variable");
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    RawFile raw = lex(text);
    if (!raw.system.seen) throw ParseError(0, "missing [system] section");

    Scenario sc;

    SectionReader system(raw.system, "system");
    if (raw.system.pairs.empty() || raw.system.pairs.front().key != "type")
        throw ParseError(raw.system.pairs.empty() ? raw.system.line : raw.system.pairs.front().line,
                         "the first key in [system] must be type");
    {
        const Pair& tp = raw.system.pairs.front();
        std::string type = parse_string(tp.value, tp.line);
        if (type == "density_flow") sc.kind = SystemKind::density_flow;
        else if (type == "saint_venant") sc.kind = SystemKind::saint_venant;
        else if (type == "generic") sc.kind = SystemKind::generic;
        else throw ParseError(tp.line, "unknown system type \"" + type + "\"");
    }

    system.process([&](const Pair& p) {
        if (p.key == "type") return true; // handled above
        if (p.key == "length") {
            sc.length = parse_number(p.value, p.line);
            check_positive(sc.length, "length", p.line);
            return true;
        }
        switch (sc.kind) {
            case SystemKind::density_flow:
                if (p.key == "lambda1") { sc.lambda1 = parse_number(p.value, p.line); return true; }
                if (p.key == "lambda2") { sc.lambda2 = parse_number(p.value, p.line); return true; }
                if (p.key == "h_star") { sc.h_star = parse_number(p.value, p.line); return true; }
                if (p.key == "q_star") { sc.q_star = parse_number(p.value, p.line); return true; }
                return false;
            case SystemKind::saint_venant:
                if (p.key == "h_star") { sc.h_star = parse_number(p.value, p.line); return true; }
                if (p.key == "v_star") { sc.v_star = parse_number(p.value, p.line); return true; }
                if (p.key == "g") { sc.g = parse_number(p.value, p.line); return true; }
                if (p.key == "c_f") { sc.c_f = parse_number(p.value, p.line); return true; }
                return false;
            case SystemKind::generic:
                if (p.key == "m") { sc.m = parse_matrix(p.value, p.line); return true; }
                if (p.key == "n") { sc.n_source = parse_matrix(p.value, p.line); return true; }
                return false;
        }
        return false;
    });

    switch (sc.kind) {
        case SystemKind::density_flow: system.require({"lambda1", "lambda2"}); break;
        case SystemKind::saint_venant: system.require({"h_star", "v_star", "g", "c_f"}); break;
        case SystemKind::generic: system.require({"m", "length"}); break;
    }
    if (sc.kind == SystemKind::generic) {
        if (!sc.m->square()) throw ParseError(system.line_of("m"), "m must be square");
        if (sc.n_source && (sc.n_source->rows() != sc.m->rows() || !sc.n_source->square()))
            throw ParseError(system.line_of("n"), "n must match the shape of m");
    }

    const int n = system_size(sc);

    if (sc.kind == SystemKind::generic && !raw.boundary.seen)
        throw ParseError(0, "missing [boundary] section");
    SectionReader boundary(raw.boundary, "boundary");
    boundary.process([&](const Pair& p) {
        if (p.key == "observable_0") {
            sc.observable_0 = parse_bool_list(p.value, p.line);
            check_mask(sc.observable_0, n, "observable_0", p.line);
            return true;
        }
        if (p.key == "observable_l") {
            sc.observable_l = parse_bool_list(p.value, p.line);
            check_mask(sc.observable_l, n, "observable_l", p.line);
            return true;
        }
        if (sc.kind == SystemKind::generic) {
            auto square_n = [&](const char* key) {
                Matrix m = parse_matrix(p.value, p.line);
                if (m.rows() != n || m.cols() != n)
                    throw ParseError(p.line, std::string(key) + " must be " + std::to_string(n) + "x" + std::to_string(n));
                return m;
            };
            if (p.key == "a_phys") { sc.a_phys = square_n("a_phys"); return true; }
            if (p.key == "b_phys") { sc.b_phys = square_n("b_phys"); return true; }
            if (p.key == "k0") { sc.k0 = square_n("k0"); return true; }
            if (p.key == "kl") { sc.kl = square_n("kl"); return true; }
            return false;
        }
        if (p.key == "k0_11") { sc.k0_11 = parse_number(p.value, p.line); return true; }
        if (p.key == "k0_12") { sc.k0_12 = parse_number(p.value, p.line); return true; }
        if (p.key == "kl_21") { sc.kl_21 = parse_number(p.value, p.line); return true; }
        if (p.key == "kl_22") { sc.kl_22 = parse_number(p.value, p.line); return true; }
        return false;
    });
    if (sc.kind == SystemKind::generic) boundary.require({"a_phys", "b_phys"});

    if (raw.sim.seen) {
        SimSection sec;
        SectionReader sim(raw.sim, "sim");
        sim.process([&](const Pair& p) {
            if (p.key == "dx") {
                sec.dx = parse_number(p.value, p.line);
                check_positive(sec.dx, "dx", p.line);
                return true;
            }
            if (p.key == "cfl_factor") {
                sec.cfl_factor = parse_number(p.value, p.line);
                if (!(sec.cfl_factor > 0.0 && sec.cfl_factor <= 1.0))
                    throw ParseError(p.line, "cfl_factor must lie in (0, 1]");
                return true;
            }
            if (p.key == "t_end") {
                sec.t_end = parse_number(p.value, p.line);
                check_positive(sec.t_end, "t_end", p.line);
                return true;
            }
            if (p.key == "sample_stride") {
                sec.sample_stride = to_int(parse_integer(p.value, p.line), p.line);
                if (sec.sample_stride < 1) throw ParseError(p.line, "sample_stride must be at least 1");
                return true;
            }
            auto sized = [&](const char* key) {
                std::vector<double> v = parse_number_list(p.value, p.line);
                if (static_cast<int>(v.size()) != n)
                    throw ParseError(p.line, std::string(key) + " needs one entry per variable");
                return v;
            };
            if (p.key == "initial_constant") { sec.initial_constant = sized("initial_constant"); return true; }
            if (p.key == "initial_amplitude") { sec.initial_amplitude = sized("initial_amplitude"); return true; }
            if (p.key == "initial_frequency") { sec.initial_frequency = sized("initial_frequency"); return true; }
            if (p.key == "equilibrium") { sec.equilibrium = sized("equilibrium"); return true; }
            return false;
        });
        if (sec.initial_constant.empty() && !sec.initial_amplitude.empty())
            throw ParseError(sim.line_of("initial_amplitude"), "initial_amplitude requires initial_constant");
        if (sec.initial_constant.empty() && !sec.initial_frequency.empty())
            throw ParseError(sim.line_of("initial_frequency"), "initial_frequency requires initial_constant");
        sc.sim = std::move(sec);
    }

    if (raw.analysis.seen) {
        AnalysisSection& a = sc.analysis;
        SectionReader analysis(raw.analysis, "analysis");
        analysis.process([&](const Pair& p) {
            auto budget = [&](int& field, int min_value) {
                field = to_int(parse_integer(p.value, p.line), p.line);
                if (field < min_value)
                    throw ParseError(p.line, p.key + " must be at least " + std::to_string(min_value));
            };
            if (p.key == "seed") { a.seed = parse_seed_value(p.value, p.line); return true; }
            if (p.key == "rho0_grid") { budget(a.rho0_grid, 1); return true; }
            if (p.key == "rho0_starts") { budget(a.rho0_starts, 1); return true; }
            if (p.key == "rho0_refine") { budget(a.rho0_refine, 0); return true; }
            if (p.key == "rho1_starts") { budget(a.rho1_starts, 0); return true; }
            if (p.key == "find_p_samples") { budget(a.find_p_samples, 1); return true; }
            if (p.key == "workers") { budget(a.workers, 0); return true; }
            if (p.key == "verdict_band") {
                a.verdict_band = parse_number(p.value, p.line);
                if (a.verdict_band < 0.0) throw ParseError(p.line, "verdict_band must be nonnegative");
                return true;
            }
            return false;
        });
    }

    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    const int n = system_size(sc);
    std::string out;
    auto kv = [&](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };

    out += "[system]\n";
    kv("type", '"' + std::string(kind_name(sc.kind)) + '"');
    kv("length", fmt(sc.length));
    switch (sc.kind) {
        case SystemKind::density_flow:
            kv("lambda1", fmt(sc.lambda1));
            kv("lambda2", fmt(sc.lambda2));
            kv("h_star", fmt(sc.h_star));
            kv("q_star", fmt(sc.q_star));
            break;
        case SystemKind::saint_venant:
            kv("h_star", fmt(sc.h_star));
            kv("v_star", fmt(sc.v_star));
            kv("g", fmt(sc.g));
            kv("c_f", fmt(sc.c_f));
            break;
        case SystemKind::generic:
            kv("m", fmt(*sc.m));
            if (sc.n_source) kv("n", fmt(*sc.n_source));
            break;
    }

    out += "\n[boundary]\n";
    if (sc.kind == SystemKind::generic) {
        kv("a_phys", fmt(*sc.a_phys));
        kv("b_phys", fmt(*sc.b_phys));
        if (sc.k0) kv("k0", fmt(*sc.k0));
        if (sc.kl) kv("kl", fmt(*sc.kl));
    } else {
        kv("k0_11", fmt(sc.k0_11));
        kv("k0_12", fmt(sc.k0_12));
        kv("kl_21", fmt(sc.kl_21));
        kv("kl_22", fmt(sc.kl_22));
    }
    std::vector<bool> all_true(static_cast<size_t>(n), true);
    kv("observable_0", fmt(sc.observable_0.empty() ? all_true : sc.observable_0));
    kv("observable_l", fmt(sc.observable_l.empty() ? all_true : sc.observable_l));

    if (sc.sim) {
        const SimSection& s = *sc.sim;
        out += "\n[sim]\n";
        kv("dx", fmt(s.dx));
        kv("cfl_factor", fmt(s.cfl_factor));
        kv("t_end", fmt(s.t_end));
        kv("sample_stride", std::to_string(s.sample_stride));
        if (!s.initial_constant.empty()) {
            kv("initial_constant", fmt(s.initial_constant));
            std::vector<double> amp = s.initial_amplitude, freq = s.initial_frequency;
            if (amp.empty()) amp.assign(static_cast<size_t>(n), 0.0);
            if (freq.empty()) freq.assign(static_cast<size_t>(n), 1.0);
            kv("initial_amplitude", fmt(amp));
            kv("initial_frequency", fmt(freq));
        }
        if (!s.equilibrium.empty()) kv("equilibrium", fmt(s.equilibrium));
    }

    const AnalysisSection& a = sc.analysis;
    out += "\n[analysis]\n";
    kv("seed", std::to_string(a.seed));
    kv("rho0_grid", std::to_string(a.rho0_grid));
    kv("rho0_starts", std::to_string(a.rho0_starts));
    kv("rho0_refine", std::to_string(a.rho0_refine));
    kv("rho1_starts", std::to_string(a.rho1_starts));
    kv("find_p_samples", std::to_string(a.find_p_samples));
    kv("verdict_band", fmt(a.verdict_band));
    kv("workers", std::to_string(a.workers));
    return out;
}

DensityFlowParams density_flow_params(const Scenario& sc) {
    if (sc.kind != SystemKind::density_flow) throw InvalidValue("scenario is not a density_flow system");
    DensityFlowParams p;
    p.lambda1 = sc.lambda1;
    p.lambda2 = sc.lambda2;
    p.h_star = sc.h_star;
    p.q_star = sc.q_star;
    p.k0_11 = sc.k0_11;
    p.k0_12 = sc.k0_12;
    p.kl_21 = sc.kl_21;
    p.kl_22 = sc.kl_22;
    if (!sc.observable_0.empty()) p.observable_0 = sc.observable_0;
    if (!sc.observable_l.empty()) p.observable_l = sc.observable_l;
    p.length = sc.length;
    return p;
}

SaintVenantParams saint_venant_params(const Scenario& sc) {
    if (sc.kind != SystemKind::saint_venant) throw InvalidValue("scenario is not a saint_venant system");
    SaintVenantParams p;
    p.h_star = sc.h_star;
    p.v_star = sc.v_star;
    p.g = sc.g;
    p.c_f = sc.c_f;
    p.k0_11 = sc.k0_11;
    p.k0_12 = sc.k0_12;
    p.kl_21 = sc.kl_21;
    p.kl_22 = sc.kl_22;
    if (!sc.observable_0.empty()) p.observable_0 = sc.observable_0;
    if (!sc.observable_l.empty()) p.observable_l = sc.observable_l;
    p.length = sc.length;
    return p;
}

Realized realize(const Scenario& sc) {
    switch (sc.kind) {
        case SystemKind::density_flow: {
            auto [sys, bc] = density_flow(density_flow_params(sc));
            return {std::move(sys), std::move(bc), {sc.h_star, sc.q_star}};
        }
        case SystemKind::saint_venant: {
            auto [sys, bc] = saint_venant(saint_venant_params(sc));
            return {std::move(sys), std::move(bc), {sc.h_star, sc.v_star}};
        }
        case SystemKind::generic: {
            const int n = sc.m->rows();
            HyperbolicSystem sys{n, *sc.m, sc.n_source, sc.length};
            BoundaryControl bc;
            bc.a_phys = *sc.a_phys;
            bc.b_phys = *sc.b_phys;
            bc.k0 = sc.k0 ? *sc.k0 : Matrix(n, n);
            bc.kl = sc.kl ? *sc.kl : Matrix(n, n);
            bc.observable_0 = sc.observable_0.empty() ? std::vector<bool>(n, true) : sc.observable_0;
            bc.observable_l = sc.observable_l.empty() ? std::vector<bool>(n, true) : sc.observable_l;
            return {std::move(sys), enforce_observability(bc), std::vector<double>(n, 0.0)};
        }
    }
    throw InvalidValue("unreachable system kind");
}

SimConfig sim_config(const Scenario& sc, const Realized& r) {
    if (!sc.sim) throw InvalidValue("scenario has no [sim] section");
    const SimSection& s = *sc.sim;
    SimConfig c;
    c.dx = s.dx;
    c.cfl_factor = s.cfl_factor;
    c.t_end = s.t_end;
    c.sample_stride = s.sample_stride;
    c.equilibrium = s.equilibrium.empty() ? r.equilibrium : s.equilibrium;
    const size_t n = static_cast<size_t>(r.system.n);
    c.initial.resize(n);
    for (size_t i = 0; i < n; ++i) {
        if (s.initial_constant.empty()) {
            c.initial[i] = {c.equilibrium[i], 0.0, 1.0};
        } else {
            c.initial[i] = {s.initial_constant[i],
                            s.initial_amplitude.empty() ? 0.0 : s.initial_amplitude[i],
                            s.initial_frequency.empty() ? 1.0 : s.initial_frequency[i]};
        }
    }
    return c;
}

SearchConfig search_config(const Scenario& sc) {
    const AnalysisSection& a = sc.analysis;
    SearchConfig cfg;
    cfg.seed = effective_seed(sc);
    cfg.rho0_grid = a.rho0_grid;
    cfg.rho0_starts = a.rho0_starts;
    cfg.rho0_refine = a.rho0_refine;
    cfg.rho1_starts = a.rho1_starts;
    cfg.find_p_samples = a.find_p_samples;
    cfg.verdict_band = a.verdict_band;
    return cfg;
}

std::uint64_t effective_seed(const Scenario& sc) {
    const char* env = std::getenv("HYPSTAB_SEED");
    if (!env || !*env) return sc.analysis.seed;
    std::uint64_t s = 0;
    auto [p, ec] = std::from_chars(env, env + std::strlen(env), s);
    if (ec != std::errc() || *p != '\0')
        throw InvalidValue("HYPSTAB_SEED must be an unsigned integer");
    return s;
}

void set_parameter(Scenario& sc, const std::string& path, double value) {
    if (sc.kind == SystemKind::generic)
        throw UnknownParameterPath("scalar control paths address the built-in models only: " + path);
    if (path == "boundary.k0_11") sc.k0_11 = value;
    else if (path == "boundary.k0_12") sc.k0_12 = value;
    else if (path == "boundary.kl_21") sc.kl_21 = value;
    else if (path == "boundary.kl_22") sc.kl_22 = value;
    else throw UnknownParameterPath("unknown parameter path: " + path);
}

} // namespace hypstab
