#include "hypstab/commands.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

std::string f6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string g12(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += g12(v[i]);
    }
    return out + "]";
}

const char* method_name(Method m) {
    switch (m) {
        case Method::analytic_rank_one: return "analytic_rank_one";
        case Method::analytic_antidiag: return "analytic_antidiag";
        case Method::numeric: return "numeric";
    }
    return "";
}

const char* robust_name(RobustVerdict v) {
    switch (v) {
        case RobustVerdict::robust_stable: return "robust_stable";
        case RobustVerdict::not_robust_stable: return "not_robust_stable";
        case RobustVerdict::boundary_case: return "boundary_case";
    }
    return "";
}

const char* exponential_name(ExponentialVerdict v) {
    return v == ExponentialVerdict::stable ? "stable" : "inconclusive";
}

const char* kind_label(SystemKind k) {
    switch (k) {
        case SystemKind::density_flow: return "density_flow";
        case SystemKind::saint_venant: return "saint_venant";
        case SystemKind::generic: return "generic";
    }
    return "";
}

// Every echo line gets a comment prefix so the host file stays a comment
// block; blank lines become a bare "#".
void append_echo(std::string& out, const Scenario& sc) {
    out += "# scenario:\n";
    std::string canon = serialize_scenario(sc);
    size_t pos = 0;
    while (pos < canon.size()) {
        size_t eol = canon.find('\n', pos);
        std::string_view line(canon.data() + pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) out += "#\n";
        else {
            out += "# ";
            out += line;
            out += '\n';
        }
    }
    out += "# end scenario\n";
}

struct Analysis {
    Realized r;
    RiemannForm rf;
    CouplingMatrix cm;
    StabilityReport report;
};

Analysis analyze_scenario(const Scenario& sc) {
    Analysis a{realize(sc), {}, {}, {}};
    a.rf = to_riemann(a.r.system);
    a.cm = build_coupling(a.rf, a.r.boundary);
    SearchConfig cfg = search_config(sc);
    a.report = a.rf.source_coupling
                   ? verdict_balance(a.cm, *a.rf.source_coupling, a.rf.lambda, cfg)
                   : verdict_conservation(a.cm, cfg);
    return a;
}

// The closed forms only exist for the observability patterns they were
// derived for; anything else gets no cross-check lines.
std::optional<DensityFlowCase> flow_case(const Scenario& sc) {
    const std::vector<bool> all{true, true};
    const std::vector<bool>& m0 = sc.observable_0.empty() ? all : sc.observable_0;
    const std::vector<bool>& ml = sc.observable_l.empty() ? all : sc.observable_l;
    auto is = [](const std::vector<bool>& m, bool a, bool b) { return m[0] == a && m[1] == b; };
    if (is(m0, true, true) && is(ml, true, true)) return DensityFlowCase::full;
    if (is(m0, false, true) && is(ml, false, true)) return DensityFlowCase::q_only;
    if (is(m0, true, false) && is(ml, true, false)) return DensityFlowCase::h_only;
    if (is(m0, true, false) && is(ml, false, false)) return DensityFlowCase::h_at_0_only;
    return std::nullopt;
}

const char* flow_case_name(DensityFlowCase c) {
    switch (c) {
        case DensityFlowCase::full: return "full";
        case DensityFlowCase::q_only: return "q_only";
        case DensityFlowCase::h_only: return "h_only";
        case DensityFlowCase::h_at_0_only: return "h_at_0_only";
    }
    return "";
}

void append_cross_checks(std::string& out, const Scenario& sc) {
    auto kv = [&](const char* key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    if (sc.kind == SystemKind::density_flow) {
        if (auto c = flow_case(sc)) {
            kv("closed_form_case", '"' + std::string(flow_case_name(*c)) + '"');
            try {
                kv("closed_form_rho0_sq", g12(density_flow_rho0_sq(*c, density_flow_params(sc))));
            } catch (const DegenerateDenominator&) {
                kv("closed_form_rho0_sq", "\"degenerate\"");
            }
        }
    } else if (sc.kind == SystemKind::saint_venant) {
        try {
            kv("closed_form_condition", g12(saint_venant_condition(saint_venant_params(sc))));
        } catch (const DegenerateDenominator&) {
            kv("closed_form_condition", "\"degenerate\"");
        }
    }
}

struct SweepRow {
    double value = 0.0;
    double rho0 = 0.0, rho1 = 0.0;
    RobustVerdict robust = RobustVerdict::boundary_case;
    ExponentialVerdict exponential = ExponentialVerdict::inconclusive;
    std::optional<double> nu;
    bool has_nu_column = false;
};

} // namespace

CommandResult cmd_analyze(const std::string& scenario_text) {
    try {
        Scenario sc = parse_scenario(scenario_text);
        Analysis a = analyze_scenario(sc);
        const StabilityReport& rep = a.report;

        std::string out = "# hypstab analysis report\n";
        append_echo(out, sc);
        auto kv = [&](const char* key, const std::string& value) {
            out += key;
            out += " = ";
            out += value;
            out += '\n';
        };
        kv("system", '"' + std::string(kind_label(sc.kind)) + '"');
        kv("n", std::to_string(a.r.system.n));
        kv("seed", std::to_string(effective_seed(sc)));
        kv("rho0", f6(rep.rho0));
        kv("rho0_method", '"' + std::string(method_name(rep.method0)) + '"');
        kv("rho1", f6(rep.rho1));
        kv("rho1_method", '"' + std::string(method_name(rep.method1)) + '"');
        kv("verdict_robust", '"' + std::string(robust_name(rep.verdict_robust)) + '"');
        kv("verdict_exponential", '"' + std::string(exponential_name(rep.verdict_exponential)) + '"');
        if (a.rf.source_coupling) {
            if (rep.balance_certificate) {
                const BalanceCertificate& c = *rep.balance_certificate;
                kv("certificate_p", g12(c.p));
                kv("certificate_delta", g12(c.delta));
                kv("certificate_min_eigenvalue", g12(c.min_eigenvalue));
                kv("certificate_norm", g12(c.norm));
            } else {
                kv("certificate", "\"none\"");
            }
        }
        append_cross_checks(out, sc);
        int code = rep.verdict_exponential == ExponentialVerdict::stable ? 0 : 1;
        return {code, std::move(out), ""};
    } catch (const Error& e) {
        return {2, "", e.what()};
    }
}

CommandResult cmd_simulate(const std::string& scenario_text) {
    try {
        Scenario sc = parse_scenario(scenario_text);
        Realized r = realize(sc);
        RiemannForm rf = to_riemann(r.system);
        CouplingMatrix cm = build_coupling(rf, r.boundary);
        SimResult res = run(rf, cm, sim_config(sc, r));

        std::string out = "# hypstab simulation\n";
        append_echo(out, sc);
        out += "t,l2_norm\n";
        for (size_t i = 0; i < res.times.size(); ++i) {
            out += g12(res.times[i]);
            out += ',';
            out += g12(res.norms[i]);
            out += '\n';
        }
        if (res.blew_up) out += "# blow_up = true\n";
        if (res.decay) {
            out += "# nu = " + g12(res.decay->nu) + "\n";
            out += "# c_decay = " + g12(res.decay->c_decay) + "\n";
        } else {
            out += "# nu = unavailable\n";
            out += "# c_decay = unavailable\n";
        }
        return {0, std::move(out), ""};
    } catch (const Error& e) {
        return {2, "", e.what()};
    }
}

CommandResult cmd_sweep(const std::string& scenario_text, const SweepSpec& spec) {
    try {
        Scenario base = parse_scenario(scenario_text);
        {
            Scenario probe = base;
            set_parameter(probe, spec.path, 0.0); // path check before any work
        }
        const bool with_sim = !spec.skip_sim;
        if (with_sim && !spec.values.empty() && !base.sim)
            throw InvalidValue("sweep with simulation needs a [sim] section");

        std::vector<SweepRow> rows(spec.values.size());
        std::atomic<size_t> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;

        auto evaluate = [&](size_t i) {
            Scenario sc = base;
            set_parameter(sc, spec.path, spec.values[i]);
            Analysis a = analyze_scenario(sc);
            SweepRow row;
            row.value = spec.values[i];
            row.rho0 = a.report.rho0;
            row.rho1 = a.report.rho1;
            row.robust = a.report.verdict_robust;
            row.exponential = a.report.verdict_exponential;
            row.has_nu_column = with_sim;
            if (with_sim) {
                SimResult res = run(a.rf, a.cm, sim_config(sc, a.r));
                if (res.decay) row.nu = res.decay->nu;
            }
            rows[i] = std::move(row);
        };

        int workers = base.analysis.workers > 0
                          ? base.analysis.workers
                          : static_cast<int>(std::thread::hardware_concurrency());
        if (workers < 1) workers = 1;
        if (workers > static_cast<int>(rows.size())) workers = static_cast<int>(rows.size());

        auto drain = [&] {
            for (size_t i; (i = next.fetch_add(1)) < rows.size();) {
                try {
                    evaluate(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        };
        if (workers <= 1) {
            drain();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
            for (auto& t : pool) t.join();
        }
        if (first_error) std::rethrow_exception(first_error);

        std::string out = "# hypstab sweep\n# param = " + spec.path + "\n";
        out += with_sim ? "parameter,rho0,rho1,verdict_robust,verdict_exponential,nu\n"
                        : "parameter,rho0,rho1,verdict_robust,verdict_exponential\n";
        for (const SweepRow& row : rows) {
            out += g12(row.value);
            out += ',';
            out += g12(row.rho0);
            out += ',';
            out += g12(row.rho1);
            out += ',';
            out += robust_name(row.robust);
            out += ',';
            out += exponential_name(row.exponential);
            if (row.has_nu_column) {
                out += ',';
                out += row.nu ? g12(*row.nu) : "nan";
            }
            out += '\n';
        }
        return {0, std::move(out), ""};
    } catch (const Error& e) {
        return {2, "", e.what()};
    }
}

std::vector<double> sweep_grid(double lo, double hi, int count) {
    if (count < 1) throw InvalidValue("grid count must be at least 1");
    if (count == 1) return {lo};
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return out;
}

std::string extract_scenario_echo(const std::string& report) {
    const std::string begin = "# scenario:\n";
    const std::string end = "# end scenario";
    size_t b = report.find(begin);
    if (b == std::string::npos) throw InvalidValue("report has no scenario echo");
    size_t pos = b + begin.size();
    std::string out;
    while (pos < report.size()) {
        size_t eol = report.find('\n', pos);
        if (eol == std::string::npos) eol = report.size();
        std::string_view line(report.data() + pos, eol - pos);
        if (line.rfind(end, 0) == 0) return out;
        if (line == "#") out += '\n';
        else if (line.rfind("# ", 0) == 0) {
            out += line.substr(2);
            out += '\n';
        } else {
            throw InvalidValue("malformed scenario echo line");
        }
        pos = eol + 1;
    }
    throw InvalidValue("unterminated scenario echo");
}

} // namespace hypstab
