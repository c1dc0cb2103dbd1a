#include "hypstab/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBlowup = 1e12;

struct Grid {
    int n = 0;
    int cells = 0;
    std::vector<double> a, b; // component-major: value(i, j) = buf[i * cells + j]
};

double l2_deviation(const RiemannForm& rf, const std::vector<double>& state, int cells,
                    double dx) {
    const int n = rf.transform.rows();
    double acc = 0.0;
    std::vector<double> r(n), y(n);
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < n; ++i) r[i] = state[i * cells + j];
        y = rf.transform.matvec(r);
        for (int i = 0; i < n; ++i) acc += y[i] * y[i];
    }
    return std::sqrt(dx * acc);
}

} // namespace

DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& norms,
                   double t_a, double t_b) {
    if (times.size() != norms.size())
        throw InvalidValue("times and norms must have equal length");
    if (!(t_a < t_b)) throw InvalidValue("empty fit window");
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_a || times[i] > t_b) continue;
        if (!(norms[i] > 1e-14)) continue;
        ts.push_back(times[i]);
        ys.push_back(std::log(norms[i]));
    }
    if (ts.size() < 5) throw InsufficientData("fewer than 5 usable samples in the fit window");
    if (norms.empty() || !(norms[0] > 0.0))
        throw InsufficientData("initial norm is not positive");

    const std::size_t count = ts.size();
    double mt = 0.0, my = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        mt += ts[i];
        my += ys[i];
    }
    mt /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        sxx += (ts[i] - mt) * (ts[i] - mt);
        sxy += (ts[i] - mt) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) throw InsufficientData("fit window collapses to one time");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mt;

    DecayFit fit;
    fit.nu = -slope;
    fit.c_decay = std::exp(intercept) / norms[0];
    fit.t_a = t_a;
    fit.t_b = t_b;
    double rss = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double r = ys[i] - (intercept + slope * ts[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / count);
    return fit;
}

SimResult run(const RiemannForm& rf, const CouplingMatrix& k, const SimConfig& cfg) {
    const int n = rf.transform.rows();
    if (k.k.rows() != n || k.k.cols() != n)
        throw InvalidValue("coupling matrix does not match the system size");
    if (static_cast<int>(cfg.initial.size()) != n)
        throw InvalidValue("one initial profile per physical variable required");
    if (static_cast<int>(cfg.equilibrium.size()) != n)
        throw InvalidValue("equilibrium must list every physical variable");
    if (!(cfg.dx > 0.0)) throw InvalidValue("dx must be positive");
    if (!(cfg.cfl_factor > 0.0) || cfg.cfl_factor > 1.0)
        throw InvalidValue("cfl_factor must lie in (0, 1]");
    if (!(cfg.t_end > 0.0)) throw InvalidValue("t_end must be positive");
    if (cfg.sample_stride < 1) throw InvalidValue("sample_stride must be positive");

    const double len = rf.length;
    const double cells_exact = len / cfg.dx;
    const int cells = static_cast<int>(std::llround(cells_exact));
    if (cells < 1 || std::abs(cells * cfg.dx - len) > 1e-12 * len)
        throw InvalidValue("dx must divide the domain length");

    double max_speed = 0.0;
    for (double l : rf.lambda) max_speed = std::max(max_speed, std::abs(l));
    const double dt = cfg.cfl_factor * cfg.dx / max_speed;
    const long long full_steps = static_cast<long long>(std::floor(cfg.t_end / dt + 1e-12));
    const double rem = cfg.t_end - full_steps * dt;
    const bool tail = rem > 1e-12 * cfg.t_end;
    const long long total_steps = full_steps + (tail ? 1 : 0);

    // initial data in Riemann coordinates, deviations from equilibrium
    Grid g{n, cells, std::vector<double>(static_cast<std::size_t>(n) * cells, 0.0),
           std::vector<double>(static_cast<std::size_t>(n) * cells, 0.0)};
    {
        std::vector<double> dev(n), r(n);
        for (int j = 0; j < cells; ++j) {
            const double x = (j + 0.5) * cfg.dx;
            for (int i = 0; i < n; ++i) {
                const VariableProfile& pr = cfg.initial[i];
                dev[i] = pr.constant + pr.amplitude * std::sin(pr.frequency * kPi * x) -
                         cfg.equilibrium[i];
            }
            r = rf.transform_inv.matvec(dev);
            for (int i = 0; i < n; ++i) g.a[i * static_cast<std::size_t>(cells) + j] = r[i];
        }
    }

    const Matrix* src = rf.source_coupling ? &*rf.source_coupling : nullptr;

    SimResult res;
    res.times.push_back(0.0);
    res.norms.push_back(l2_deviation(rf, g.a, cells, cfg.dx));

    std::vector<double> trace(n), incoming(n);
    for (long long step = 1; step <= total_steps && !res.blew_up; ++step) {
        const double dt_step = (step <= full_steps) ? dt : rem;
        const double t_now = (step <= full_steps) ? step * dt : cfg.t_end;
        const std::vector<double>& old = g.a;
        std::vector<double>& nxt = g.b;

        if (!cfg.periodic) {
            // outgoing traces feed the coupling; its output is the inflow
            for (int p = 0; p < rf.m; ++p) trace[p] = old[p * static_cast<std::size_t>(cells) + cells - 1];
            for (int q = rf.m; q < n; ++q) trace[q] = old[q * static_cast<std::size_t>(cells)];
            incoming = k.k.matvec(trace);
        }

        for (int i = 0; i < n; ++i) {
            const double* oi = &old[i * static_cast<std::size_t>(cells)];
            double* ni = &nxt[i * static_cast<std::size_t>(cells)];
            const double lam = rf.lambda[i];
            const double c = dt_step * lam / cfg.dx;
            if (lam > 0.0) {
                const double ghost = cfg.periodic ? oi[cells - 1] : incoming[i];
                ni[0] = oi[0] - c * (oi[0] - ghost);
                for (int j = 1; j < cells; ++j) ni[j] = oi[j] - c * (oi[j] - oi[j - 1]);
            } else {
                const double ghost = cfg.periodic ? oi[0] : incoming[i];
                for (int j = 0; j + 1 < cells; ++j) ni[j] = oi[j] - c * (oi[j + 1] - oi[j]);
                ni[cells - 1] = oi[cells - 1] - c * (ghost - oi[cells - 1]);
            }
        }

        if (src) {
            for (int j = 0; j < cells; ++j) {
                for (int i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (int kk = 0; kk < n; ++kk)
                        s += (*src)(i, kk) * old[kk * static_cast<std::size_t>(cells) + j];
                    nxt[i * static_cast<std::size_t>(cells) + j] -= dt_step * s;
                }
            }
        }

#ifndef NDEBUG
        if (!src) {
            // monotone update: each component stays within the hull of its old
            // values and the inflow
            for (int i = 0; i < n; ++i) {
                double bound = cfg.periodic ? 0.0 : std::abs(incoming[i]);
                double peak = 0.0;
                for (int j = 0; j < cells; ++j) {
                    bound = std::max(bound, std::abs(old[i * static_cast<std::size_t>(cells) + j]));
                    peak = std::max(peak, std::abs(nxt[i * static_cast<std::size_t>(cells) + j]));
                }
                assert(peak <= bound * (1.0 + 1e-12) + 1e-300);
            }
        }
#endif

        for (double x : nxt) {
            if (!(std::abs(x) <= kBlowup)) {
                res.blew_up = true;
                break;
            }
        }
        std::swap(g.a, g.b);

        if (step % cfg.sample_stride == 0 || step == total_steps || res.blew_up) {
            res.times.push_back(t_now);
            res.norms.push_back(l2_deviation(rf, g.a, cells, cfg.dx));
        }
    }

    res.final_state = Matrix(n, cells);
    {
        std::vector<double> r(n), y(n);
        for (int j = 0; j < cells; ++j) {
            for (int i = 0; i < n; ++i) r[i] = g.a[i * static_cast<std::size_t>(cells) + j];
            y = rf.transform.matvec(r);
            for (int i = 0; i < n; ++i) res.final_state(i, j) = y[i] + cfg.equilibrium[i];
        }
    }

    try {
        res.decay = fit_decay(res.times, res.norms, 0.3 * cfg.t_end, cfg.t_end);
    } catch (const InsufficientData&) {
        res.decay.reset();
    }
    return res;
}

} // namespace hypstab
