#include "hypstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <utility>

#include "hypstab/errors.hpp"
#include "hypstab/optimize.hpp"

namespace hypstab {

namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

struct Balanced {
    std::vector<double> d; // scaling, d[0] = 1; balanced = D K D^-1
    Matrix m;
};

// Osborne sweeps equalizing off-diagonal row and column 2-norms. Diagonal
// similarity, so both indices are unchanged; it keeps the later searches
// well conditioned and makes them insensitive to diagonal rescaling of the
// input.
Balanced osborne_balance(const Matrix& k) {
    const int n = k.rows();
    Balanced out{std::vector<double>(n, 1.0), k};
    Matrix& m = out.m;
    for (int sweep = 0; sweep < 25; ++sweep) {
        double drift = 0.0;
        for (int i = 0; i < n; ++i) {
            double r2 = 0.0, c2 = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                r2 += m(i, j) * m(i, j);
                c2 += m(j, i) * m(j, i);
            }
            if (r2 == 0.0 || c2 == 0.0) continue;
            // f = sqrt(row_norm / col_norm); dividing row i and multiplying
            // column i by f equalizes them, which is d_i -> d_i / f in the
            // D K D^-1 convention
            double f = std::sqrt(std::sqrt(r2 / c2));
            f = std::clamp(f, out.d[i] * 1e-8, out.d[i] * 1e8);
            if (f <= 0.0 || !std::isfinite(f)) continue;
            out.d[i] /= f;
            for (int j = 0; j < n; ++j) {
                m(i, j) /= f;
                m(j, i) *= f;
            }
            m(i, i) = k(i, i);
            drift = std::max(drift, std::abs(f - 1.0));
        }
        if (drift < 1e-12) break;
    }
    if (n > 0 && out.d[0] != 1.0) {
        const double d0 = out.d[0];
        for (double& x : out.d) x /= d0;
    }
    return out;
}

double weighted_norm(const Matrix& k, const std::vector<double>& d) {
    Matrix b = k;
    const int n = k.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = k(i, j) * d[i] / d[j];
    return operator_norm_2(b);
}

// Plain power iteration can stall when distinct eigenvalues share the top
// modulus. A random scalar shift keeps the eigenvectors and breaks the tie;
// the Rayleigh quotient is then taken on the unshifted matrix.
double spectral_radius_robust(const CMatrix& m) {
    try {
        return spectral_radius(m);
    } catch (const NonConvergence&) {
    }
    const int n = m.rows;
    double scale = 0.0;
    for (const cplx& x : m.data) scale = std::max(scale, std::abs(x));
    std::mt19937_64 rng(0xd1b54a32d192ed03ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> rad(0.35, 1.15);
    double best = 0.0;
    for (int t = 0; t < 8; ++t) {
        const cplx c = std::polar(scale * rad(rng), ang(rng));
        CMatrix b = m;
        for (int i = 0; i < n; ++i) b(i, i) -= c;
        std::vector<cplx> start(n);
        for (cplx& x : start) x = cplx(unit(rng), unit(rng));
        auto pi = detail::power_iterate(b, std::move(start), 3000, 1e-12);
        if (pi.decayed || pi.vector.empty()) continue;
        cplx lam = 0.0;
        for (int i = 0; i < n; ++i) {
            cplx wi = 0.0;
            for (int j = 0; j < n; ++j) wi += m(i, j) * pi.vector[j];
            lam += std::conj(pi.vector[i]) * wi;
        }
        best = std::max(best, std::abs(lam));
    }
    return best;
}

std::vector<double> full_angles(const std::vector<double>& free) {
    std::vector<double> th(free.size() + 1, 0.0);
    std::copy(free.begin(), free.end(), th.begin() + 1);
    return th;
}

// Cheap score used to rank grid points and random starts; the winners are
// re-evaluated exactly. theta[0] is pinned to 0.
double coarse_phase_radius(const Matrix& kb, const std::vector<double>& free) {
    const int n = kb.rows();
    if (n == 2) {
        const cplx ph = std::polar(1.0, free[0]);
        const cplx tr = kb(0, 0) + ph * kb(1, 1);
        const cplx det = ph * (kb(0, 0) * kb(1, 1) - kb(0, 1) * kb(1, 0));
        const cplx root = std::sqrt(tr * tr - 4.0 * det);
        return 0.5 * std::max(std::abs(tr + root), std::abs(tr - root));
    }
    std::vector<cplx> ph(n, cplx(1.0, 0.0));
    for (int i = 1; i < n; ++i) ph[i] = std::polar(1.0, free[i - 1]);
    std::vector<cplx> v(n), w(n);
    for (int j = 0; j < n; ++j) v[j] = cplx(std::cos(0.7 * j + 0.4), std::sin(1.1 * j + 0.2));
    double nv = 0.0;
    for (const cplx& x : v) nv += std::norm(x);
    nv = std::sqrt(nv);
    for (cplx& x : v) x /= nv;
    cplx lam = 0.0;
    for (int it = 0; it < 24; ++it) {
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = 0; j < n; ++j) s += kb(i, j) * v[j];
            w[i] = ph[i] * s;
        }
        double nw = 0.0;
        for (const cplx& x : w) nw += std::norm(x);
        nw = std::sqrt(nw);
        if (nw <= 1e-140) return 0.0;
        lam = 0.0;
        for (int i = 0; i < n; ++i) lam += std::conj(v[i]) * w[i];
        for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    return std::abs(lam);
}

struct Candidate {
    double score;
    std::vector<double> free;
};

void keep_top(std::vector<Candidate>& top, std::size_t cap, double score,
              const std::vector<double>& free) {
    if (top.size() < cap) {
        top.push_back({score, free});
    } else if (score > top.back().score) {
        top.back() = {score, free};
    } else {
        return;
    }
    std::stable_sort(top.begin(), top.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
}

double sum_abs_products(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] * v[i]);
    return s;
}

// Q = S^T P + P S for diagonal P.
Matrix lyapunov_form(const Matrix& s, const std::vector<double>& p) {
    const int n = s.rows();
    Matrix q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = s(j, i) * p[j] + p[i] * s(i, j);
    return q;
}

double lyapunov_min_eig(const Matrix& s, const std::vector<double>& p) {
    return min_symmetric_eigenvalue(lyapunov_form(s, p));
}

constexpr double kPsdTol = -1e-10;

// For n = 2 and P = diag(1, r), det(S^T P + P S) is quadratic in r:
//   -s10^2 r^2 + (4 s00 s11 - 2 s10 s01) r - s01^2.
// Its vertex and roots pin the feasible ratio set analytically; the vertex is
// exact to rounding even when the feasible set degenerates to a single point,
// where any scan-based localization carries noise of order 1e-8.
std::vector<std::vector<double>> analytic_ratio_candidates(const Matrix& s) {
    std::vector<std::vector<double>> out;
    if (s.rows() != 2 || s(1, 0) == 0.0) return out;
    const double a = -s(1, 0) * s(1, 0);
    const double b = 4.0 * s(0, 0) * s(1, 1) - 2.0 * s(1, 0) * s(0, 1);
    const double c = -s(0, 1) * s(0, 1);
    auto push = [&](double r) {
        if (std::isfinite(r) && r > 0.0) out.push_back({1.0, r});
    };
    push(-b / (2.0 * a));
    const double disc = b * b - 4.0 * a * c;
    if (disc > 1e-12 * (b * b + std::abs(4.0 * a * c))) {
        const double sq = std::sqrt(disc);
        push((-b + sq) / (2.0 * a));
        push((-b - sq) / (2.0 * a));
    }
    return out;
}

// Feasible diagonal weights found by the find_p scan, in scan order.
std::vector<std::vector<double>> feasible_weights(const Matrix& s, const SearchConfig& cfg) {
    const int n = s.rows();
    std::vector<std::vector<double>> out;
    auto admit = [&](std::vector<double> p) {
        if (lyapunov_min_eig(s, p) >= kPsdTol) out.push_back(std::move(p));
    };
    if (n == 1) {
        admit({1.0});
        return out;
    }
    if (n == 2) {
        admit({1.0, 1.0});
        const int grid = 400;
        int best_k = -1;
        double best_g = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < grid; ++k) {
            const double x = -4.0 + 8.0 * k / (grid - 1);
            const double r = std::pow(10.0, x);
            const double g = lyapunov_min_eig(s, {1.0, r});
            if (g >= kPsdTol) out.push_back({1.0, r});
            if (g > best_g) {
                best_g = g;
                best_k = k;
            }
        }
        // the min eigenvalue is concave in the ratio, so the peak sits within
        // one grid step of the best sample; refine it even when grid points
        // already passed, the peak usually certifies a smaller norm
        const double step = 8.0 / (grid - 1);
        const double xc = -4.0 + 8.0 * best_k / (grid - 1);
        const double lo = std::max(-4.0, xc - step);
        const double hi = std::min(4.0, xc + step);
        auto peak = golden_section_max(
            [&](double x) { return lyapunov_min_eig(s, {1.0, std::pow(10.0, x)}); }, lo, hi, 120);
        admit({1.0, std::pow(10.0, peak.x)});
        return out;
    }
    Rng rng(cfg.seed);
    admit(std::vector<double>(n, 1.0));
    std::vector<double> best_p;
    double best_g = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < cfg.find_p_samples; ++t) {
        std::vector<double> p(n, 1.0);
        for (int i = 1; i < n; ++i) p[i] = std::pow(10.0, rng.uniform(-4.0, 4.0));
        const double g = lyapunov_min_eig(s, p);
        if (g >= kPsdTol) out.push_back(p);
        if (g > best_g) {
            best_g = g;
            best_p = p;
        }
    }
    if (!best_p.empty()) {
        std::vector<double> x0(n - 1);
        for (int i = 1; i < n; ++i) x0[i - 1] = std::log10(best_p[i]);
        NelderMeadOptions opt;
        opt.max_iters = 400;
        opt.initial_step = 0.3;
        auto res = nelder_mead(
            [&](const std::vector<double>& x) {
                std::vector<double> p(n, 1.0);
                for (int i = 1; i < n; ++i) p[i] = std::pow(10.0, x[i - 1]);
                const double g = lyapunov_min_eig(s, p);
                const double viol = std::max(0.0, -g);
                return viol * viol;
            },
            x0, opt);
        std::vector<double> p(n, 1.0);
        for (int i = 1; i < n; ++i) p[i] = std::pow(10.0, res.x[i - 1]);
        admit(std::move(p));
    }
    return out;
}

} // namespace

double rho0_numeric(const Matrix& k, const SearchConfig& cfg) {
    if (!k.square()) throw InvalidValue("rho0 requires a square matrix");
    const int n = k.rows();
    if (n == 0) return 0.0;
    const Balanced bal = osborne_balance(k);
    const Matrix& kb = bal.m;
    if (n == 1) return std::abs(kb(0, 0));

    const int free = n - 1;
    auto exact = [&](const std::vector<double>& tf) {
        return spectral_radius_robust(scale_rows_by_phases(kb, full_angles(tf)));
    };

    std::vector<Candidate> top;
    const std::size_t cap = static_cast<std::size_t>(std::max(1, cfg.rho0_refine));
    double nm_step;
    if (n <= 4) {
        const int g = std::max(2, cfg.rho0_grid);
        nm_step = kPi / g;
        std::vector<int> idx(free, 0);
        std::vector<double> tf(free, 0.0);
        for (;;) {
            for (int i = 0; i < free; ++i) tf[i] = 2.0 * kPi * idx[i] / g;
            keep_top(top, cap, coarse_phase_radius(kb, tf), tf);
            int carry = free - 1;
            while (carry >= 0 && ++idx[carry] == g) idx[carry--] = 0;
            if (carry < 0) break;
        }
    } else {
        nm_step = 0.35;
        Rng rng(cfg.seed);
        for (int t = 0; t < cfg.rho0_starts; ++t) {
            std::vector<double> tf(free);
            for (double& x : tf) x = rng.uniform(0.0, 2.0 * kPi);
            keep_top(top, cap, coarse_phase_radius(kb, tf), tf);
        }
    }

    double best = 0.0;
    NelderMeadOptions opt;
    opt.max_iters = 250;
    opt.initial_step = nm_step;
    opt.f_tol = 1e-13;
    opt.x_tol = 1e-11;
    for (const Candidate& c : top) {
        best = std::max(best, exact(c.free));
        auto res = nelder_mead([&](const std::vector<double>& x) { return -exact(x); }, c.free, opt);
        best = std::max(best, -res.f);
    }
    return best;
}

Rho1Numeric rho1_numeric(const Matrix& k, const SearchConfig& cfg) {
    if (!k.square()) throw InvalidValue("rho1 requires a square matrix");
    const int n = k.rows();
    if (n == 0) return {0.0, {}};
    if (n == 1) return {std::abs(k(0, 0)), {1.0}};
    const Balanced bal = osborne_balance(k);
    const Matrix& kb = bal.m;

    auto objective = [&](const std::vector<double>& s) {
        std::vector<double> d(n, 1.0);
        for (int i = 1; i < n; ++i) d[i] = std::exp(s[i - 1]);
        return weighted_norm(kb, d);
    };

    std::vector<double> best_s(n - 1, 0.0);
    double best_val = objective(best_s);
    NelderMeadOptions opt;
    opt.max_iters = 300;
    opt.initial_step = 0.5;
    Rng rng(cfg.seed);
    for (int t = 0; t <= cfg.rho1_starts; ++t) {
        std::vector<double> s0(n - 1, 0.0);
        if (t > 0)
            for (double& x : s0) x = rng.uniform(-3.0, 3.0);
        auto res = nelder_mead(objective, s0, opt);
        if (res.f < best_val) {
            best_val = res.f;
            best_s = res.x;
        }
    }

    // compose with the balancing scaling and renormalize, then recompute on
    // the original matrix so the reported value matches the returned delta
    // exactly
    std::vector<double> delta(n, 1.0);
    for (int i = 1; i < n; ++i) delta[i] = std::exp(best_s[i - 1]) * bal.d[i];
    const double d0 = delta[0];
    for (double& x : delta) x /= d0;
    return {weighted_norm(k, delta), delta};
}

IndexEstimate rho0(const CouplingMatrix& k, const SearchConfig& cfg) {
    switch (k.structure) {
    case Structure::rank_one:
        return {sum_abs_products(k.u, k.v), Method::analytic_rank_one};
    case Structure::anti_diagonal_2x2:
        return {std::sqrt(std::abs(k.anti_a * k.anti_b)), Method::analytic_antidiag};
    case Structure::general:
    default:
        return {rho0_numeric(k.k, cfg), Method::numeric};
    }
}

IndexEstimate rho1(const CouplingMatrix& k, const SearchConfig& cfg) {
    switch (k.structure) {
    case Structure::rank_one:
        return {sum_abs_products(k.u, k.v), Method::analytic_rank_one};
    case Structure::anti_diagonal_2x2:
        return {std::sqrt(std::abs(k.anti_a * k.anti_b)), Method::analytic_antidiag};
    case Structure::general:
    default:
        return {rho1_numeric(k.k, cfg).value, Method::numeric};
    }
}

StabilityReport verdict_conservation(const CouplingMatrix& k, const SearchConfig& cfg) {
    StabilityReport rep;
    const IndexEstimate r0 = rho0(k, cfg);
    const IndexEstimate r1 = rho1(k, cfg);
    rep.rho0 = r0.value;
    rep.rho1 = r1.value;
    rep.method0 = r0.method;
    rep.method1 = r1.method;
    if (std::abs(rep.rho0 - 1.0) <= cfg.verdict_band)
        rep.verdict_robust = RobustVerdict::boundary_case;
    else if (rep.rho0 < 1.0)
        rep.verdict_robust = RobustVerdict::robust_stable;
    else
        rep.verdict_robust = RobustVerdict::not_robust_stable;
    rep.verdict_exponential =
        rep.rho1 < 1.0 ? ExponentialVerdict::stable : ExponentialVerdict::inconclusive;
    return rep;
}

std::optional<std::vector<double>> find_p(const Matrix& s, const SearchConfig& cfg) {
    if (!s.square()) throw InvalidValue("find_p requires a square matrix");
    if (s.rows() == 0) return std::vector<double>{};
    auto feas = feasible_weights(s, cfg);
    if (feas.empty()) return std::nullopt;
    return feas.front();
}

std::optional<BalanceCertificate> lyapunov_certificate(const Matrix& k, const Matrix& s,
                                                       const std::vector<double>& lambda,
                                                       const SearchConfig& cfg) {
    const int n = k.rows();
    if (!k.square() || !s.square() || s.rows() != n ||
        static_cast<int>(lambda.size()) != n)
        throw InvalidValue("coupling, source and speeds must share one dimension");
    for (double l : lambda)
        if (l == 0.0 || !std::isfinite(l)) throw InvalidValue("zero characteristic speed");
    // Analytic ratios go first: when the feasible set is one point they equal
    // the scan peak up to its noise, and first-wins keeps the exact value.
    auto candidates = analytic_ratio_candidates(s);
    std::erase_if(candidates,
                  [&](const std::vector<double>& p) { return lyapunov_min_eig(s, p) < kPsdTol; });
    auto feas = feasible_weights(s, cfg);
    candidates.insert(candidates.end(), feas.begin(), feas.end());
    std::optional<BalanceCertificate> best;
    for (const auto& p : candidates) {
        std::vector<double> delta(n);
        for (int i = 0; i < n; ++i) delta[i] = std::sqrt(p[i] * std::abs(lambda[i]));
        const double norm = weighted_norm(k, delta);
        if (!best || norm < best->norm * (1.0 - 1e-8))
            best = BalanceCertificate{p, delta, lyapunov_min_eig(s, p), norm};
    }
    return best;
}

StabilityReport verdict_balance(const CouplingMatrix& k, const Matrix& s,
                                const std::vector<double>& lambda, const SearchConfig& cfg) {
    StabilityReport rep = verdict_conservation(k, cfg);
    auto cert = lyapunov_certificate(k.k, s, lambda, cfg);
    const bool stable = cert && cert->norm < 1.0 - 1e-9;
    rep.verdict_exponential =
        stable ? ExponentialVerdict::stable : ExponentialVerdict::inconclusive;
    rep.balance_certificate = stable ? cert : std::nullopt;
    return rep;
}

} // namespace hypstab
