#include "hypstab/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "hypstab/errors.hpp"

namespace hypstab {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& opts) {
    const int d = static_cast<int>(x0.size());
    if (d == 0) return {x0, f(x0), 0};

    const double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;

    std::vector<std::vector<double>> xs(d + 1, x0);
    for (int i = 0; i < d; ++i) xs[i + 1][i] += opts.initial_step;
    std::vector<double> fs(d + 1);
    for (int i = 0; i <= d; ++i) fs[i] = f(xs[i]);

    auto order = [&]() {
        std::vector<int> idx(d + 1);
        for (int i = 0; i <= d; ++i) idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<std::vector<double>> nx(d + 1);
        std::vector<double> nf(d + 1);
        for (int i = 0; i <= d; ++i) {
            nx[i] = std::move(xs[idx[i]]);
            nf[i] = fs[idx[i]];
        }
        xs = std::move(nx);
        fs = std::move(nf);
    };

    int it = 0;
    for (; it < opts.max_iters; ++it) {
        order();

        double fspread = 0.0, xspread = 0.0;
        for (int i = 1; i <= d; ++i) {
            fspread = std::max(fspread, std::abs(fs[i] - fs[0]));
            double dist = 0.0;
            for (int j = 0; j < d; ++j) {
                const double dd = xs[i][j] - xs[0][j];
                dist += dd * dd;
            }
            xspread = std::max(xspread, std::sqrt(dist));
        }
        if (fspread <= opts.f_tol * (std::abs(fs[0]) + opts.f_tol) && xspread <= opts.x_tol)
            break;

        std::vector<double> centroid(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) centroid[j] += xs[i][j] / d;

        auto affine = [&](double coef) {
            std::vector<double> p(d);
            for (int j = 0; j < d; ++j) p[j] = centroid[j] + coef * (centroid[j] - xs[d][j]);
            return p;
        };

        std::vector<double> xr = affine(alpha);
        const double fr = f(xr);
        if (fr < fs[0]) {
            std::vector<double> xe = affine(gamma);
            const double fe = f(xe);
            if (fe < fr) {
                xs[d] = std::move(xe);
                fs[d] = fe;
            } else {
                xs[d] = std::move(xr);
                fs[d] = fr;
            }
        } else if (fr < fs[d - 1]) {
            xs[d] = std::move(xr);
            fs[d] = fr;
        } else {
            const bool outside = fr < fs[d];
            std::vector<double> xc(d);
            if (outside) {
                for (int j = 0; j < d; ++j) xc[j] = centroid[j] + beta * (xr[j] - centroid[j]);
            } else {
                for (int j = 0; j < d; ++j) xc[j] = centroid[j] - beta * (centroid[j] - xs[d][j]);
            }
            const double fc = f(xc);
            if (fc < std::min(fr, fs[d])) {
                xs[d] = std::move(xc);
                fs[d] = fc;
            } else {
                for (int i = 1; i <= d; ++i) {
                    for (int j = 0; j < d; ++j)
                        xs[i][j] = xs[0][j] + sigma * (xs[i][j] - xs[0][j]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    order();
    return {xs[0], fs[0], it};
}

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             int iters) {
    if (!(lo <= hi)) throw InvalidValue("golden_section_max: empty interval");
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > 0.0; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

} // namespace hypstab
