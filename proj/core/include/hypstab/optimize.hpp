#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace hypstab {

// All stochastic search in the library draws from this; a fixed seed makes
// every run byte-reproducible.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine); }
};

struct NelderMeadOptions {
    int max_iters = 400;
    double f_tol = 1e-12;
    double x_tol = 1e-10;
    double initial_step = 0.25;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
};

// Minimizes f. Zero-dimensional input returns f(x0) immediately.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& opts = {});

struct ScalarMax {
    double x = 0.0;
    double f = 0.0;
};

// Maximizes a unimodal f on [lo, hi] by golden-section search.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             int iters = 90);

} // namespace hypstab
