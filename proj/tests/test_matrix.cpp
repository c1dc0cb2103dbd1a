#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "hypstab/matrix.hpp"

using namespace hypstab;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

// orthogonal from a product of random plane rotations
Matrix random_rotation(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    Matrix q = Matrix::identity(n);
    for (int p = 0; p < n - 1; ++p)
        for (int r = p + 1; r < n; ++r) {
            const double a = ang(rng);
            const double c = std::cos(a), s = std::sin(a);
            Matrix g = Matrix::identity(n);
            g(p, p) = c;
            g(p, r) = -s;
            g(r, p) = s;
            g(r, r) = c;
            q = q * g;
        }
    return q;
}

// cond(T) <= max(sv)/min(sv) stays small by construction
Matrix random_well_conditioned(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> sv(0.6, 1.8);
    std::vector<double> d(n);
    for (double& x : d) x = sv(rng);
    return random_rotation(n, rng) * Matrix::diagonal(d) * random_rotation(n, rng);
}

std::vector<double> distinct_lambdas(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> jit(0.0, 0.4);
    std::bernoulli_distribution flip(0.5);
    std::vector<double> l(n);
    for (int i = 0; i < n; ++i) l[i] = (flip(rng) ? -1.0 : 1.0) * (0.5 + i + jit(rng));
    return l;
}

} // namespace

TEST_SUITE("matrix") {

TEST_CASE("construction validates shape and finiteness") {
    CHECK_THROWS_AS(Matrix(2, 2, {1.0, 2.0, 3.0}), InvalidValue);
    CHECK_THROWS_AS(Matrix(1, 2, {1.0, std::nan("")}), InvalidValue);
    CHECK_THROWS_AS(Matrix(1, 1, {INFINITY}), InvalidValue);
    const Matrix m{{1.0, 2.0}, {3.0, 4.0}};
    CHECK(m(1, 0) == 3.0);
    CHECK(m.transposed()(0, 1) == 3.0);
}

TEST_CASE("block extraction and insertion round-trip") {
    Matrix m(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = 10.0 * i + j;
    const Matrix b = m.block(1, 1, 2, 3);
    CHECK(b(0, 0) == 11.0);
    CHECK(b(1, 2) == 23.0);
    Matrix z(3, 4);
    z.set_block(1, 1, b);
    CHECK(z(2, 3) == 23.0);
    CHECK(z(0, 0) == 0.0);
    CHECK_THROWS_AS(m.block(2, 0, 2, 1), InvalidValue);
    const Matrix empty = m.block(0, 0, 0, 2);
    CHECK(empty.rows() == 0);
}

TEST_CASE("invert known 2x2 values") {
    const Matrix id = Matrix::identity(2);
    CHECK(max_abs_diff(invert(id), id) == 0.0);

    // columns scale of [[1,-1],[1,2]] by 1/3
    const Matrix t{{1.0 / 3.0, -1.0 / 3.0}, {1.0 / 3.0, 2.0 / 3.0}};
    const Matrix ti = invert(t);
    const Matrix expect{{2.0, 1.0}, {-1.0, 1.0}};
    CHECK(max_abs_diff(ti, expect) <= 1e-12);
    CHECK(max_abs_diff(t * ti, Matrix::identity(2)) <= 1e-10);
}

TEST_CASE("invert rejects rank-deficient input") {
    CHECK_THROWS_AS(invert(Matrix{{1.0, 1.0}, {1.0, 1.0}}), SingularMatrix);
    CHECK_THROWS_AS(invert(Matrix{{0.0, 0.0}, {0.0, 0.0}}), SingularMatrix);
}

TEST_CASE("invert recovers identity on random well-conditioned matrices") {
    std::mt19937_64 rng(101);
    for (int n = 2; n <= 6; ++n)
        for (int trial = 0; trial < 100; ++trial) {
            const Matrix a = random_well_conditioned(n, rng);
            CHECK(max_abs_diff(a * invert(a), Matrix::identity(n)) <= 1e-9);
        }
}

TEST_CASE("determinant matches pivots and eigenvalue product") {
    const Matrix t{{1.0 / 3.0, -1.0 / 3.0}, {1.0 / 3.0, 2.0 / 3.0}};
    CHECK(std::abs(determinant(t) - 1.0 / 3.0) <= 1e-14);
    CHECK(determinant(Matrix{{1.0, 1.0}, {1.0, 1.0}}) == 0.0);

    std::mt19937_64 rng(7);
    const Matrix a = random_well_conditioned(4, rng);
    const std::vector<double> lam = {3.0, 1.0, -1.5, -4.0};
    const Matrix m = a * Matrix::diagonal(lam) * invert(a);
    double prod = 1.0;
    for (double l : lam) prod *= l;
    CHECK(std::abs(determinant(m) - prod) <= 1e-8 * std::abs(prod));
}

TEST_CASE("eig_real flow model flux matrix") {
    // flux [[0,1],[l1*l2, l1-l2]] with speeds 1 and 2
    const Matrix m{{0.0, 1.0}, {2.0, -1.0}};
    const EigenDecomposition e = eig_real(m);
    REQUIRE(e.values.size() == 2);
    CHECK(std::abs(e.values[0] - 1.0) <= 1e-12);
    CHECK(std::abs(e.values[1] + 2.0) <= 1e-12);
    // normalized eigenvectors: (1,1) and (-1/2,1)
    CHECK(std::abs(e.vectors(0, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(e.vectors(1, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(e.vectors(0, 1) + 0.5) <= 1e-12);
    CHECK(std::abs(e.vectors(1, 1) - 1.0) <= 1e-12);
}

TEST_CASE("eig_real diagonal input") {
    const EigenDecomposition e = eig_real(Matrix{{3.0, 0.0}, {0.0, -1.0}});
    CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.vectors(0, 0) == 1.0);
    CHECK(e.vectors(1, 0) == 0.0);
    CHECK(e.vectors(0, 1) == 0.0);
    CHECK(e.vectors(1, 1) == 1.0);
}

TEST_CASE("eig_real shallow-water flux matrix") {
    const double h = 2.0, v = 3.0, g = 9.81;
    const Matrix m{{v, h}, {g, v}};
    const EigenDecomposition e = eig_real(m);
    const double c = std::sqrt(g * h);
    CHECK(std::abs(e.values[0] - (v + c)) <= 1e-12);
    CHECK(std::abs(e.values[1] - (v - c)) <= 1e-12);
    // eigenvectors proportional to (sqrt(h/g), 1) and (-sqrt(h/g), 1)
    const double w = std::sqrt(h / g);
    CHECK(std::abs(e.vectors(0, 0) - w) <= 1e-12);
    CHECK(std::abs(e.vectors(1, 0) - 1.0) <= 1e-12);
    CHECK(std::abs(e.vectors(0, 1) + w) <= 1e-12);
    CHECK(std::abs(e.vectors(1, 1) - 1.0) <= 1e-12);
}

TEST_CASE("eig_real three by three with frozen spectrum") {
    const Matrix t{{1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}};
    const std::vector<double> lam = {3.0, 1.0, -2.0};
    const Matrix m = t * Matrix::diagonal(lam) * invert(t);
    const EigenDecomposition e = eig_real(m);
    REQUIRE(e.values.size() == 3);
    CHECK(std::abs(e.values[0] - 3.0) <= 1e-9);
    CHECK(std::abs(e.values[1] - 1.0) <= 1e-9);
    CHECK(std::abs(e.values[2] + 2.0) <= 1e-9);
}

TEST_CASE("eig_real reconstruction on random diagonalizable matrices") {
    std::mt19937_64 rng(202);
    for (int n = 2; n <= 6; ++n)
        for (int trial = 0; trial < 40; ++trial) {
            const Matrix t = random_well_conditioned(n, rng);
            std::vector<double> lam = distinct_lambdas(n, rng);
            const Matrix m = t * Matrix::diagonal(lam) * invert(t);
            const EigenDecomposition e = eig_real(m);

            std::sort(lam.begin(), lam.end(), std::greater<double>());
            for (int i = 0; i < n; ++i) CHECK(std::abs(e.values[i] - lam[i]) <= 1e-7);
            for (int i = 0; i + 1 < n; ++i) CHECK(e.values[i] > e.values[i + 1]);

            const Matrix rec =
                e.vectors * Matrix::diagonal(e.values) * invert(e.vectors);
            CHECK(max_abs_diff(rec, m) <= 1e-8);

            // normalization: every column has max-magnitude entry exactly +1
            for (int j = 0; j < n; ++j) {
                double mx = 0.0;
                for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(e.vectors(i, j)));
                CHECK(mx == 1.0);
            }
        }
}

TEST_CASE("eig_real rejects complex, zero, and repeated spectra") {
    CHECK_THROWS_AS(eig_real(Matrix{{0.0, -1.0}, {1.0, 0.0}}), ComplexSpectrum);
    CHECK_THROWS_AS(eig_real(Matrix{{1.0, 0.0}, {0.0, 0.0}}), ZeroEigenvalue);
    CHECK_THROWS_AS(eig_real(Matrix{{1.0, 1.0}, {0.0, 1.0}}), NotDiagonalizable);
    CHECK_THROWS_AS(eig_real(Matrix{{2.0, 0.0}, {0.0, 2.0}}), NotDiagonalizable);
    // 3x3 with a complex pair: block companion of (x^2+1) plus a real mode
    const Matrix c3{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 2.0}};
    CHECK_THROWS_AS(eig_real(c3), ComplexSpectrum);
    const Matrix z3{{1.0, 5.0, 0.0}, {0.0, 2.0, 5.0}, {0.0, 0.0, 1e-12}};
    CHECK_THROWS_AS(eig_real(z3), ZeroEigenvalue);
}

TEST_CASE("operator_norm_2 known values") {
    CHECK(std::abs(operator_norm_2(Matrix::identity(3)) - 1.0) <= 1e-12);
    CHECK(std::abs(operator_norm_2(Matrix{{2.0, 0.0}, {0.0, -3.0}}) - 3.0) <= 1e-12);
    CHECK(std::abs(operator_norm_2(Matrix{{0.0, 1.0}, {4.0, 0.0}}) - 4.0) <= 1e-12);
    // rectangular: gram matrix [[2,1],[1,2]], largest eigenvalue 3
    const Matrix r{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    CHECK(std::abs(operator_norm_2(r) - std::sqrt(3.0)) <= 1e-12);
}

TEST_CASE("operator_norm_2 is orthogonally invariant") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const Matrix m = random_well_conditioned(n, rng);
        const Matrix q = random_rotation(n, rng);
        CHECK(std::abs(operator_norm_2(q * m) - operator_norm_2(m)) <= 1e-9);
    }
}

TEST_CASE("eig_symmetric reconstructs and sorts ascending") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 4);
        Matrix a = random_well_conditioned(n, rng);
        a = a + a.transposed();
        const SymmetricEigen se = eig_symmetric(a);
        for (int i = 0; i + 1 < n; ++i) CHECK(se.values[i] <= se.values[i + 1]);
        const Matrix rec =
            se.vectors * Matrix::diagonal(se.values) * se.vectors.transposed();
        CHECK(max_abs_diff(rec, a) <= 1e-10);
    }
}

TEST_CASE("min_symmetric_eigenvalue known values") {
    CHECK(std::abs(min_symmetric_eigenvalue(Matrix::identity(4)) - 1.0) <= 1e-12);
    CHECK(std::abs(min_symmetric_eigenvalue(Matrix(2, 2))) <= 1e-15);

    // rank-one 2*(g,d)^T(g,d) built from shallow-water friction coefficients
    const double g = 0.0992040, d = 0.2007961;
    const Matrix s{{g, d}, {g, d}};
    const Matrix p = Matrix::diagonal({g, d});
    const Matrix q = s.transposed() * p + p * s;
    CHECK(std::abs(min_symmetric_eigenvalue(q)) <= 1e-12);
    CHECK_THROWS_AS(min_symmetric_eigenvalue(Matrix{{0.0, 1.0}, {0.0, 0.0}}),
                    NotSymmetric);
}

TEST_CASE("spectral_radius closed-form cases") {
    CHECK(spectral_radius(to_complex(Matrix(3, 3))) == 0.0);
    CHECK(std::abs(spectral_radius(to_complex(Matrix{{0.0, 1.0}, {4.0, 0.0}})) - 2.0) <=
          1e-12);
    CHECK(std::abs(spectral_radius(to_complex(Matrix{{2.0, 0.0}, {0.0, -5.0}})) - 5.0) <=
          1e-12);
}

TEST_CASE("spectral_radius of phase-scaled rank-one matrix") {
    using cd = std::complex<double>;
    SUBCASE("n = 2 closed form") {
        const std::vector<double> u = {1.0, 2.0}, v = {3.0, -1.0};
        Matrix k(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) k(i, j) = u[i] * v[j];
        const std::vector<double> theta = {0.7, -0.3};
        const cd expect = v[0] * u[0] * std::polar(1.0, theta[0]) +
                          v[1] * u[1] * std::polar(1.0, theta[1]);
        CHECK(std::abs(spectral_radius(scale_rows_by_phases(k, theta)) -
                       std::abs(expect)) <= 1e-10);
    }
    SUBCASE("n = 3 power iteration") {
        const std::vector<double> u = {1.0, -2.0, 0.5}, v = {0.3, 1.0, 2.0};
        Matrix k(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) k(i, j) = u[i] * v[j];
        const std::vector<double> theta = {0.2, -1.1, 0.4};
        cd expect = 0.0;
        for (int i = 0; i < 3; ++i) expect += v[i] * u[i] * std::polar(1.0, theta[i]);
        CHECK(std::abs(spectral_radius(scale_rows_by_phases(k, theta)) -
                       std::abs(expect)) <= 1e-9);
    }
}

TEST_CASE("spectral_radius via power iteration on complex diagonal") {
    CMatrix m(3, 3);
    m(0, 0) = {1.0, 1.0};
    m(1, 1) = {0.5, 0.0};
    m(2, 2) = {0.0, -2.0};
    CHECK(std::abs(spectral_radius(m) - 2.0) <= 1e-8);
}

TEST_CASE("spectral_radius is invariant under diagonal similarity") {
    std::mt19937_64 rng(505);
    std::uniform_real_distribution<double> logd(-1.5, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 2);
        // spread eigenvalue moduli so power iteration has a gap
        std::vector<double> lam = distinct_lambdas(n, rng);
        const Matrix t = random_well_conditioned(n, rng);
        const Matrix m = t * Matrix::diagonal(lam) * invert(t);
        std::vector<double> d(n), dinv(n);
        for (int i = 0; i < n; ++i) {
            d[i] = std::exp(logd(rng));
            dinv[i] = 1.0 / d[i];
        }
        const Matrix sim = Matrix::diagonal(d) * m * Matrix::diagonal(dinv);
        const double r1 = spectral_radius(to_complex(m));
        const double r2 = spectral_radius(to_complex(sim));
        CHECK(std::abs(r1 - r2) <= 1e-8 * std::max(1.0, r1));
    }
}

} // TEST_SUITE
