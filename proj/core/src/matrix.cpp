#include "hypstab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace hypstab {

namespace {

void check_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw InvalidValue("matrix entry is not finite");
}

std::string with_value(const char* what, double value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s (%.6g)", what, value);
    return buf;
}

double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

} // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw InvalidValue("negative matrix dimension");
    data_.assign(static_cast<size_t>(rows) * cols, 0.0);
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw InvalidValue("negative matrix dimension");
    if (data_.size() != static_cast<size_t>(rows) * cols)
        throw InvalidValue("entry count does not match dimensions");
    check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_) throw InvalidValue("ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    check_finite(data_);
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    check_finite(m.data_);
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || nr < 0 || nc < 0 || r0 + nr > rows_ || c0 + nc > cols_)
        throw InvalidValue("block out of range");
    Matrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(int r0, int c0, const Matrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw InvalidValue("block out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> Matrix::matvec(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw InvalidValue("matvec size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidValue("shape mismatch in +");
    Matrix c = a;
    for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidValue("shape mismatch in -");
    Matrix c = a;
    for (size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidValue("shape mismatch in *");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (double& x : c.data_) x *= s;
    return c;
}

Matrix invert(const Matrix& m) {
    if (!m.square()) throw InvalidValue("invert requires a square matrix");
    const int n = m.rows();
    if (n == 0) return m;

    double max_row_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j) * m(i, j);
        max_row_norm = std::max(max_row_norm, std::sqrt(s));
    }
    const double thresh = 1e-12 * max_row_norm;

    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (std::abs(a(piv, col)) <= thresh)
            throw SingularMatrix("pivot below singularity threshold");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(col, j), a(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        const double d = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const double f = a(i, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

double determinant(const Matrix& m) {
    if (!m.square()) throw InvalidValue("determinant requires a square matrix");
    const int n = m.rows();
    Matrix a = m;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
        if (a(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = col; j < n; ++j) std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det *= a(col, col);
        for (int i = col + 1; i < n; ++i) {
            const double f = a(i, col) / a(col, col);
            for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return det;
}

namespace {

// Stabilized elementary similarity reduction to upper Hessenberg form.
void to_hessenberg(Matrix& a) {
    const int n = a.rows();
    for (int m = 1; m < n - 1; ++m) {
        double x = 0.0;
        int i = m;
        for (int j = m; j < n; ++j)
            if (std::abs(a(j, m - 1)) > std::abs(x)) {
                x = a(j, m - 1);
                i = j;
            }
        if (i != m) {
            for (int j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
            for (int j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
        }
        if (x != 0.0) {
            for (int ii = m + 1; ii < n; ++ii) {
                double y = a(ii, m - 1);
                if (y == 0.0) continue;
                y /= x;
                a(ii, m - 1) = 0.0;
                for (int j = m; j < n; ++j) a(ii, j) -= y * a(m, j);
                for (int j = 0; j < n; ++j) a(j, m) += y * a(j, ii);
            }
        }
    }
    for (int i = 2; i < n; ++i)
        for (int j = 0; j < i - 1; ++j) a(i, j) = 0.0;
}

// Francis double-shift QR on a Hessenberg matrix; eigenvalues only.
void hessenberg_qr(Matrix& a, std::vector<double>& wr, std::vector<double>& wi,
                   int iter_cap) {
    const int n = a.rows();
    wr.assign(n, 0.0);
    wi.assign(n, 0.0);

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) + s == s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a(nn, nn);
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) wr[nn] = x - w / z;
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn] = z;
                        wi[nn - 1] = -z;
                    }
                    nn -= 2;
                } else {
                    if (its == iter_cap)
                        throw NotDiagonalizable("QR iteration did not converge");
                    if (its != 0 && its % 10 == 0) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        double rr = x - z;
                        double ss = y - z;
                        p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - rr - ss;
                        r = a(m + 2, m + 1);
                        double sc = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= sc;
                        q /= sc;
                        r /= sc;
                        if (m == l) break;
                        double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        double v = std::abs(p) *
                                   (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                    std::abs(a(m + 1, m + 1)));
                        if (u + v == v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a(k + 2, k - 1);
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k != nn - 1) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
}

// Inverse iteration for one eigenvector of a on a nearly singular shift.
std::vector<double> inverse_iterate(const Matrix& a, double lambda) {
    const int n = a.rows();
    const double scale = std::max(1.0, a.max_abs());
    const double tiny = 1e-13 * scale;

    Matrix b = a;
    for (int i = 0; i < n; ++i) b(i, i) -= lambda;

    // LU with partial pivoting; tiny pivots are perturbed, not rejected.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Matrix lu = b;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(lu(i, col)) > std::abs(lu(piv, col))) piv = i;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(lu(col, j), lu(piv, j));
            std::swap(perm[col], perm[piv]);
        }
        if (std::abs(lu(col, col)) < tiny) lu(col, col) = lu(col, col) >= 0.0 ? tiny : -tiny;
        for (int i = col + 1; i < n; ++i) {
            lu(i, col) /= lu(col, col);
            for (int j = col + 1; j < n; ++j) lu(i, j) -= lu(i, col) * lu(col, j);
        }
    }
    auto solve = [&](std::vector<double> rhs) {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = rhs[perm[i]];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
            x[i] /= lu(i, i);
        }
        return x;
    };
    auto norm2 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };
    auto residual = [&](const std::vector<double>& v) {
        std::vector<double> av = a.matvec(v);
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = av[i] - lambda * v[i];
            s += d * d;
        }
        return std::sqrt(s);
    };

    std::vector<double> best;
    double best_res = std::numeric_limits<double>::infinity();
    for (int start = 0; start <= n; ++start) {
        std::vector<double> v(n, start == 0 ? 1.0 : 0.0);
        if (start > 0) v[start - 1] = 1.0;
        double nv = norm2(v);
        for (double& x : v) x /= nv;
        bool ok = true;
        for (int it = 0; it < 5; ++it) {
            v = solve(v);
            nv = norm2(v);
            if (!(nv > 0.0) || !std::isfinite(nv)) {
                ok = false;
                break;
            }
            for (double& x : v) x /= nv;
        }
        if (!ok) continue;
        const double r = residual(v);
        if (r < best_res) {
            best_res = r;
            best = v;
        }
        if (best_res <= 1e-12 * scale) break;
    }
    if (best.empty()) throw NotDiagonalizable("inverse iteration failed");
    return best;
}

// Largest-magnitude entry scaled to +1; earliest entry wins ties.
void normalize_vector(std::vector<double>& v) {
    int k = 0;
    for (size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = static_cast<int>(i);
    const double d = v[k];
    if (d == 0.0) throw NotDiagonalizable("zero eigenvector");
    for (double& x : v) {
        x /= d;
        if (x == 0.0) x = 0.0; // flush -0
    }
}

} // namespace

EigenDecomposition eig_real(const Matrix& m) {
    if (!m.square()) throw InvalidValue("eig_real requires a square matrix");
    const int n = m.rows();
    if (n == 0) throw InvalidValue("eig_real on empty matrix");

    std::vector<double> wr, wi;
    std::vector<std::vector<double>> vecs;

    if (n == 1) {
        wr = {m(0, 0)};
        wi = {0.0};
        vecs = {{1.0}};
    } else if (n == 2) {
        const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
        const double half = 0.5 * (a - d);
        const double disc = half * half + b * c;
        if (disc < 0.0) {
            if (std::sqrt(-disc) > 1e-9)
                throw ComplexSpectrum(
                    with_value("complex eigenvalue pair, imaginary part", std::sqrt(-disc)));
            wr = {0.5 * (a + d), 0.5 * (a + d)};
        } else {
            const double root = std::sqrt(disc);
            wr = {0.5 * (a + d) + root, 0.5 * (a + d) - root};
        }
        wi = {0.0, 0.0};
        for (double lam : wr) {
            // rows of m - lam*I are parallel; use the larger one
            const std::vector<double> v1 = {b, lam - a};
            const std::vector<double> v2 = {d - lam, -c};
            const double n1 = std::hypot(v1[0], v1[1]);
            const double n2 = std::hypot(v2[0], v2[1]);
            if (n1 == 0.0 && n2 == 0.0)
                vecs.push_back(vecs.empty() ? std::vector<double>{1.0, 0.0}
                                            : std::vector<double>{0.0, 1.0});
            else
                vecs.push_back(n1 >= n2 ? v1 : v2);
        }
    } else {
        Matrix h = m;
        to_hessenberg(h);
        hessenberg_qr(h, wr, wi, 500);
        vecs.resize(n);
    }

    for (int i = 0; i < n; ++i)
        if (std::abs(wi[i]) > 1e-9)
            throw ComplexSpectrum(with_value("complex eigenvalue pair, imaginary part", wi[i]));
    for (int i = 0; i < n; ++i)
        if (std::abs(wr[i]) < 1e-9)
            throw ZeroEigenvalue(with_value("eigenvalue magnitude below cutoff", wr[i]));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return wr[i] > wr[j]; });

    std::vector<double> sorted(n);
    for (int i = 0; i < n; ++i) sorted[i] = wr[order[i]];
    double lam_scale = 1.0;
    for (double lam : sorted) lam_scale = std::max(lam_scale, std::abs(lam));
    for (int i = 0; i + 1 < n; ++i)
        if (sorted[i] - sorted[i + 1] <= 1e-9 * lam_scale)
            throw NotDiagonalizable(with_value("repeated eigenvalue near", sorted[i]));

    EigenDecomposition out;
    out.values = sorted;
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> v =
            n <= 2 ? vecs[order[j]] : inverse_iterate(m, sorted[j]);
        normalize_vector(v);
        std::vector<double> av = m.matvec(v);
        double rnum = 0.0, rden = 0.0;
        for (int i = 0; i < n; ++i) {
            const double diff = av[i] - sorted[j] * v[i];
            rnum += diff * diff;
            rden += v[i] * v[i];
        }
        if (std::sqrt(rnum) > 1e-9 * std::sqrt(rden))
            throw NotDiagonalizable("eigenvector residual too large");
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v[i];
    }
    return out;
}

SymmetricEigen eig_symmetric(const Matrix& m) {
    if (!m.square()) throw InvalidValue("eig_symmetric requires a square matrix");
    const int n = m.rows();
    Matrix a = m;
    // symmetrize round-off before rotating
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }
    Matrix v = Matrix::identity(n);
    const double scale = std::max(1.0, a.max_abs());

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-14 * scale) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) < a(j, j); });
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double operator_norm_2(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    const Matrix g = m.transposed() * m;
    const SymmetricEigen se = eig_symmetric(g);
    return std::sqrt(std::max(0.0, se.values.back()));
}

double min_symmetric_eigenvalue(const Matrix& m) {
    if (!m.square()) throw NotSymmetric("matrix is not square");
    const double tol = 1e-12 * std::max(1.0, m.max_abs());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol)
                throw NotSymmetric("matrix is not symmetric");
    if (m.rows() == 0) throw InvalidValue("empty matrix");
    return eig_symmetric(m).values.front();
}

CMatrix to_complex(const Matrix& m) {
    CMatrix c(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
    return c;
}

CMatrix scale_rows_by_phases(const Matrix& m, const std::vector<double>& theta) {
    if (static_cast<int>(theta.size()) != m.rows())
        throw InvalidValue("one phase per row required");
    CMatrix c(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) {
        const std::complex<double> ph = std::polar(1.0, theta[i]);
        for (int j = 0; j < m.cols(); ++j) c(i, j) = ph * m(i, j);
    }
    return c;
}

namespace {

using cplx = std::complex<double>;

std::vector<cplx> cmatvec(const CMatrix& m, const std::vector<cplx>& x) {
    std::vector<cplx> y(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        cplx s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double cnorm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

namespace detail {

PowerIteration power_iterate(const CMatrix& m, std::vector<cplx> start, int max_iters,
                             double rel_tol) {
    if (m.rows != m.cols) throw InvalidValue("power iteration requires a square matrix");
    const int n = m.rows;
    PowerIteration out;
    if (n == 0 || static_cast<int>(start.size()) != n) {
        out.vector = std::move(start);
        return out;
    }

    double scale = 0.0;
    for (const cplx& x : m.data) scale = std::max(scale, std::abs(x));

    double nv = cnorm(start);
    if (nv == 0.0) {
        out.vector = std::move(start);
        return out;
    }
    for (cplx& x : start) x /= nv;

    cplx lambda = 0.0;
    int stable = 0;
    for (int it = 0; it < max_iters; ++it) {
        std::vector<cplx> w = cmatvec(m, start);
        const double nw = cnorm(w);
        if (nw <= 1e-140 * std::max(scale, 1e-300)) {
            out.decayed = true;
            break;
        }
        cplx rq = 0.0;
        for (int i = 0; i < n; ++i) rq += std::conj(start[i]) * w[i];
        for (cplx& x : w) x /= nw;
        start = std::move(w);
        const cplx prev = lambda;
        lambda = rq;
        if (it > 0 && std::abs(lambda - prev) <= rel_tol * std::max(std::abs(lambda), 1e-30)) {
            if (++stable >= 3) {
                out.converged = true;
                break;
            }
        } else {
            stable = 0;
        }
    }
    out.rayleigh = lambda;
    out.vector = std::move(start);
    return out;
}

} // namespace detail

double spectral_radius(const CMatrix& m) {
    if (m.rows != m.cols) throw InvalidValue("spectral_radius requires a square matrix");
    const int n = m.rows;
    if (n == 0) return 0.0;
    if (n == 1) return std::abs(m(0, 0));
    if (n == 2) {
        const cplx tr = m(0, 0) + m(1, 1);
        const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        const cplx root = std::sqrt(tr * tr - 4.0 * det);
        return std::max(std::abs(0.5 * (tr + root)), std::abs(0.5 * (tr - root)));
    }

    double scale = 0.0;
    for (const cplx& x : m.data) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;

    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int restarts = 10;
    const int iters_per_start = 1000;

    for (int attempt = 0; attempt < restarts; ++attempt) {
        std::vector<cplx> v(n);
        for (cplx& x : v) x = cplx(unit(rng), unit(rng));
        auto r = detail::power_iterate(m, std::move(v), iters_per_start, 1e-10);
        if (r.converged) return std::abs(r.rayleigh);
        if (r.decayed) return 0.0;
    }
    throw NonConvergence("power iteration stagnated");
}

} // namespace hypstab
