#include "hypstab/boundary.hpp"

#include <cmath>
#include <string>

namespace hypstab {

namespace {

void check_shapes(const BoundaryControl& bc) {
    const int n = bc.a_phys.rows();
    auto square_n = [n](const Matrix& m) { return m.rows() == n && m.cols() == n; };
    if (n < 1 || !square_n(bc.a_phys) || !square_n(bc.b_phys) || !square_n(bc.k0) ||
        !square_n(bc.kl))
        throw InvalidValue("boundary matrices must all be n x n");
    if (static_cast<int>(bc.observable_0.size()) != n ||
        static_cast<int>(bc.observable_l.size()) != n)
        throw InvalidValue("observability masks must have one flag per variable");
}

} // namespace

BoundaryControl enforce_observability(const BoundaryControl& bc) {
    check_shapes(bc);
    BoundaryControl out = bc;
    const int n = bc.a_phys.rows();
    for (int j = 0; j < n; ++j) {
        if (!bc.observable_0[j])
            for (int i = 0; i < n; ++i) {
                if (bc.strict && out.k0(i, j) != 0.0)
                    throw MaskViolation("gain on unobservable variable " +
                                        std::to_string(j + 1) + " at x = 0");
                out.k0(i, j) = 0.0;
            }
        if (!bc.observable_l[j])
            for (int i = 0; i < n; ++i) {
                if (bc.strict && out.kl(i, j) != 0.0)
                    throw MaskViolation("gain on unobservable variable " +
                                        std::to_string(j + 1) + " at x = L");
                out.kl(i, j) = 0.0;
            }
    }
    return out;
}

namespace {

void detect_structure(CouplingMatrix& cm) {
    const Matrix& k = cm.k;
    const int n = k.rows();

    if (n == 2 && std::abs(k(0, 0)) <= 1e-12 && std::abs(k(1, 1)) <= 1e-12) {
        cm.structure = Structure::anti_diagonal_2x2;
        cm.anti_a = k(0, 1);
        cm.anti_b = k(1, 0);
        return;
    }
    if (n == 1) {
        cm.structure = Structure::rank_one;
        cm.u = {k(0, 0)};
        cm.v = {1.0};
        return;
    }

    const SymmetricEigen se = eig_symmetric(k.transposed() * k);
    const double s1 = std::sqrt(std::max(0.0, se.values[n - 1]));
    const double s2 = std::sqrt(std::max(0.0, se.values[n - 2]));
    if (s1 < 1e-150) { // zero matrix
        cm.structure = Structure::rank_one;
        cm.u.assign(n, 0.0);
        cm.v.assign(n, 0.0);
        return;
    }
    if (s2 / s1 >= 1e-9) return; // general

    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = se.vectors(i, n - 1);
    int big = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[big])) big = i;
    if (v[big] < 0.0)
        for (double& x : v) x = -x;
    const std::vector<double> u = k.matvec(v);

    Matrix residual = k;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) residual(i, j) -= u[i] * v[j];
    if (residual.max_abs() > 1e-10) return; // keep the general tag

    cm.structure = Structure::rank_one;
    cm.u = u;
    cm.v = v;
}

} // namespace

CouplingMatrix build_coupling(const RiemannForm& rf, const BoundaryControl& bc_in) {
    const BoundaryControl bc = enforce_observability(bc_in);
    const int n = static_cast<int>(rf.lambda.size());
    if (bc.a_phys.rows() != n) throw InvalidValue("boundary data dimension mismatch");

    const Matrix e = (bc.a_phys - bc.k0) * rf.transform;
    const Matrix f = (bc.kl - bc.b_phys) * rf.transform;
    const int m = rf.m, q = n - rf.m;

    Matrix c(n, n), d(n, n);
    c.set_block(0, 0, e.block(0, 0, m, m));
    c.set_block(0, m, -1.0 * f.block(0, m, m, q));
    c.set_block(m, 0, e.block(m, 0, q, m));
    c.set_block(m, m, -1.0 * f.block(m, m, q, q));
    d.set_block(0, 0, f.block(0, 0, m, m));
    d.set_block(0, m, -1.0 * e.block(0, m, m, q));
    d.set_block(m, 0, f.block(m, 0, q, m));
    d.set_block(m, m, -1.0 * e.block(m, m, q, q));

    CouplingMatrix cm;
    try {
        cm.k = invert(c) * d;
    } catch (const SingularMatrix&) {
        throw IllPosedBoundary(
            "boundary conditions do not determine the incoming characteristics");
    }
    detect_structure(cm);
    return cm;
}

double rank_one_condition(const RiemannForm& rf, const BoundaryControl& bc,
                          const std::vector<double>& u, const std::vector<double>& v) {
    const int n = static_cast<int>(rf.lambda.size());
    if (rf.m != n)
        throw NotApplicable("feedback-form criterion needs all speeds positive");
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
        throw InvalidValue("u and v must have length n");

    const std::vector<double> w1 = rf.transform.transposed().matvec(v);
    const Matrix lhs = (bc.a_phys - bc.k0) * rf.transform;
    const std::vector<double> w2 = invert(lhs).matvec(u);

    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::abs(w1[i]) * std::abs(w2[i]);
    return sum;
}

} // namespace hypstab
