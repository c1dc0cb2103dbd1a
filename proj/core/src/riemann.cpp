#include "hypstab/riemann.hpp"

#include <cmath>

namespace hypstab {

RiemannForm to_riemann(const HyperbolicSystem& sys) {
    if (sys.n < 1) throw InvalidValue("system dimension must be positive");
    if (sys.flux.rows() != sys.n || sys.flux.cols() != sys.n)
        throw InvalidValue("flux matrix must be n x n");
    if (sys.source && (sys.source->rows() != sys.n || sys.source->cols() != sys.n))
        throw InvalidValue("source matrix must be n x n");
    if (!(sys.length > 0.0) || !std::isfinite(sys.length))
        throw InvalidValue("domain length must be positive");

    const EigenDecomposition e = eig_real(sys.flux);
    const int n = sys.n;

    RiemannForm rf;
    rf.lambda = e.values;
    rf.transform = e.vectors;
    rf.transform_inv = invert(e.vectors);
    rf.length = sys.length;

    const Matrix recon = rf.transform_inv * sys.flux * rf.transform;
    Matrix diag_err = recon;
    for (int i = 0; i < n; ++i) diag_err(i, i) -= rf.lambda[i];
    if (diag_err.max_abs() > 1e-8)
        throw NotDiagonalizable("diagonalization residual too large");

    rf.m = 0;
    for (double l : rf.lambda)
        if (l > 0.0) ++rf.m;

    const int p = rf.m, q = n - rf.m;
    rf.t11 = rf.transform.block(0, 0, p, p);
    rf.t12 = rf.transform.block(0, p, p, q);
    rf.t21 = rf.transform.block(p, 0, q, p);
    rf.t22 = rf.transform.block(p, p, q, q);

    if (sys.source) rf.source_coupling = rf.transform_inv * *sys.source * rf.transform;
    return rf;
}

std::vector<double> physical_to_riemann(const RiemannForm& rf, const std::vector<double>& y) {
    return rf.transform_inv.matvec(y);
}

std::vector<double> riemann_to_physical(const RiemannForm& rf, const std::vector<double>& r) {
    return rf.transform.matvec(r);
}

} // namespace hypstab
