#include "fano/generator.hpp"

#include <cmath>

namespace fano {

Eigen::VectorXd Generator::to_vector(const DensityState& s) const {
    if (layout == Layout::Symmetric) {
        if (std::abs(s.rho_aa - s.rho_bb) > 1e-12) {
            throw Error(ErrorCode::InvalidInitial,
                        "symmetric generator requires rho_aa == rho_bb");
        }
        Eigen::VectorXd x(3);
        x << s.rho_aa, s.re_ab, s.im_ab;
        return x;
    }
    Eigen::VectorXd x(4);
    x << s.rho_aa, s.rho_bb, s.re_ab, s.im_ab;
    return x;
}

DensityState Generator::to_state(const Eigen::VectorXd& x) const {
    DensityState s;
    if (layout == Layout::Symmetric) {
        s.rho_aa = x(0);
        s.rho_bb = x(0);
        s.re_ab = x(1);
        s.im_ab = x(2);
        s.rho_gg = 1.0 - 2.0 * x(0);
    } else {
        s.rho_aa = x(0);
        s.rho_bb = x(1);
        s.re_ab = x(2);
        s.im_ab = x(3);
        s.rho_gg = 1.0 - x(0) - x(1);
    }
    return s;
}

Generator build_symmetric(const VParams& params) {
    const VParams p = validate(params);
    if (!p.is_symmetric()) {
        throw Error(ErrorCode::AsymmetricInput,
                    "build_symmetric requires gamma_a == gamma_b and r_a == r_b");
    }
    const double r = p.r_a;
    const double g = p.gamma_a;
    const double s = r + g + p.gamma_d;

    Generator gen;
    gen.layout = Layout::Symmetric;
    gen.a_matrix.resize(3, 3);
    gen.a_matrix << -(3.0 * r + g + p.gamma_rel), -r, 0.0,
                    -3.0 * r, -s, p.delta,
                    0.0, -p.delta, -s;
    gen.drive.resize(3);
    gen.drive << r, r, 0.0;
    gen.basis_labels = {"rho_aa", "re_ab", "im_ab"};
    gen.params = p;
    return gen;
}

Generator build_general(const VParams& params) {
    const VParams p = validate(params);
    const double ra = p.r_a;
    const double rb = p.r_b;
    const double c = std::sqrt(ra * rb);
    const double kappa = 0.5 * (ra + rb + p.gamma_a + p.gamma_b + 2.0 * p.gamma_d);

    Generator gen;
    gen.layout = Layout::General;
    gen.a_matrix.resize(4, 4);
    // rho_gg = 1 - rho_aa - rho_bb substituted into the pump terms.
    gen.a_matrix << -(2.0 * ra + p.gamma_a + p.gamma_rel), -ra, -c, 0.0,
                    -rb, -(2.0 * rb + p.gamma_b + p.gamma_rel), -c, 0.0,
                    -1.5 * c, -1.5 * c, -kappa, p.delta,
                    0.0, 0.0, -p.delta, -kappa;
    gen.drive.resize(4);
    gen.drive << ra, rb, c, 0.0;
    gen.basis_labels = {"rho_aa", "rho_bb", "re_ab", "im_ab"};
    gen.params = p;
    return gen;
}

namespace {

double rcond_1norm(const Eigen::MatrixXd& a) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) return 0.0;
    const Eigen::MatrixXd inv = lu.inverse();
    const double norm_a = a.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_inv = inv.cwiseAbs().colwise().sum().maxCoeff();
    if (norm_a == 0.0 || !std::isfinite(norm_inv)) return 0.0;
    return 1.0 / (norm_a * norm_inv);
}

} // namespace

DeterminantInfo determinant(const Generator& gen, double singular_tol) {
    DeterminantInfo info;
    info.value = gen.a_matrix.determinant();
    if (gen.layout == Layout::Symmetric && gen.params) {
        const VParams& p = *gen.params;
        const double r = p.r_a;
        const double s = r + p.gamma_a + p.gamma_d;
        info.closed_form = 3.0 * r * r * s -
                           (3.0 * r + p.gamma_a + p.gamma_rel) * (p.delta * p.delta + s * s);
    }
    info.rcond = rcond_1norm(gen.a_matrix);
    info.singular = !(info.rcond >= singular_tol);
    return info;
}

DeterminantInfo determinant(const VParams& params, double singular_tol) {
    const VParams p = validate(params);
    return determinant(p.is_symmetric() ? build_symmetric(p) : build_general(p), singular_tol);
}

} // namespace fano
