#include "fano/steadystate.hpp"

#include "fano/table.hpp"

#include <cmath>

namespace fano {

std::string_view to_string(SteadyMethod method) noexcept {
    return method == SteadyMethod::ClosedForm ? "closed-form" : "linear-solve";
}

namespace {

VParams require_symmetric(const VParams& params, const char* who) {
    VParams p = validate(params);
    if (!p.is_symmetric()) {
        throw Error(ErrorCode::AsymmetricInput, std::string(who) + " requires symmetric params");
    }
    return p;
}

void require_radiative_only(const VParams& p, const char* who) {
    if (p.gamma_d != 0.0 || p.gamma_rel != 0.0) {
        throw Error(ErrorCode::InvalidParameter,
                    std::string(who) + " holds for gamma_d = gamma_rel = 0 only");
    }
}

double residual_of(const Generator& gen, const Eigen::VectorXd& x) {
    return gen.rate(x).lpNorm<Eigen::Infinity>();
}

void require_nonsingular(const Generator& gen, double singular_tol) {
    const DeterminantInfo det = determinant(gen, singular_tol);
    if (det.singular) {
        throw Error(ErrorCode::SingularGenerator,
                    "generator is numerically singular (rcond = " + format_double(det.rcond) +
                        "); at Delta -> 0 and strong pumping the long-time state is a "
                        "population-locked state that depends on the initial condition");
    }
}

} // namespace

SteadyState solve_linear(const Generator& gen, double singular_tol) {
    require_nonsingular(gen, singular_tol);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(gen.a_matrix);
    const Eigen::VectorXd rhs = -gen.drive;
    Eigen::VectorXd x = lu.solve(rhs);
    // One step of iterative refinement with the residual accumulated in long double.
    Eigen::VectorXd r(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        long double acc = static_cast<long double>(rhs(i));
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            acc -= static_cast<long double>(gen.a_matrix(i, j)) * static_cast<long double>(x(j));
        }
        r(i) = static_cast<double>(acc);
    }
    x += lu.solve(r);

    const DensityState s = gen.to_state(x);
    SteadyState out;
    out.rho_aa = s.rho_aa;
    out.rho_bb = s.rho_bb;
    out.re_ab = s.re_ab;
    out.im_ab = s.im_ab;
    out.rho_gg = s.rho_gg;
    out.residual = residual_of(gen, x);
    out.method = SteadyMethod::LinearSolve;
    return out;
}

SteadyState closed_form(const VParams& params) {
    const VParams p = require_symmetric(params, "closed_form");
    const double r = p.r_a;
    const double g = p.gamma_a;
    const double relax = g + p.gamma_rel;  // gamma + Gamma
    const double deph = g + p.gamma_d;     // gamma + gamma_d
    const double s = r + deph;
    const double d2 = p.delta * p.delta;
    // (3r+gamma+Gamma)(Delta^2+s^2) - 3r^2 s, rearranged into a sum of
    // non-negative terms.
    const double denom = (3.0 * r + relax) * d2 + s * (r * (3.0 * deph + relax) + relax * deph);

    SteadyState out;
    out.method = SteadyMethod::ClosedForm;
    out.rho_aa = r * (d2 + deph * s) / denom;
    out.rho_bb = out.rho_aa;
    out.re_ab = r * relax * s / denom;
    out.im_ab = -p.delta / s * out.re_ab;
    out.rho_gg = 1.0 - 2.0 * out.rho_aa;

    const Generator gen = build_symmetric(p);
    Eigen::VectorXd x(3);
    x << out.rho_aa, out.re_ab, out.im_ab;
    out.residual = residual_of(gen, x);
    return out;
}

SteadyState steady_state(const VParams& params, double singular_tol) {
    const VParams p = validate(params);
    const Generator gen = p.is_symmetric() ? build_symmetric(p) : build_general(p);
    if (!p.is_symmetric()) return solve_linear(gen, singular_tol);
    require_nonsingular(gen, singular_tol);
    return closed_form(p);
}

double canonical_population(const VParams& params) {
    const VParams p = require_symmetric(params, "canonical_population");
    return p.r_a / (3.0 * p.r_a + p.gamma_a);
}

double population_coherence_identity(const VParams& params) {
    const VParams p = require_symmetric(params, "population_coherence_identity");
    require_radiative_only(p, "population_coherence_identity");
    const SteadyState ss = closed_form(p);
    const double rho_c = canonical_population(p);
    if (rho_c == 0.0) return std::abs(ss.re_ab);
    return std::abs(ss.re_ab - (rho_c - ss.rho_aa) / rho_c);
}

double c_ratio(const VParams& params) {
    const VParams p = require_symmetric(params, "c_ratio");
    const double g = p.gamma_a;
    const double s = p.r_a + g + p.gamma_d;
    return (g + p.gamma_rel) * s / (p.delta * p.delta + (g + p.gamma_d) * s);
}

CoherenceDerivatives derivatives(const VParams& params) {
    const VParams p = require_symmetric(params, "derivatives");
    require_radiative_only(p, "derivatives");
    const double n = p.nbar;
    const double x = p.delta / p.gamma_a;
    const double x2 = x * x;
    const double q = (3.0 * n + 1.0) * x2 + (4.0 * n * n + 5.0 * n + 1.0);
    const double q2 = q * q;
    CoherenceDerivatives d;
    d.d_nbar = ((3.0 * n * n + 2.0 * n + 1.0) * x2 + (n + 1.0) * (n + 1.0)) / q2;
    d.d_delta = -2.0 * n * (n + 1.0) * (3.0 * n + 1.0) * x / q2;
    return d;
}

std::optional<double> optimal_dephasing(const VParams& params) {
    const VParams p = require_symmetric(params, "optimal_dephasing");
    const double root = p.delta - p.r_a - p.gamma_a;
    if (root > 0.0) return root;
    return std::nullopt;
}

} // namespace fano
