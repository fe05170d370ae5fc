// generator.hpp — affine Liouville-space dynamics x' = A x + d of the V-system.

#pragma once

#include "fano/core.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace fano {

// Symmetric: x = [rho_aa, Re rho_ab, Im rho_ab] with rho_bb = rho_aa,
//            rho_gg = 1 - 2 rho_aa.
// General:   x = [rho_aa, rho_bb, Re rho_ab, Im rho_ab] with
//            rho_gg = 1 - rho_aa - rho_bb.
enum class Layout { Symmetric, General };

struct Generator {
    Layout layout = Layout::Symmetric;
    Eigen::MatrixXd a_matrix;
    Eigen::VectorXd drive;
    std::vector<std::string> basis_labels;
    // V-system parameters the generator was built from, when there is such a
    // parameter set (the two-bath model only has one in its reduced configuration).
    std::optional<VParams> params;

    Eigen::Index dim() const noexcept { return a_matrix.rows(); }

    // Throws Error{InvalidInitial} when a symmetric layout is asked to carry a
    // state with rho_aa != rho_bb.
    Eigen::VectorXd to_vector(const DensityState& state) const;
    DensityState to_state(const Eigen::VectorXd& x) const;

    // A x + d
    Eigen::VectorXd rate(const Eigen::VectorXd& x) const { return a_matrix * x + drive; }
};

// 3x3 system for gamma_a = gamma_b, r_a = r_b (throws Error{AsymmetricInput}).
Generator build_symmetric(const VParams& params);

// 4x4 trace-eliminated system, any gamma_a, gamma_b.
Generator build_general(const VParams& params);

struct DeterminantInfo {
    double value = 0.0;
    // Closed-form determinant 3r^2 s - (3r+gamma+Gamma)(Delta^2 + s^2),
    // s = r + gamma + gamma_d, when the params are symmetric.
    std::optional<double> closed_form;
    // Reciprocal 1-norm condition number of A.
    double rcond = 0.0;
    bool singular = false;
};

inline constexpr double kDefaultSingularTol = 1e-6;

// Flags singular when rcond(A) < singular_tol. The scale-free condition
// number is used instead of |det A|, which carries units of rate^3.
DeterminantInfo determinant(const Generator& gen, double singular_tol = kDefaultSingularTol);
DeterminantInfo determinant(const VParams& params, double singular_tol = kDefaultSingularTol);

} // namespace fano
