// steadystate.hpp — non-equilibrium steady states of the polarized-pump V-system.
//
// Two independent routes are provided and cross-checked in the tests: the
// closed-form rational expressions for the symmetric system (with relaxation
// Gamma and dephasing gamma_d), and a dense linear solve of A x = -d that works
// for any generator.

#pragma once

#include "fano/core.hpp"
#include "fano/generator.hpp"

#include <optional>
#include <string_view>

namespace fano {

enum class SteadyMethod { ClosedForm, LinearSolve };

std::string_view to_string(SteadyMethod method) noexcept;

struct SteadyState {
    double rho_aa = 0.0;
    double rho_bb = 0.0;
    double re_ab = 0.0;
    double im_ab = 0.0;
    double rho_gg = 1.0;
    double residual = 0.0; // ||A x_s + d||_inf
    SteadyMethod method = SteadyMethod::ClosedForm;

    DensityState state() const { return {rho_gg, rho_aa, rho_bb, re_ab, im_ab}; }
};

// x_s = -A^{-1} d. Throws Error{SingularGenerator} when determinant() flags A.
SteadyState solve_linear(const Generator& gen, double singular_tol = kDefaultSingularTol);

// Closed form for symmetric params (throws Error{AsymmetricInput}):
//   rho_aa = r [Delta^2 + (gamma+gamma_d) s] / D
//   Re rho_ab = r (gamma+Gamma) s / D
//   Im rho_ab = -Delta / s * Re rho_ab
// with s = r + gamma + gamma_d and
//   D = (3r+gamma+Gamma)(Delta^2 + s^2) - 3 r^2 s.
SteadyState closed_form(const VParams& params);

// Default entry point: refuses flagged-singular generators, then uses the closed
// form for symmetric params and the 4x4 linear solve otherwise.
SteadyState steady_state(const VParams& params, double singular_tol = kDefaultSingularTol);

// Canonical (coherence-free) excited population r / (3r + gamma).
double canonical_population(const VParams& params);

// |Re rho_ab - (rho_c - rho_aa) / rho_c| for Gamma = gamma_d = 0; 0 when nbar = 0.
double population_coherence_identity(const VParams& params);

// Coherence-to-population ratio Re rho_ab / rho_aa,
//   C = (gamma+Gamma) s / (Delta^2 + (gamma+gamma_d) s),
// finite at nbar = 0 (its nbar -> 0 limit).
double c_ratio(const VParams& params);

struct CoherenceDerivatives {
    double d_nbar = 0.0;  // d Re rho_ab / d nbar at fixed Delta/gamma
    double d_delta = 0.0; // d Re rho_ab / d (Delta/gamma) at fixed nbar
};

// Exact first derivatives of Re rho_ab for Gamma = gamma_d = 0. With
// Q = (3n+1) x^2 + (4n^2+5n+1), n = nbar, x = Delta/gamma:
//   d/dn = [(3n^2+2n+1) x^2 + (n+1)^2] / Q^2
//   d/dx = -2 n (n+1) (3n+1) x / Q^2
CoherenceDerivatives derivatives(const VParams& params);

// Dephasing rate Delta - r - gamma that maximizes Re rho_ab and C; empty unless
// strictly positive.
std::optional<double> optimal_dephasing(const VParams& params);

} // namespace fano
