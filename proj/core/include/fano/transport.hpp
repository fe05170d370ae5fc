// transport.hpp — two coupled qubits between a hot (L) and a cold (R) bath.
//
// In the single-excitation eigenbasis |a>, |b> of the dimer the Bloch-Redfield
// equations have the same affine structure as the polarized-pump V-system. With
// flat coupling spectra gamma^alpha_ij, bath occupancies nbar_alpha and
// interference weights f_alpha the rates are
//
//   Gamma^+_ij = 1/2 sum_alpha gamma^alpha_ij nbar_alpha
//   Gamma^-_ij = 1/2 sum_alpha gamma^alpha_ij (nbar_alpha + 1)
//
// with cross spectra gamma^alpha_ab = sqrt(f_alpha gamma^alpha_aa gamma^alpha_bb).

#pragma once

#include "fano/core.hpp"
#include "fano/generator.hpp"

namespace fano {

struct TwoBathParams {
    double eps_a = 0.0;  // E_a - E_g
    double eps_b = 0.0;  // E_b - E_g
    double g = 0.0;      // qubit-qubit coupling; eps_a - eps_b = 2 g
    double nbar_L = 0.0;
    double nbar_R = 0.0;
    double gamma_L_aa = 0.0;
    double gamma_L_bb = 0.0;
    double gamma_R_aa = 0.0;
    double gamma_R_bb = 0.0;
    double f_L = 0.0;
    double f_R = 0.0;
    // Whether the vacuum (spontaneous-emission) part of the cross rates carries
    // interference. Orthogonal transition dipoles: false.
    bool spontaneous_interference = false;

    double splitting() const noexcept { return eps_a - eps_b; }

    bool operator==(const TwoBathParams&) const = default;
};

// Throws Error{NegativeRate} for negative rates/occupancies or eps_a < eps_b,
// Error{InvalidParameter} for f outside [0, 1], non-finite input, or
// g != (eps_a - eps_b) / 2, and Error{NonpositiveDecay} when a level has no
// decay channel at all.
TwoBathParams validate(const TwoBathParams& tp);

// Trace-eliminated 4x4 generator over [rho_aa, rho_bb, Re rho_ab, Im rho_ab]. The
// precession term follows the V-system sign, -i Delta rho_ab.
Generator build_transport_generator(const TwoBathParams& tp);

// V-system equivalent of the polarized-drive configuration f_L = 1, f_R = 0,
// nbar_R = 0 without spontaneous interference:
//   gamma_i = gamma^L_ii + gamma^R_ii,  r_i = nbar_L gamma^L_ii.
// The result has explicit_pump set, r_i / gamma_i generally differs from nbar_L.
// Throws Error{ConfigMismatch} when the configuration does not hold.
VParams reduce_to_vsystem(const TwoBathParams& tp);

// Two-bath parameters whose reduced generator reproduces the symmetric V-system
// generator of `params` (Gamma = gamma_d = 0): gamma^L = r / nbar_L,
// gamma^R = gamma - gamma^L. Requires nbar_L >= r / gamma (Error{ConfigMismatch}).
TwoBathParams transport_from_vsystem(const VParams& params, double nbar_L);

// Energy flux from qubit 1 to qubit 2, J = 4 g Im rho_ab.
double heat_flux(const DensityState& state, double g) noexcept;

} // namespace fano
