// observables.hpp — fluorescence signals of the driven V-system.

#pragma once

#include "fano/core.hpp"
#include "fano/dynamics.hpp"

#include <cstddef>
#include <vector>

namespace fano {

// Emission geometry. i0 folds n_r w0^4 / (32 pi^2 eps0 c^3 R^2) into one scale.
struct EmissionConfig {
    double i0 = 1.0;
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2 pi)
};

// Throws Error{InvalidParameter} for i0 <= 0 or angles out of range.
EmissionConfig validate(const EmissionConfig& cfg);

// I0 [ (1 + cos^2 theta)/2 (rho_aa + rho_bb)
//      + sin^2 theta (cos 2phi Re rho_ab - sin 2phi Im rho_ab) ]
double angular_intensity(const DensityState& state, const EmissionConfig& cfg);

// Solid-angle integral of angular_intensity: (8 pi / 3) i0 (rho_aa + rho_bb).
double integrated_intensity(const DensityState& state, double i0);

// (16 pi / 3) i0 rho_aa for rho_aa == rho_bb; Error{AsymmetricState} otherwise.
double total_intensity(const DensityState& state, double i0);

struct IntensityDifference {
    double value = 0.0;    // (rho_c - rho_aa) / rho_c
    double re_ab = 0.0;    // steady-state Re rho_ab
    double mismatch = 0.0; // |value - re_ab|
};

// Fractional suppression of the steady-state fluorescence under polarized drive
// relative to the coherence-free reference with the same pump rate. For
// Gamma = gamma_d = 0 it equals Re rho_ab; value is 0 at nbar = 0.
IntensityDifference relative_intensity_difference(const VParams& params);

struct ReferenceOptions {
    // Scale the reference pump rate by 4, the polarized-vs-isotropic absorption
    // ratio, instead of comparing at equal r.
    bool isotropic_rate_rescale = false;
};

// Coherence-free reference rho_aa' = -(3r + gamma) rho_aa + r, solved exactly:
// rho_aa(t) = rho_c + (rho_aa(0) - rho_c) exp(-(3r + gamma) t). Coherences are zero.
TimeSeries coherence_free_reference(const VParams& params, const DensityState& initial,
                                    double t_end, std::size_t n_points,
                                    const ReferenceOptions& options = {});

// Ratio of total fluorescence, polarized over reference, sample by sample.
// Where both populations vanish (t = 0 from the ground state) the t -> 0+ limit,
// the ratio of the pump rates echoed in the two series, is reported (1 at equal
// r). The series must share the time grid.
std::vector<double> fluorescence_ratio(const TimeSeries& polarized, const TimeSeries& reference);

} // namespace fano
