// core.hpp — parameter records, density state, error type and thermal helpers
// shared by every other module.
//
// Units: the radiative decay rate gamma of the symmetric V-system is the unit of
// rate (and 1/gamma the unit of time). Every rate and the excited-state
// splitting delta are dimensionless multiples of it, hbar = 1.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fano {

enum class ErrorCode {
    NegativeRate,
    NonpositiveDecay,
    NonpositiveFrequency,
    InvalidParameter,
    AsymmetricInput,
    SingularGenerator,
    StepFailure,
    InvalidInitial,
    RegimeMismatch,
    ConfigMismatch,
    AsymmetricState,
    UnknownAxis,
    UnknownObservable,
    InvalidAxis,
    IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parameters of the V-system: ground state g, excited states a and b.
struct VParams {
    double gamma_a = 1.0;   // spontaneous decay of |a>
    double gamma_b = 1.0;   // spontaneous decay of |b>
    double nbar = 0.0;      // mean photon occupation of the polarized pump
    double delta = 0.0;     // excited-state splitting E_a - E_b
    double gamma_rel = 0.0; // excited-state population relaxation
    double gamma_d = 0.0;   // pure dephasing of the a-b coherence

    // Incoherent pump rates. validate() sets r_i = nbar * gamma_i unless
    // explicit_pump is true, in which case r_a, r_b are taken as given and nbar
    // becomes the effective occupancy r_a / gamma_a.
    double r_a = 0.0;
    double r_b = 0.0;
    bool explicit_pump = false;

    // Symmetric system in units of gamma; pump rates already derived.
    static VParams symmetric(double nbar, double delta, double gamma_d = 0.0,
                             double gamma_rel = 0.0, double gamma = 1.0);

    // Symmetric means gamma_a == gamma_b and r_a == r_b (relative 1e-12).
    bool is_symmetric() const noexcept;

    bool operator==(const VParams&) const = default;
};

// Returns normalized params with pump rates populated.
// Throws Error{NonpositiveDecay} for gamma_i <= 0, Error{NegativeRate} for any
// negative rate (nbar, delta, gamma_rel, gamma_d, explicit r_i) and
// Error{InvalidParameter} for non-finite input.
VParams validate(const VParams& params);

// Reduced density matrix of the V-system in the energy eigenbasis.
struct DensityState {
    double rho_gg = 1.0;
    double rho_aa = 0.0;
    double rho_bb = 0.0;
    double re_ab = 0.0;
    double im_ab = 0.0;

    static DensityState ground() { return {}; }

    double trace() const noexcept { return rho_gg + rho_aa + rho_bb; }
    double coherence_norm2() const noexcept { return re_ab * re_ab + im_ab * im_ab; }

    bool operator==(const DensityState&) const = default;
};

struct StateCheck {
    double trace_error = 0.0;        // |Tr rho - 1|
    double cauchy_schwarz_excess = 0.0; // max(0, |rho_ab|^2 - rho_aa rho_bb)
    double population_excess = 0.0;  // distance of populations outside [0, 1]
    bool ok = true;
};

// Checks trace, Cauchy-Schwarz and population bounds with absolute tolerance tol.
StateCheck check_state(const DensityState& state, double tol = 1e-10) noexcept;

// Planck occupancy 1/(exp(hbar*omega/(k*T)) - 1); omega in rad/s, T in kelvin.
// Returns 0 at T = 0. Throws Error{NonpositiveFrequency} for omega <= 0 and
// Error{NegativeRate} for T < 0.
double nbar_from_temperature(double omega, double temperature);

namespace constants {
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double boltzmann = 1.380649e-23;   // J / K
} // namespace constants

} // namespace fano
