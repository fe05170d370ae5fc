#include "fano/core.hpp"

#include "fano/table.hpp"

#include <algorithm>
#include <cmath>

namespace fano {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NegativeRate: return "NEGATIVE_RATE";
    case ErrorCode::NonpositiveDecay: return "NONPOSITIVE_DECAY";
    case ErrorCode::NonpositiveFrequency: return "NONPOSITIVE_FREQUENCY";
    case ErrorCode::InvalidParameter: return "INVALID_PARAMETER";
    case ErrorCode::AsymmetricInput: return "ASYMMETRIC_INPUT";
    case ErrorCode::SingularGenerator: return "SINGULAR_GENERATOR";
    case ErrorCode::StepFailure: return "STEP_FAILURE";
    case ErrorCode::InvalidInitial: return "INVALID_INITIAL";
    case ErrorCode::RegimeMismatch: return "REGIME_MISMATCH";
    case ErrorCode::ConfigMismatch: return "CONFIG_MISMATCH";
    case ErrorCode::AsymmetricState: return "ASYMMETRIC_STATE";
    case ErrorCode::UnknownAxis: return "UNKNOWN_AXIS";
    case ErrorCode::UnknownObservable: return "UNKNOWN_OBSERVABLE";
    case ErrorCode::InvalidAxis: return "INVALID_AXIS";
    case ErrorCode::IoFailure: return "IO_FAILURE";
    }
    return "UNKNOWN";
}

namespace {

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::InvalidParameter, std::string(name) + " must be finite");
    }
}

void require_nonnegative(double value, const char* name) {
    if (value < 0.0) {
        throw Error(ErrorCode::NegativeRate,
                    std::string(name) + " must be >= 0, got " + format_double(value));
    }
}

} // namespace

VParams VParams::symmetric(double nbar, double delta, double gamma_d, double gamma_rel,
                           double gamma) {
    VParams p;
    p.gamma_a = gamma;
    p.gamma_b = gamma;
    p.nbar = nbar;
    p.delta = delta;
    p.gamma_d = gamma_d;
    p.gamma_rel = gamma_rel;
    return validate(p);
}

bool VParams::is_symmetric() const noexcept {
    return close_rel(gamma_a, gamma_b, 1e-12) && close_rel(r_a, r_b, 1e-12);
}

VParams validate(const VParams& params) {
    VParams p = params;
    require_finite(p.gamma_a, "gamma_a");
    require_finite(p.gamma_b, "gamma_b");
    require_finite(p.nbar, "nbar");
    require_finite(p.delta, "delta");
    require_finite(p.gamma_rel, "gamma_rel");
    require_finite(p.gamma_d, "gamma_d");

    if (p.gamma_a <= 0.0 || p.gamma_b <= 0.0) {
        throw Error(ErrorCode::NonpositiveDecay, "spontaneous decay rates must be > 0");
    }
    require_nonnegative(p.delta, "delta");
    require_nonnegative(p.gamma_rel, "gamma_rel");
    require_nonnegative(p.gamma_d, "gamma_d");

    if (p.explicit_pump) {
        require_finite(p.r_a, "r_a");
        require_finite(p.r_b, "r_b");
        require_nonnegative(p.r_a, "r_a");
        require_nonnegative(p.r_b, "r_b");
        p.nbar = p.r_a / p.gamma_a;
    } else {
        require_nonnegative(p.nbar, "nbar");
        p.r_a = p.nbar * p.gamma_a;
        p.r_b = p.nbar * p.gamma_b;
    }
    return p;
}

StateCheck check_state(const DensityState& s, double tol) noexcept {
    StateCheck c;
    c.trace_error = std::abs(s.trace() - 1.0);
    c.cauchy_schwarz_excess = std::max(0.0, s.coherence_norm2() - s.rho_aa * s.rho_bb);
    for (double pop : {s.rho_gg, s.rho_aa, s.rho_bb}) {
        const double out = pop < 0.0 ? -pop : (pop > 1.0 ? pop - 1.0 : 0.0);
        c.population_excess = std::max(c.population_excess, out);
    }
    const bool finite = std::isfinite(s.rho_gg) && std::isfinite(s.rho_aa) &&
                        std::isfinite(s.rho_bb) && std::isfinite(s.re_ab) &&
                        std::isfinite(s.im_ab);
    c.ok = finite && c.trace_error <= tol && c.cauchy_schwarz_excess <= tol &&
           c.population_excess <= tol;
    return c;
}

double nbar_from_temperature(double omega, double temperature) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw Error(ErrorCode::NonpositiveFrequency, "omega must be > 0");
    }
    if (!(temperature >= 0.0)) {
        throw Error(ErrorCode::NegativeRate, "temperature must be >= 0");
    }
    if (temperature == 0.0) return 0.0;
    const double x = constants::hbar * omega / (constants::boltzmann * temperature);
    // expm1 keeps the kT >> hbar*omega limit accurate.
    return 1.0 / std::expm1(x);
}

} // namespace fano
