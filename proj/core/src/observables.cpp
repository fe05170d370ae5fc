#include "fano/observables.hpp"

#include "fano/steadystate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fano {

EmissionConfig validate(const EmissionConfig& cfg) {
    if (!(cfg.i0 > 0.0) || !std::isfinite(cfg.i0)) {
        throw Error(ErrorCode::InvalidParameter, "intensity prefactor i0 must be > 0");
    }
    if (!(cfg.theta >= 0.0 && cfg.theta <= std::numbers::pi)) {
        throw Error(ErrorCode::InvalidParameter, "theta must lie in [0, pi]");
    }
    if (!(cfg.phi >= 0.0 && cfg.phi < 2.0 * std::numbers::pi)) {
        throw Error(ErrorCode::InvalidParameter, "phi must lie in [0, 2 pi)");
    }
    return cfg;
}

double angular_intensity(const DensityState& s, const EmissionConfig& config) {
    const EmissionConfig cfg = validate(config);
    const double c = std::cos(cfg.theta);
    const double sn = std::sin(cfg.theta);
    const double populations = 0.5 * (1.0 + c * c) * (s.rho_aa + s.rho_bb);
    const double coherence =
        sn * sn * (std::cos(2.0 * cfg.phi) * s.re_ab - std::sin(2.0 * cfg.phi) * s.im_ab);
    return cfg.i0 * (populations + coherence);
}

double integrated_intensity(const DensityState& s, double i0) {
    return 8.0 * std::numbers::pi / 3.0 * i0 * (s.rho_aa + s.rho_bb);
}

double total_intensity(const DensityState& s, double i0) {
    if (std::abs(s.rho_aa - s.rho_bb) > 1e-12) {
        throw Error(ErrorCode::AsymmetricState, "total_intensity requires rho_aa == rho_bb");
    }
    return 16.0 * std::numbers::pi / 3.0 * i0 * s.rho_aa;
}

IntensityDifference relative_intensity_difference(const VParams& params) {
    const SteadyState ss = closed_form(params);
    const double rho_c = canonical_population(params);
    IntensityDifference out;
    out.re_ab = ss.re_ab;
    out.value = rho_c > 0.0 ? (rho_c - ss.rho_aa) / rho_c : 0.0;
    out.mismatch = std::abs(out.value - out.re_ab);
    return out;
}

TimeSeries coherence_free_reference(const VParams& params, const DensityState& initial,
                                    double t_end, std::size_t n_points,
                                    const ReferenceOptions& options) {
    VParams p = validate(params);
    if (!p.is_symmetric()) {
        throw Error(ErrorCode::AsymmetricInput, "coherence_free_reference requires symmetric params");
    }
    if (!(t_end > 0.0) || n_points < 2) {
        throw Error(ErrorCode::InvalidInitial, "need t_end > 0 and n_points >= 2");
    }
    if (options.isotropic_rate_rescale) {
        p.explicit_pump = true;
        p.r_a *= 4.0;
        p.r_b *= 4.0;
        p = validate(p);
    }
    const double r = p.r_a;
    const double rate = 3.0 * r + p.gamma_a;
    const double rho_c = r / rate;
    const double rho0 = 0.5 * (initial.rho_aa + initial.rho_bb);

    TimeSeries series;
    series.params = p;
    series.times.resize(n_points);
    series.states.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double t = t_end * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double rho = rho_c + (rho0 - rho_c) * std::exp(-rate * t);
        series.times[i] = t;
        series.states[i] = DensityState{1.0 - 2.0 * rho, rho, rho, 0.0, 0.0};
    }
    series.times.back() = t_end;
    return series;
}

std::vector<double> fluorescence_ratio(const TimeSeries& polarized, const TimeSeries& reference) {
    if (polarized.size() != reference.size()) {
        throw Error(ErrorCode::InvalidParameter, "series must share the time grid");
    }
    double limit = 1.0;
    if (polarized.params && reference.params && reference.params->r_a > 0.0) {
        limit = polarized.params->r_a / reference.params->r_a;
    }
    std::vector<double> ratio(polarized.size());
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        const double num = polarized.states[i].rho_aa + polarized.states[i].rho_bb;
        const double den = reference.states[i].rho_aa + reference.states[i].rho_bb;
        ratio[i] = den > 0.0 ? num / den : (num == 0.0 ? limit : std::numeric_limits<double>::infinity());
    }
    return ratio;
}

} // namespace fano
