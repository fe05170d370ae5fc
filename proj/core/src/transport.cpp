#include "fano/transport.hpp"

#include <algorithm>
#include <cmath>

namespace fano {

TwoBathParams validate(const TwoBathParams& tp) {
    const double values[] = {tp.eps_a,      tp.eps_b,      tp.g,          tp.nbar_L,
                             tp.nbar_R,     tp.gamma_L_aa, tp.gamma_L_bb, tp.gamma_R_aa,
                             tp.gamma_R_bb, tp.f_L,        tp.f_R};
    for (double v : values) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "non-finite two-bath parameter");
    }
    for (double v : {tp.nbar_L, tp.nbar_R, tp.gamma_L_aa, tp.gamma_L_bb, tp.gamma_R_aa,
                     tp.gamma_R_bb, tp.g}) {
        if (v < 0.0) throw Error(ErrorCode::NegativeRate, "two-bath rates and occupancies must be >= 0");
    }
    if (tp.eps_a < tp.eps_b) {
        throw Error(ErrorCode::NegativeRate, "splitting eps_a - eps_b must be >= 0");
    }
    for (double f : {tp.f_L, tp.f_R}) {
        if (f < 0.0 || f > 1.0) throw Error(ErrorCode::InvalidParameter, "weight factors must lie in [0, 1]");
    }
    const double split = tp.splitting();
    if (std::abs(split - 2.0 * tp.g) > 1e-12 * std::max({1.0, std::abs(split), std::abs(tp.eps_a)})) {
        throw Error(ErrorCode::InvalidParameter, "qubit coupling must satisfy eps_a - eps_b = 2 g");
    }
    if (tp.gamma_L_aa + tp.gamma_R_aa <= 0.0 || tp.gamma_L_bb + tp.gamma_R_bb <= 0.0) {
        throw Error(ErrorCode::NonpositiveDecay, "each excited level needs a decay channel");
    }
    return tp;
}

Generator build_transport_generator(const TwoBathParams& params) {
    const TwoBathParams tp = validate(params);

    const double rL_aa = tp.nbar_L * tp.gamma_L_aa;
    const double rL_bb = tp.nbar_L * tp.gamma_L_bb;
    const double rR_aa = tp.nbar_R * tp.gamma_R_aa;
    const double rR_bb = tp.nbar_R * tp.gamma_R_bb;

    // Diagonal rates 2 Gamma^+_ii (absorption) and 2 Gamma^-_ii (emission);
    // sums are ordered as in build_general.
    const double up_aa = rL_aa + rR_aa;
    const double up_bb = rL_bb + rR_bb;
    const double vac_aa = tp.gamma_L_aa + tp.gamma_R_aa;
    const double vac_bb = tp.gamma_L_bb + tp.gamma_R_bb;

    // Cross rates 2 Gamma^+_ab and 2 Gamma^-_ab.
    const double thermal_cross = std::sqrt(tp.f_L) * std::sqrt(rL_aa * rL_bb) +
                                 std::sqrt(tp.f_R) * std::sqrt(rR_aa * rR_bb);
    double vacuum_cross = 0.0;
    if (tp.spontaneous_interference) {
        vacuum_cross = std::sqrt(tp.f_L) * std::sqrt(tp.gamma_L_aa * tp.gamma_L_bb) +
                       std::sqrt(tp.f_R) * std::sqrt(tp.gamma_R_aa * tp.gamma_R_bb);
    }
    const double up_ab = thermal_cross;
    const double down_ab = thermal_cross + vacuum_cross;

    const double kappa = 0.5 * (up_aa + up_bb + vac_aa + vac_bb);
    const double delta = tp.splitting();

    Generator gen;
    gen.layout = Layout::General;
    gen.a_matrix.resize(4, 4);
    gen.a_matrix << -(2.0 * up_aa + vac_aa), -up_aa, -down_ab, 0.0,
                    -up_bb, -(2.0 * up_bb + vac_bb), -down_ab, 0.0,
                    -(up_ab + 0.5 * down_ab), -(up_ab + 0.5 * down_ab), -kappa, delta,
                    0.0, 0.0, -delta, -kappa;
    gen.drive.resize(4);
    gen.drive << up_aa, up_bb, up_ab, 0.0;
    gen.basis_labels = {"rho_aa", "rho_bb", "re_ab", "im_ab"};

    const bool reducible = tp.f_L == 1.0 && tp.f_R == 0.0 && tp.nbar_R == 0.0 &&
                           !tp.spontaneous_interference;
    if (reducible) gen.params = reduce_to_vsystem(tp);
    return gen;
}

VParams reduce_to_vsystem(const TwoBathParams& params) {
    const TwoBathParams tp = validate(params);
    if (tp.f_L != 1.0 || tp.f_R != 0.0 || tp.nbar_R != 0.0 || tp.spontaneous_interference) {
        throw Error(ErrorCode::ConfigMismatch,
                    "V-system reduction requires f_L = 1, f_R = 0, nbar_R = 0 and no "
                    "spontaneous-emission interference");
    }
    VParams p;
    p.gamma_a = tp.gamma_L_aa + tp.gamma_R_aa;
    p.gamma_b = tp.gamma_L_bb + tp.gamma_R_bb;
    p.delta = tp.splitting();
    p.explicit_pump = true;
    p.r_a = tp.nbar_L * tp.gamma_L_aa;
    p.r_b = tp.nbar_L * tp.gamma_L_bb;
    return validate(p);
}

TwoBathParams transport_from_vsystem(const VParams& params, double nbar_L) {
    const VParams p = validate(params);
    if (!p.is_symmetric() || p.gamma_d != 0.0 || p.gamma_rel != 0.0) {
        throw Error(ErrorCode::ConfigMismatch,
                    "two-bath mapping needs symmetric params without Gamma or gamma_d");
    }
    const double r = p.r_a;
    const double gamma = p.gamma_a;
    const bool feasible = nbar_L > 0.0 ? r / nbar_L <= gamma : (nbar_L == 0.0 && r == 0.0);
    if (!feasible) {
        throw Error(ErrorCode::ConfigMismatch, "nbar_L must be >= r / gamma");
    }
    TwoBathParams tp;
    tp.eps_a = p.delta;
    tp.eps_b = 0.0;
    tp.g = 0.5 * p.delta;
    tp.nbar_L = nbar_L;
    tp.nbar_R = 0.0;
    tp.gamma_L_aa = nbar_L > 0.0 ? r / nbar_L : 0.0;
    tp.gamma_L_bb = tp.gamma_L_aa;
    tp.gamma_R_aa = gamma - tp.gamma_L_aa;
    tp.gamma_R_bb = tp.gamma_R_aa;
    tp.f_L = 1.0;
    tp.f_R = 0.0;
    return validate(tp);
}

double heat_flux(const DensityState& state, double g) noexcept {
    return 4.0 * g * state.im_ab;
}

} // namespace fano
