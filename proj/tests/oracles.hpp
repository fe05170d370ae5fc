// Reference implementations used only by the tests. Nothing here calls into the
// library's solvers.

#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/trapezoidal.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

using Mat3 = std::array<std::array<long double, 3>, 3>;
using Vec3 = std::array<long double, 3>;

struct Sym {
    long double nbar, delta, gamma_d = 0, gamma_rel = 0, gamma = 1;
    long double r() const { return nbar * gamma; }
    long double s() const { return r() + gamma + gamma_d; }
};

// Coefficient matrix and drive of the symmetric equations of motion, written
// term by term from the master equation with rho_gg = 1 - 2 rho_aa.
inline Mat3 sym_matrix(const Sym& p) {
    const long double r = p.r(), g = p.gamma, G = p.gamma_rel, s = p.s(), D = p.delta;
    Mat3 a{};
    // rho_aa' = -(r+g+G) rho_aa + r rho_gg - r R
    a[0] = {-(r + g + G) - 2 * r, -r, 0};
    // R' = -s R + D I + r rho_gg - r rho_aa
    a[1] = {-2 * r - r, -s, D};
    // I' = -D R - s I
    a[2] = {0, -D, -s};
    return a;
}

inline Vec3 sym_drive(const Sym& p) { return {p.r(), p.r(), 0}; }

inline long double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Cramer's rule for A x = b.
inline Vec3 cramer(const Mat3& a, const Vec3& b) {
    const long double d = det3(a);
    Vec3 x{};
    for (int k = 0; k < 3; ++k) {
        Mat3 m = a;
        for (int i = 0; i < 3; ++i) m[i][k] = b[i];
        x[k] = det3(m) / d;
    }
    return x;
}

// Steady state [rho_aa, Re, Im] = -A^{-1} d by cofactors.
inline Vec3 sym_steady(const Sym& p) {
    const Vec3 d = sym_drive(p);
    return cramer(sym_matrix(p), {-d[0], -d[1], -d[2]});
}

// The rational expressions exactly as printed (no rearrangement).
inline Vec3 printed_steady(const Sym& p) {
    const long double r = p.r(), g = p.gamma, G = p.gamma_rel, gd = p.gamma_d, D = p.delta;
    const long double s = r + g + gd;
    const long double den = (3 * r + g + G) * (D * D + s * s) - 3 * r * r * s;
    const long double aa = r * (D * D + (g + gd) * s) / den;
    const long double re = r * (g + G) * s / den;
    return {aa, re, -D / s * re};
}

inline long double printed_det(const Sym& p) {
    const long double r = p.r(), g = p.gamma, G = p.gamma_rel, s = p.s(), D = p.delta;
    return 3 * r * r * s - (3 * r + g + G) * (D * D + s * s);
}

// Coherence-to-population ratio in its printed continued form.
inline long double printed_c(const Sym& p) {
    const long double g = p.gamma, gd = p.gamma_d, D = p.delta;
    return 1 / (1 + gd / g + D * D / (g * p.s()));
}

// Printed derivative formulas (dimensionless n = nbar, x = Delta / gamma).
inline long double printed_d_nbar(long double n, long double x) {
    const long double q = (3 * n + 1) * x * x + (4 * n * n + 5 * n + 1);
    return ((3 * n * n + 2 * n + 1) * x * x + (n * n + 2 * n + 1)) / (q * q);
}
inline long double printed_d_delta(long double n, long double x) {
    const long double q = (3 * n + 1) * x * x + (4 * n * n + 5 * n + 1);
    return -2 * n * (n + 1) * x / (q * q);
}

// General 4x4 system over [rho_aa, rho_bb, Re, Im] from the master equation,
// with rho_gg = 1 - rho_aa - rho_bb substituted by hand.
struct Gen {
    long double gamma_a, gamma_b, r_a, r_b, gamma_rel, gamma_d, delta;
};

inline std::array<std::array<long double, 4>, 4> gen_matrix(const Gen& p) {
    const long double c = std::sqrt(p.r_a * p.r_b);
    const long double k = (p.r_a + p.r_b + p.gamma_a + p.gamma_b + 2 * p.gamma_d) / 2;
    std::array<std::array<long double, 4>, 4> m{};
    m[0] = {-(p.r_a + p.gamma_a + p.gamma_rel) - p.r_a, -p.r_a, -c, 0};
    m[1] = {-p.r_b, -(p.r_b + p.gamma_b + p.gamma_rel) - p.r_b, -c, 0};
    m[2] = {-c - c / 2, -c - c / 2, -k, p.delta};
    m[3] = {0, 0, -p.delta, -k};
    return m;
}

inline std::array<long double, 4> gen_drive(const Gen& p) {
    return {p.r_a, p.r_b, std::sqrt(p.r_a * p.r_b), 0};
}

// Central difference with step h.
inline double central(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2 * h);
}

// Integral over the unit sphere of f(theta, phi) sin(theta): Gauss-Legendre in
// cos(theta), trapezoid in phi.
inline double sphere_integral(const std::function<double(double, double)>& f) {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::trapezoidal;
    auto ring = [&](double u) {
        const double theta = std::acos(std::clamp(u, -1.0, 1.0));
        return trapezoidal([&](double phi) { return f(theta, phi < 2 * std::numbers::pi ? phi : 0.0); }, 0.0,
                           2 * std::numbers::pi, 1e-14);
    };
    return gauss<double, 20>::integrate(ring, -1.0, 1.0);
}

} // namespace oracle
