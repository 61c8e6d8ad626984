// Gauss-Legendre panels and dyadically refined quadrature toward boundary
// singularities. All circle integrals are normalized against dt/(2*pi).
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "hardy/analytic.hpp"

namespace hardy {

// 16-point Gauss-Legendre rule on [-1, 1].
struct Gauss16 {
    static const std::array<double, 16>& nodes() {
        static const std::array<double, 16> x = {
            -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
            -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
            0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
            0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
        return x;
    }
    static const std::array<double, 16>& weights() {
        static const std::array<double, 16> w = {
            0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
            0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
            0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
            0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
        return w;
    }
};

inline double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < 16; ++i)
        s += Gauss16::weights()[i] * f(mid + half * Gauss16::nodes()[i]);
    return s * half;
}

inline double integrate_smooth(const std::function<double(double)>& f, double a, double b,
                               int panels = 8) {
    double s = 0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) s += gauss_panel(f, a + p * h, a + (p + 1) * h);
    return s;
}

// Integral over [t0 + lo, t0 + hi] plus the mirror band [t0 - hi, t0 - lo].
inline double band_pair(const std::function<double(double)>& f, double t0, double lo, double hi) {
    return gauss_panel(f, t0 + lo, t0 + hi) + gauss_panel(f, t0 - hi, t0 - lo);
}

// Partial integrals of f over the circle minus a shrinking arc around t0.
// levels[h] = integral over {t : 2^-h * H <= |t - t0| <= pi}, h = 0..L.
// The integrand may blow up at t0; each dyadic band is handled by one Gauss
// panel per side, which is accurate for power-law behavior.
struct ShrinkingArcSums {
    std::vector<double> partial;  // cumulative, level order
    double base_halfwidth;
};

inline ShrinkingArcSums shrinking_arc_partials(const std::function<double(double)>& f, double t0,
                                               int levels, double base_halfwidth = kPi / 2) {
    ShrinkingArcSums out;
    out.base_halfwidth = base_halfwidth;
    double acc = integrate_smooth([&](double t) { return f(t); }, t0 + base_halfwidth,
                                  t0 + 2 * kPi - base_halfwidth, 16);
    out.partial.push_back(acc);
    double hi = base_halfwidth;
    for (int h = 1; h <= levels; ++h) {
        const double lo = hi / 2;
        acc += band_pair(f, t0, lo, hi);
        out.partial.push_back(acc);
        hi = lo;
        if (!std::isfinite(acc)) break;
    }
    return out;
}

// Full-circle integral of a function with known power-law/log singular points,
// refined dyadically around each of them. Normalization: plain dt integral.
inline double integrate_circle_singular(const std::function<double(double)>& f,
                                        const std::vector<double>& singular_angles,
                                        int levels = 48) {
    if (singular_angles.empty()) return integrate_smooth(f, 0, 2 * kPi, 32);
    // Partition into arcs between singular points; refine toward both ends.
    std::vector<double> s = singular_angles;
    std::sort(s.begin(), s.end());
    double total = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double a = s[i];
        const double b = (i + 1 < s.size()) ? s[i + 1] : s[0] + 2 * kPi;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        // bands accumulating toward both endpoints
        double hi = half;
        for (int h = 0; h < levels; ++h) {
            const double lo = hi / 2;
            total += gauss_panel(f, a + lo, a + hi);
            total += gauss_panel(f, b - hi, b - lo);
            hi = lo;
        }
        (void)mid;
    }
    return total;
}

// Herglotz integral H(z) = int (e^{it}+z)/(e^{it}-z) u(t) dt/2pi with dyadic
// refinement near arg(z) (kernel peaking as |z| -> 1) and near declared
// singular angles of u.
inline cd herglotz_integral(const std::function<double(double)>& u,
                            const std::vector<double>& u_singular, cd z, int levels = 52) {
    const double d = 1.0 - std::abs(z);
    std::vector<double> anchors = u_singular;
    anchors.push_back(std::arg(z));
    std::sort(anchors.begin(), anchors.end());
    // de-duplicate nearby anchors
    std::vector<double> uniq;
    for (double a : anchors)
        if (uniq.empty() || a - uniq.back() > 1e-9) uniq.push_back(a);
    cd total(0.0);
    auto real_part = [&](double t, bool imag) {
        const cd e(std::cos(t), std::sin(t));
        const cd k = (e + z) / (e - z) * (u(t) / (2 * kPi));
        return imag ? k.imag() : k.real();
    };
    for (std::size_t i = 0; i < uniq.size(); ++i) {
        const double a = uniq[i];
        const double b = (i + 1 < uniq.size()) ? uniq[i + 1] : uniq[0] + 2 * kPi;
        const double half = 0.5 * (b - a);
        double hi = half;
        for (int h = 0; h < levels; ++h) {
            double lo = hi / 2;
            // stop refining once bands are well below the kernel scale
            if (hi < std::max(d, 1e-300) / 8 && hi < 1e-12) lo = 0.0;
            total += cd(gauss_panel([&](double t) { return real_part(t, false); }, a + lo, a + hi),
                        gauss_panel([&](double t) { return real_part(t, true); }, a + lo, a + hi));
            total += cd(gauss_panel([&](double t) { return real_part(t, false); }, b - hi, b - lo),
                        gauss_panel([&](double t) { return real_part(t, true); }, b - hi, b - lo));
            if (lo == 0.0) break;
            hi = lo;
        }
    }
    return total;
}

}  // namespace hardy
