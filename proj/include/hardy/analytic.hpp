// Truncated Taylor representations of H^2 functions, boundary grids on the
// unit circle, the H^2 inner product, and Cauchy kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/fft.hpp"

namespace hardy {

constexpr double kPi = 3.14159265358979323846;

inline bool finite(const cd& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// lambda in the open disk
struct DiskPoint {
    cd value;
    explicit DiskPoint(cd v) : value(v) {
        if (!(std::abs(v) < 1.0)) throw std::domain_error("DiskPoint: |value| must be < 1");
    }
};

// zeta = e^{i angle} on the circle
struct CirclePoint {
    double angle;  // in [0, 2*pi)
    cd value;
    explicit CirclePoint(double a)
        : angle(std::fmod(std::fmod(a, 2 * kPi) + 2 * kPi, 2 * kPi)),
          value(std::cos(angle), std::sin(angle)) {}
};

// f(z) = sum_{k=0}^{M} coeffs[k] z^k
struct AnalyticFunction {
    std::vector<cd> coeffs;
    std::string label;

    AnalyticFunction() : coeffs(1, cd(0.0)) {}
    explicit AnalyticFunction(std::vector<cd> c, std::string lab = {})
        : coeffs(std::move(c)), label(std::move(lab)) {
        if (coeffs.empty()) coeffs.assign(1, cd(0.0));
        for (const auto& z : coeffs)
            if (!finite(z)) throw std::invalid_argument("AnalyticFunction: non-finite coefficient");
    }

    int degree() const { return int(coeffs.size()) - 1; }
    cd coeff(int k) const { return (k >= 0 && k < int(coeffs.size())) ? coeffs[k] : cd(0.0); }

    double norm() const {
        double s = 0;
        for (const auto& c : coeffs) s += std::norm(c);
        return std::sqrt(s);
    }
    bool is_zero(double tol = 0.0) const {
        for (const auto& c : coeffs)
            if (std::abs(c) > tol) return false;
        return true;
    }
};

// samples[j] = value at e^{2 pi i j / G}
struct BoundaryGrid {
    std::vector<cd> samples;

    BoundaryGrid() = default;
    explicit BoundaryGrid(std::vector<cd> s) : samples(std::move(s)) {
        if (!is_power_of_two(samples.size()))
            throw std::invalid_argument("BoundaryGrid: size must be a power of two");
    }
    std::size_t size() const { return samples.size(); }
    double angle(std::size_t j) const { return 2 * kPi * double(j) / double(size()); }
    cd point(std::size_t j) const { return cd(std::cos(angle(j)), std::sin(angle(j))); }
};

inline std::size_t min_grid_size(int degree) {
    std::size_t g = 4;
    while (g < 4 * std::size_t(degree + 1)) g <<= 1;
    return g;
}

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

inline cd evaluate(const AnalyticFunction& f, cd z) {
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::domain_error("evaluate: point outside the closed disk");
    cd acc(0.0);
    for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = acc * z + f.coeffs[k];
    return acc;
}

inline BoundaryGrid boundary_trace(const AnalyticFunction& f, std::size_t G) {
    if (!is_power_of_two(G) || G < 4 * std::size_t(f.degree() + 1))
        throw std::invalid_argument("boundary_trace: grid must be a power of two >= 4(M+1)");
    std::vector<cd> x(G, cd(0.0));
    std::copy(f.coeffs.begin(), f.coeffs.end(), x.begin());
    // samples_j = sum_k c_k e^{+2 pi i j k / G}
    return BoundaryGrid(ifft_unscaled(std::move(x)));
}

// Discrete Riesz projection composed with truncation to degree M.
inline AnalyticFunction analytic_from_boundary(const BoundaryGrid& g, int M,
                                               std::string label = {}) {
    const std::size_t G = g.size();
    if (G < 4 * std::size_t(M + 1))
        throw std::invalid_argument("analytic_from_boundary: grid too small for degree");
    std::vector<cd> hat = fft(g.samples);
    std::vector<cd> c(std::size_t(M) + 1);
    for (int k = 0; k <= M; ++k) c[k] = hat[k] / double(G);
    return AnalyticFunction(std::move(c), std::move(label));
}

// Coefficientwise pairing; equals the boundary integral of the truncations.
inline cd h2_inner(const AnalyticFunction& f, const AnalyticFunction& g) {
    const std::size_t n = std::min(f.coeffs.size(), g.coeffs.size());
    cd s(0.0);
    for (std::size_t k = 0; k < n; ++k) s += f.coeffs[k] * std::conj(g.coeffs[k]);
    return s;
}

inline double h2_norm(const AnalyticFunction& f) { return f.norm(); }

// k_{lambda,n}(z) = n! z^n / (1 - conj(lambda) z)^{n+1}, truncated at degree M.
inline AnalyticFunction cauchy_kernel(const DiskPoint& lambda, int n, int M) {
    if (n < 0) throw std::invalid_argument("cauchy_kernel: order must be >= 0");
    const cd lb = std::conj(lambda.value);
    std::vector<cd> c(std::size_t(M) + 1, cd(0.0));
    // coefficient of z^k is k!/(k-n)! * lb^{k-n} for k >= n
    cd pw(1.0);
    for (int k = n; k <= M; ++k) {
        double fall = 1.0;
        for (int j = 0; j < n; ++j) fall *= double(k - j);
        c[k] = fall * pw;
        pw *= lb;
    }
    return AnalyticFunction(std::move(c));
}

// ---------------------------------------------------------------------------
// Polynomial helpers
// ---------------------------------------------------------------------------

inline AnalyticFunction derivative(const AnalyticFunction& f, int order = 1) {
    std::vector<cd> c = f.coeffs;
    for (int it = 0; it < order; ++it) {
        if (c.size() <= 1) return AnalyticFunction();
        std::vector<cd> d(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
        c = std::move(d);
    }
    return AnalyticFunction(std::move(c));
}

inline AnalyticFunction multiply(const AnalyticFunction& f, const AnalyticFunction& g,
                                 std::optional<int> truncate_to = std::nullopt) {
    const int deg = f.degree() + g.degree();
    const int M = truncate_to ? std::min(*truncate_to, deg) : deg;
    std::vector<cd> c(std::size_t(M) + 1, cd(0.0));
    for (int i = 0; i <= f.degree(); ++i) {
        if (i > M) break;
        for (int j = 0; j <= g.degree() && i + j <= M; ++j) c[i + j] += f.coeffs[i] * g.coeffs[j];
    }
    return AnalyticFunction(std::move(c));
}

inline AnalyticFunction add(const AnalyticFunction& f, const AnalyticFunction& g, cd wf = cd(1.0),
                            cd wg = cd(1.0)) {
    std::vector<cd> c(std::max(f.coeffs.size(), g.coeffs.size()), cd(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = wf * f.coeff(int(k)) + wg * g.coeff(int(k));
    return AnalyticFunction(std::move(c));
}

inline AnalyticFunction scale(const AnalyticFunction& f, cd w) {
    std::vector<cd> c = f.coeffs;
    for (auto& z : c) z *= w;
    return AnalyticFunction(std::move(c), f.label);
}

inline AnalyticFunction shift_up(const AnalyticFunction& f, int p) {
    std::vector<cd> c(f.coeffs.size() + std::size_t(p), cd(0.0));
    std::copy(f.coeffs.begin(), f.coeffs.end(), c.begin() + p);
    return AnalyticFunction(std::move(c));
}

inline AnalyticFunction truncate(const AnalyticFunction& f, int M) {
    std::vector<cd> c(std::size_t(M) + 1, cd(0.0));
    for (int k = 0; k <= M && k <= f.degree(); ++k) c[k] = f.coeffs[k];
    return AnalyticFunction(std::move(c), f.label);
}

// Synthetic division: f(z) = (z - zeta) q(z) + r. Returns q, stores remainder.
inline AnalyticFunction deflate(const AnalyticFunction& f, cd zeta, cd* remainder = nullptr) {
    const int d = f.degree();
    if (d == 0) {
        if (remainder) *remainder = f.coeffs[0];
        return AnalyticFunction();
    }
    std::vector<cd> q(std::size_t(d), cd(0.0));
    cd carry = f.coeffs[d];
    for (int k = d - 1; k >= 0; --k) {
        q[k] = carry;
        carry = f.coeffs[k] + zeta * carry;
    }
    if (remainder) *remainder = carry;
    return AnalyticFunction(std::move(q));
}

// Order of vanishing of a polynomial at a point, decided by remainder size.
inline int vanishing_order(const AnalyticFunction& f, cd zeta, double tol = 1e-8) {
    AnalyticFunction g = f;
    const double ref = std::max(f.norm(), 1e-300);
    int m = 0;
    while (m <= f.degree()) {
        cd r;
        AnalyticFunction q = deflate(g, zeta, &r);
        if (std::abs(r) > tol * ref) break;
        g = q;
        ++m;
        if (g.degree() == 0 && std::abs(g.coeffs[0]) <= tol * ref) break;
    }
    return m;
}

inline AnalyticFunction monomial(int k, cd c = cd(1.0)) {
    std::vector<cd> v(std::size_t(k) + 1, cd(0.0));
    v[k] = c;
    return AnalyticFunction(std::move(v));
}

inline AnalyticFunction poly_from_roots(const std::vector<cd>& roots) {
    std::vector<cd> c{cd(1.0)};
    for (cd r : roots) {
        // multiply by (z - r)
        std::vector<cd> d(c.size() + 1, cd(0.0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            d[k + 1] += c[k];
            d[k] -= r * c[k];
        }
        c = std::move(d);
    }
    return AnalyticFunction(std::move(c));
}

}  // namespace hardy
