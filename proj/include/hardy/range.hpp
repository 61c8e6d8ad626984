// The range space M(conj(a)) = T_conj(a) H^2 with its range inner product:
// lifts, numerical embeddings, reproducing kernels for interior points and
// derivatives, boundary kernels where (ACa) holds, and Gram matrices.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hardy/regularity.hpp"
#include "hardy/toeplitz.hpp"

namespace hardy {

// f = T_conj(a) u together with the preimage u that defines its norm.
struct RangeElement {
    AnalyticFunction value;
    AnalyticFunction preimage;
    AnalyticFunction symbol_a;
    double residual = 0.0;  // solve residual when the preimage was recovered
};

namespace detail {

inline void require_same_symbol(const RangeElement& x, const RangeElement& y) {
    const int d = std::max(x.symbol_a.degree(), y.symbol_a.degree());
    for (int k = 0; k <= d; ++k)
        if (std::abs(x.symbol_a.coeff(k) - y.symbol_a.coeff(k)) > 1e-12)
            throw std::invalid_argument("range elements carry different symbols");
}

inline void require_outer(const AnalyticFunction& a) {
    if (classify(a).verdict != FunctionClass::Outer)
        throw std::invalid_argument("symbol a must be outer (preimages would not be unique)");
}

}  // namespace detail

inline RangeElement lift(const AnalyticFunction& a, const AnalyticFunction& u, int M = -1) {
    detail::require_outer(a);
    if (M < 0) M = std::max(u.degree(), a.degree());
    RangeElement x;
    x.symbol_a = a;
    x.preimage = truncate(u, M);
    x.value = apply(build_from_taylor(a, true, M), x.preimage);
    x.residual = 0.0;
    return x;
}

// Numerical inversion of T_conj(a); a large residual means f sits outside
// M(conj(a)) at this truncation.
inline RangeElement embed(const AnalyticFunction& a, const AnalyticFunction& f,
                          double tau = 1e-10, int M = -1) {
    detail::require_outer(a);
    if (M < 0) M = std::max(f.degree(), a.degree());
    auto r = solve(build_from_taylor(a, true, M), truncate(f, M), tau);
    RangeElement x;
    x.symbol_a = a;
    x.value = truncate(f, M);
    x.preimage = r.solution;
    x.residual = r.residual;
    return x;
}

inline cd range_inner(const RangeElement& x, const RangeElement& y) {
    detail::require_same_symbol(x, y);
    return h2_inner(x.preimage, y.preimage);
}

inline double range_norm(const RangeElement& x) { return x.preimage.norm(); }

// Reproducing kernel for the n-th derivative at an interior or boundary point.
struct RangeKernel {
    RangeElement base;
    cd location;
    int order = 0;
    bool boundary_flag = false;
};

// k^a_{lambda,n} = T_{|a|^2} k_{lambda,n}, preimage a k_{lambda,n}.
inline RangeKernel point_kernel(const AnalyticFunction& a, const DiskPoint& lambda, int n, int M,
                                bool allow_extreme = false) {
    if (std::abs(lambda.value) > 0.99 && !allow_extreme)
        throw std::domain_error("point_kernel: |lambda| > 0.99 needs the override flag "
                                "(truncation tails dominate)");
    const auto k = cauchy_kernel(lambda, n, M);
    const std::size_t G = min_grid_size(M + a.degree());
    RangeKernel out;
    out.base.symbol_a = a;
    out.base.preimage = multiply(a, k, M);
    out.base.value = apply(build(modulus_squared_symbol(a, G), M), k);
    out.location = lambda.value;
    out.order = n;
    return out;
}

// ||k^a_{lambda,N}||^2 = (N!)^2 int |a(e^{it})|^2 / |e^{it}-lambda|^{2N+2} dt/2pi,
// by banded quadrature refined toward arg(lambda) down to the kernel scale
// 1 - |lambda|.
inline double kernel_norm_sq(const AnalyticFunction& a, const DiskPoint& lambda, int N) {
    const double t0 = std::arg(lambda.value);
    const double rho = std::abs(lambda.value);
    const double d = 1.0 - rho;
    double fact = 1;
    for (int i = 2; i <= N; ++i) fact *= i;
    // Factor out the vanishing of a in the approach direction: with
    // a = (z - zeta0)^m q, the modulus |a(e^{it})|^2 = (2 sin((t-t0)/2))^{2m}
    // |q(e^{it})|^2 is exact and free of the cancellation that makes Horner
    // evaluation collapse to zero within 1e-8 of a boundary root.
    const cd zeta0 = (rho > 0) ? lambda.value / rho : cd(1.0);
    AnalyticFunction q = a;
    int m = 0;
    while (q.degree() > 0) {
        cd rem;
        auto next = deflate(q, zeta0, &rem);
        if (std::abs(rem) > 1e-8 * std::max(a.norm(), 1.0)) break;
        q = next;
        ++m;
    }
    auto f = [&](double t) {
        const cd e(std::cos(t), std::sin(t));
        const double s2 = 4.0 * std::pow(std::sin((t - t0) / 2), 2.0);
        const double num = std::pow(s2, double(m)) * std::norm(evaluate(q, e));
        const double den2 = d * d + rho * s2;  // |e^{it} - lambda|^2
        return fact * fact * num / std::pow(den2, N + 1.0) / (2 * kPi);
    };
    double acc = integrate_smooth(f, t0 + kPi / 2, t0 + 2 * kPi - kPi / 2, 16);
    double hi = kPi / 2;
    while (hi > d / 8 && hi > 1e-14) {
        const double lo = hi / 2;
        acc += band_pair(f, t0, lo, hi);
        hi = lo;
    }
    acc += gauss_panel(f, t0 - hi, t0 + hi);
    return acc;
}

// Boundary kernel at zeta0 of order l, defined when (ACa) holds there. The
// preimage a k_{zeta0,l} = l! z^l a / (1 - conj(zeta0) z)^{l+1} comes from
// exact deflation: with a = (z - zeta0)^{l+1} q this is l! z^l (-zeta0)^{l+1} q,
// since (z - zeta0)/(1 - conj(zeta0) z) = -zeta0 identically.
inline RangeKernel boundary_kernel(const AnalyticFunction& a, const CirclePoint& zeta0, int l,
                                   int M = -1) {
    if (!ac_check(a, zeta0, l).finite())
        throw std::domain_error("boundary_kernel: (ACa) fails; the kernel does not exist");
    if (M < 0) M = std::max(4 * a.degree(), 16);
    AnalyticFunction q = a;
    for (int i = 0; i <= l; ++i) {
        cd rem;
        q = deflate(q, zeta0.value, &rem);
        if (std::abs(rem) > 1e-8 * std::max(a.norm(), 1.0))
            throw std::domain_error("boundary_kernel: a does not vanish to order l+1 at zeta0");
    }
    double fact = 1;
    for (int i = 2; i <= l; ++i) fact *= i;
    const cd c = fact * std::pow(-zeta0.value, l + 1);
    RangeKernel out;
    out.base.symbol_a = a;
    out.base.preimage = truncate(shift_up(scale(q, c), l), M);
    out.base.value = apply(build_from_taylor(a, true, M), out.base.preimage);
    out.location = zeta0.value;
    out.order = l;
    out.boundary_flag = true;
    return out;
}

inline Matrix gram(const std::vector<RangeKernel>& kernels) {
    const int n = int(kernels.size());
    Matrix Gm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Gm(i, j) = range_inner(kernels[i].base, kernels[j].base);
    return Gm;
}

}  // namespace hardy
