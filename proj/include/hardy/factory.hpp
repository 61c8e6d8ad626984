// Constructors for the standard function classes: finite Blaschke products,
// atomic singular inner functions, outer functions recovered from boundary
// modulus, Pythagorean mates, and inner/outer classification.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hardy/analytic.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Blaschke products
// ---------------------------------------------------------------------------

// A zero may carry its exact gap 1 - lambda. For the near-boundary families
// (1 - 4^-q etc.) the gap is exactly representable while 1 - double(lambda)
// is not, and the compensated evaluation below depends on it.
struct BlaschkeZero {
    cd value;
    std::optional<cd> one_minus;  // exact 1 - lambda when known

    BlaschkeZero(cd v) : value(v) {
        if (!(std::abs(v) < 1.0)) throw std::domain_error("BlaschkeZero: |zero| must be < 1");
    }
    static BlaschkeZero from_gap(cd gap) {
        BlaschkeZero z(cd(1.0) - gap);
        z.one_minus = gap;
        return z;
    }
    cd gap() const { return one_minus ? *one_minus : cd(1.0) - value; }
};

struct BlaschkeSpec {
    std::vector<BlaschkeZero> zeros;
};

// One factor (|a|/a)(a - z)/(1 - conj(a) z), with the factor z when a = 0.
// The denominator is assembled as (1 - conj(a)) + conj(a)(1 - z) so that the
// near-1 cancellation is carried by the gaps instead of the values.
inline cd blaschke_factor_at(const BlaschkeZero& zero, cd z,
                             std::optional<cd> one_minus_z = std::nullopt) {
    const cd a = zero.value;
    if (a == cd(0.0)) return z;
    const cd gz = one_minus_z ? *one_minus_z : cd(1.0) - z;
    const cd ga = zero.gap();
    const cd abar = std::conj(cd(1.0) - ga);
    const cd num = gz - ga;                  // a - z = (1 - z) - (1 - a)
    const cd den = std::conj(ga) + abar * gz;  // 1 - conj(a) z
    return (std::abs(a) / a) * num / den;
}

inline cd blaschke_at(const BlaschkeSpec& spec, cd z,
                      std::optional<cd> one_minus_z = std::nullopt) {
    cd prod(1.0);
    for (const auto& zero : spec.zeros) prod *= blaschke_factor_at(zero, z, one_minus_z);
    return prod;
}

// Taylor coefficients of the product, truncated at degree M.
inline AnalyticFunction blaschke_poly(const BlaschkeSpec& spec, int M) {
    AnalyticFunction prod = monomial(0);
    for (const auto& zero : spec.zeros) {
        const cd a = zero.value;
        std::vector<cd> f(std::size_t(M) + 1, cd(0.0));
        if (a == cd(0.0)) {
            if (M >= 1) f[1] = 1.0;
        } else {
            // (|a|/a) [a - (1-|a|^2) sum_{k>=1} conj(a)^{k-1} z^k]
            const cd u = std::abs(a) / a;
            const double om = 1.0 - std::norm(a);
            f[0] = u * a;
            cd pw(1.0);
            for (int k = 1; k <= M; ++k) {
                f[k] = -u * om * pw;
                pw *= std::conj(a);
            }
        }
        prod = multiply(prod, AnalyticFunction(std::move(f)), M);
    }
    prod.label = "blaschke";
    return prod;
}

// ---------------------------------------------------------------------------
// Singular inner functions with finitely many atoms
// ---------------------------------------------------------------------------

struct SingularInnerSpec {
    std::vector<std::pair<CirclePoint, double>> atoms;  // (location, weight > 0)

    void validate() const {
        for (const auto& [xi, c] : atoms)
            if (!(c > 0)) throw std::invalid_argument("SingularInnerSpec: weights must be > 0");
    }
};

inline cd singular_inner_at(const SingularInnerSpec& spec, cd z) {
    spec.validate();
    cd expo(0.0);
    for (const auto& [xi, c] : spec.atoms) {
        const cd d = xi.value - z;
        if (std::abs(d) < 1e-15) throw std::domain_error("singular_inner_at: z hits an atom");
        expo += c * (xi.value + z) / d;
    }
    return std::exp(-expo);
}

// ---------------------------------------------------------------------------
// Outer functions from boundary log-modulus
// ---------------------------------------------------------------------------

// A root of the boundary modulus sitting exactly on a grid point, with its
// (possibly fractional) order.
struct LogSingularity {
    std::size_t index;
    double multiplicity;
};

namespace detail {

inline bool log_sample_singular(double u) { return !std::isfinite(u) || u < -300.0; }

// Estimate the order of the root at grid point j from the two neighbors on
// each side: u(t) ~ m log|2 sin((t - t_j)/2)| + smooth, so the decrement
// between successive neighbors isolates m.
inline double estimate_multiplicity(const std::vector<double>& u, std::size_t j) {
    const std::size_t G = u.size();
    const double h = 2 * kPi / double(G);
    auto at = [&](std::ptrdiff_t k) { return u[std::size_t((std::ptrdiff_t(j) + k + 2 * std::ptrdiff_t(G)) % std::ptrdiff_t(G))]; };
    const double denom = std::log(2.0 * std::cos(h / 2));  // log(sin h / sin(h/2))
    const double rise = 0.5 * ((at(2) + at(-2)) - (at(1) + at(-1)));
    return rise / denom;
}

// Smooth-part value at a removed singular grid point, by 4-point Lagrange
// extrapolation from each side, averaged.
inline double extrapolate_at(const std::vector<double>& s, std::size_t j) {
    const std::size_t G = s.size();
    auto at = [&](std::ptrdiff_t k) { return s[std::size_t((std::ptrdiff_t(j) + k + 2 * std::ptrdiff_t(G)) % std::ptrdiff_t(G))]; };
    auto extrap = [&](int sgn) {
        // f(0) from f(1),f(2),f(3),f(4): 4 f1 - 6 f2 + 4 f3 - f4
        return 4 * at(sgn) - 6 * at(2 * sgn) + 4 * at(3 * sgn) - at(4 * sgn);
    };
    return 0.5 * (extrap(+1) + extrap(-1));
}

// Taylor coefficients of (1 - conj(zeta) z)^mu via the binomial series.
inline AnalyticFunction binomial_factor(cd zeta, double mu, int M) {
    std::vector<cd> c(std::size_t(M) + 1);
    c[0] = 1.0;
    cd pw(1.0);
    double binom = 1.0;
    for (int k = 1; k <= M; ++k) {
        binom *= (mu - double(k - 1)) / double(k);
        pw *= -std::conj(zeta);
        c[k] = binom * pw;
    }
    return AnalyticFunction(std::move(c));
}

}  // namespace detail

// Recover the outer function with the given boundary log-modulus and positive
// value at the origin: exp of the analytic completion of the Poisson
// extension. Roots of the modulus sitting on grid points (samples of -inf or
// below the floor) are split off as explicit factors (1 - conj(zeta) z)^m so
// the remaining log-modulus is smooth and the transform stays spectrally
// accurate. Orders are estimated from neighboring samples unless supplied.
inline AnalyticFunction outer_from_modulus(
    const BoundaryGrid& log_modulus, int M,
    std::optional<std::vector<LogSingularity>> known_singularities = std::nullopt) {
    const std::size_t G = log_modulus.size();
    if (G < 4 * std::size_t(M + 1))
        throw std::invalid_argument("outer_from_modulus: grid too small for degree");
    std::vector<double> u(G);
    for (std::size_t j = 0; j < G; ++j) {
        if (std::abs(log_modulus.samples[j].imag()) > 1e-12 &&
            std::isfinite(log_modulus.samples[j].imag()))
            throw std::invalid_argument("outer_from_modulus: log-modulus must be real");
        u[j] = log_modulus.samples[j].real();
    }

    std::vector<LogSingularity> sing;
    if (known_singularities) {
        sing = *known_singularities;
    } else {
        for (std::size_t j = 0; j < G; ++j)
            if (detail::log_sample_singular(u[j])) {
                const double m = detail::estimate_multiplicity(u, j);
                const double mr = std::round(m);
                if (std::abs(m - mr) > 0.15 || mr < 0.5)
                    throw std::domain_error(
                        "outer_from_modulus: log-modulus looks non-integrable near grid point " +
                        std::to_string(j));
                sing.push_back({j, mr});
            }
    }
    for (std::size_t i = 0; i + 1 < sing.size(); ++i)
        if (sing[i + 1].index - sing[i].index < 3)
            throw std::domain_error("outer_from_modulus: adjacent singular samples (non-integrable)");

    // subtract the model parts; what remains is smooth on the grid
    std::vector<double> smooth = u;
    for (const auto& s : sing) {
        const double ts = 2 * kPi * double(s.index) / double(G);
        for (std::size_t j = 0; j < G; ++j) {
            if (j == s.index) continue;
            const double t = 2 * kPi * double(j) / double(G);
            smooth[j] -= s.multiplicity * std::log(std::abs(2.0 * std::sin((t - ts) / 2)));
        }
    }
    for (const auto& s : sing) smooth[s.index] = detail::extrapolate_at(smooth, s.index);
    for (double v : smooth)
        if (!std::isfinite(v))
            throw std::domain_error("outer_from_modulus: non-integrable log-modulus");

    // analytic completion F with Im F(0) = 0: F = c_0 + 2 sum_{k>=1} u_hat_k z^k
    std::vector<cd> x(G);
    for (std::size_t j = 0; j < G; ++j) x[j] = smooth[j];
    std::vector<cd> hat = fft(std::move(x));
    std::vector<cd> F(G, cd(0.0));
    F[0] = hat[0] / double(G);
    for (std::size_t k = 1; k < G / 2; ++k) F[k] = 2.0 * hat[k] / double(G);

    // boundary samples of exp(F) times the model factors
    std::vector<cd> Fb = ifft_unscaled(std::move(F));
    std::vector<cd> samples(G);
    for (std::size_t j = 0; j < G; ++j) samples[j] = std::exp(Fb[j]);
    for (const auto& s : sing) {
        const double ts = 2 * kPi * double(s.index) / double(G);
        const cd zeta(std::cos(ts), std::sin(ts));
        const double mu = s.multiplicity;
        for (std::size_t j = 0; j < G; ++j) {
            const double t = 2 * kPi * double(j) / double(G);
            const cd w = cd(1.0) - std::conj(zeta) * cd(std::cos(t), std::sin(t));
            // (1 - conj(zeta) e^{it})^mu, principal branch; 0 at the root
            if (j == s.index || std::abs(w) == 0.0)
                samples[j] = cd(0.0);
            else
                samples[j] *= std::exp(mu * std::log(w));
        }
    }
    AnalyticFunction out = analytic_from_boundary(BoundaryGrid(std::move(samples)), M, "outer");
    return out;
}

// Pointwise outer value exp(H(z)) from a log-modulus callable, via the
// Herglotz integral. Used near the boundary where truncated coefficients
// cannot be trusted.
inline cd outer_at(const std::function<double(double)>& log_modulus,
                   const std::vector<double>& singular_angles, cd z) {
    return std::exp(herglotz_integral(log_modulus, singular_angles, z));
}

// ---------------------------------------------------------------------------
// Pythagorean mate
// ---------------------------------------------------------------------------

// The outer b with |a|^2 + |b|^2 = 1 on the circle and b(0) > 0.
inline AnalyticFunction pythagorean_mate(const AnalyticFunction& a, int M = -1,
                                         std::size_t G = 0) {
    if (M < 0) M = std::max(4 * a.degree(), 64);
    if (G == 0) G = std::max<std::size_t>(min_grid_size(M), 1024);
    const BoundaryGrid tr = boundary_trace(truncate(a, int(G / 4) - 1), G);
    std::vector<cd> logs(G);
    for (std::size_t j = 0; j < G; ++j) {
        const double m2 = std::norm(tr.samples[j]);
        if (m2 > 1.0 + 1e-8)
            throw std::domain_error("pythagorean_mate: |a| exceeds 1 on the boundary");
        const double rem = 1.0 - std::min(m2, 1.0);
        logs[j] = (rem == 0.0) ? cd(-std::numeric_limits<double>::infinity())
                               : cd(0.5 * std::log(rem));
    }
    AnalyticFunction b = outer_from_modulus(BoundaryGrid(std::move(logs)), M);
    b.label = "mate";
    return b;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class FunctionClass { Inner, Outer, Neither, Inconclusive };

struct Classification {
    FunctionClass verdict;
    double inner_residual;    // worst |(|f| - 1)| off the exceptional set
    double jensen_residual;   // |log|f(0)| - mean boundary log|f||
};

inline const char* to_string(FunctionClass c) {
    switch (c) {
        case FunctionClass::Inner: return "inner";
        case FunctionClass::Outer: return "outer";
        case FunctionClass::Neither: return "neither";
        default: return "inconclusive";
    }
}

inline Classification classify(const AnalyticFunction& f, std::size_t G = 0) {
    if (f.is_zero(0.0)) throw std::invalid_argument("classify: zero function");
    if (G == 0) G = std::max<std::size_t>(2 * min_grid_size(f.degree()), 512);
    const BoundaryGrid tr = boundary_trace(f, G);

    // Inner test: boundary modulus 1, ignoring the worst 2% of grid points
    // (kernels of zeros/atoms sitting on the grid).
    std::vector<double> dev(G);
    for (std::size_t j = 0; j < G; ++j) dev[j] = std::abs(std::abs(tr.samples[j]) - 1.0);
    std::sort(dev.begin(), dev.end());
    const std::size_t keep = G - std::max<std::size_t>(1, G / 50);
    const double inner_res = dev[keep - 1];

    // Jensen test: log|f(0)| equals the boundary mean of log|f|. Grid points
    // where f vanishes are removed with the exact correction
    // sum_{j != root} log|zeta_j - zeta_root| = log G per root order.
    double maxmod = 0;
    for (const auto& s : tr.samples) maxmod = std::max(maxmod, std::abs(s));
    std::vector<double> logs(G);
    std::vector<std::size_t> sing;
    for (std::size_t j = 0; j < G; ++j) {
        const double m = std::abs(tr.samples[j]);
        if (m < 1e-13 * maxmod) {
            sing.push_back(j);
            logs[j] = 0;
        } else {
            logs[j] = std::log(m);
        }
    }
    // exact grid identity: sum_{j != r} log|zeta_j - zeta_r| = log G, so each
    // on-grid root of order m contributes m log G; the smooth log value at the
    // root itself is restored by extrapolation after the model is removed
    std::vector<double> smooth = logs;
    double mean = 0;
    for (std::size_t r : sing) {
        const double m = std::round(std::max(detail::estimate_multiplicity(logs, r), 1.0));
        mean -= m * std::log(double(G));
        const double tr = 2 * kPi * double(r) / double(G);
        for (std::size_t j = 0; j < G; ++j) {
            if (j == r) continue;
            const double t = 2 * kPi * double(j) / double(G);
            smooth[j] -= m * std::log(std::abs(2.0 * std::sin((t - tr) / 2)));
        }
    }
    for (std::size_t r : sing) smooth[r] = detail::extrapolate_at(smooth, r);
    for (std::size_t j = 0; j < G; ++j) mean += logs[j];
    for (std::size_t r : sing) mean += smooth[r];
    // pairs of distinct roots: each root's model was never sampled at the
    // other roots (their log samples were zeroed), so add those terms back
    for (std::size_t r : sing)
        for (std::size_t r2 : sing) {
            if (r == r2) continue;
            const double m = std::round(std::max(detail::estimate_multiplicity(logs, r), 1.0));
            const double dt = 2 * kPi * (double(r2) - double(r)) / double(G);
            mean += m * std::log(std::abs(2.0 * std::sin(dt / 2)));
        }
    mean /= double(G);
    const double f0 = std::abs(f.coeffs[0]);
    const double jensen = (f0 == 0.0) ? std::numeric_limits<double>::infinity()
                                      : std::abs(std::log(f0) - mean);

    FunctionClass v;
    if (inner_res <= 1e-6)
        v = FunctionClass::Inner;
    else if (jensen <= 1e-6)
        v = FunctionClass::Outer;
    else if (inner_res >= 1e-3 && jensen >= 1e-3)
        v = FunctionClass::Neither;
    else
        v = FunctionClass::Inconclusive;
    return {v, inner_res, jensen};
}

inline bool is_outer(const AnalyticFunction& f) {
    return classify(f).verdict == FunctionClass::Outer;
}
inline bool is_inner(const AnalyticFunction& f) {
    return classify(f).verdict == FunctionClass::Inner;
}

}  // namespace hardy
