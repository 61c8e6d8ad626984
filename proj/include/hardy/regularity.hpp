// Boundary regularity diagnostics: the (ACa) integral test, the (FM-cont) /
// (AC-cont) series-and-integral tests, Stolz-region probes, derivative decay
// rates, and the analytic-continuation obstruction.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardy/factory.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

enum class ConditionId { ACa, FMCont, ACCont, A2 };

inline const char* to_string(ConditionId c) {
    switch (c) {
        case ConditionId::ACa: return "ACa";
        case ConditionId::FMCont: return "FM-cont";
        case ConditionId::ACCont: return "AC-cont";
        default: return "A2";
    }
}

enum class Verdict { Finite, Divergent };

// Refined partial sums with the verdict they support. A Finite verdict needs
// the last three successive relative increments below 1e-4; Divergent needs a
// 1e6x blow-up over level 0 or growth ratios >= 1.5 across five levels. An
// exhausted level budget with neither pattern counts as Divergent: slow
// (logarithmic) divergence produces exactly that signature, while every
// convergent integral in scope settles long before the budget.
struct RegularityReport {
    Verdict verdict = Verdict::Divergent;
    double value = 0.0;  // last partial; the integral value when Finite
    std::vector<std::pair<int, double>> levels;
    ConditionId condition_id = ConditionId::ACa;
    std::string parameters;
    bool budget_exhausted = false;

    bool finite() const { return verdict == Verdict::Finite; }
};

namespace detail {

// Apply the verdict rules to cumulative partials, truncating the level list
// at the first level where a rule fires.
inline RegularityReport judge_partials(const std::vector<double>& partial, ConditionId id) {
    RegularityReport rep;
    rep.condition_id = id;
    const double base = std::max(std::abs(partial.empty() ? 0.0 : partial[0]), 1e-300);
    for (std::size_t h = 0; h < partial.size(); ++h) {
        rep.levels.emplace_back(int(h), partial[h]);
        rep.value = partial[h];
        if (!std::isfinite(partial[h]) || partial[h] > 1e6 * base) {
            rep.verdict = Verdict::Divergent;
            return rep;
        }
        if (h >= 5) {
            bool growing = true;
            for (std::size_t i = h - 4; i <= h; ++i)
                if (!(partial[i] >= 1.5 * partial[i - 1])) growing = false;
            if (growing) {
                rep.verdict = Verdict::Divergent;
                return rep;
            }
        }
        if (h >= 3) {
            bool settled = true;
            for (std::size_t i = h - 2; i <= h; ++i) {
                const double inc = std::abs(partial[i] - partial[i - 1]);
                if (!(inc < 1e-4 * std::max(std::abs(partial[i]), 1e-300))) settled = false;
            }
            if (settled) {
                rep.verdict = Verdict::Finite;
                // the verdict is made, but the deeper levels still carry a
                // sliver of the integral; report the fully refined value
                for (std::size_t i = h + 1; i < partial.size(); ++i)
                    if (std::isfinite(partial[i])) rep.value = partial[i];
                return rep;
            }
        }
    }
    rep.verdict = Verdict::Divergent;
    rep.budget_exhausted = true;
    return rep;
}

}  // namespace detail

// (ACa) at (zeta0, N): dyadic-refinement quadrature of
// int |a(e^{it})|^2 / |e^{it} - zeta0|^{2N+2} dt/2pi. For polynomial input
// the analytic shortcut (Finite iff N <= m-1, m the vanishing order at
// zeta0) is computed as well and must agree with the quadrature verdict.
inline RegularityReport ac_check(const AnalyticFunction& a, const CirclePoint& zeta0, int N,
                                 int levels = 40) {
    if (a.is_zero(0.0)) throw std::invalid_argument("ac_check: a is identically zero");
    const cd z0 = zeta0.value;
    // Factored integrand: with a = (z - z0)^m q and |e^{it} - z0| =
    // 2|sin((t-t0)/2)|, |a|^2 / |e^{it} - z0|^{2N+2} becomes
    // (4 sin^2((t-t0)/2))^{m-N-1} |q(e^{it})|^2, which stays accurate on the
    // finest arcs where direct Horner evaluation of a cancels to zero.
    const int m = vanishing_order(a, z0);
    AnalyticFunction q = a;
    for (int i = 0; i < m; ++i) q = deflate(q, z0);
    auto f = [&](double t) {
        const cd e(std::cos(t), std::sin(t));
        const double s2 = 4.0 * std::pow(std::sin((t - zeta0.angle) / 2), 2.0);
        return std::pow(s2, m - N - 1.0) * std::norm(evaluate(q, e)) / (2 * kPi);
    };
    auto sums = shrinking_arc_partials(f, zeta0.angle, levels);
    RegularityReport rep = detail::judge_partials(sums.partial, ConditionId::ACa);
    rep.parameters = "zeta0=" + std::to_string(zeta0.angle) + ", N=" + std::to_string(N);

    const bool finite_shortcut = (N <= m - 1);
    if (finite_shortcut != rep.finite())
        throw std::runtime_error("ac_check: quadrature verdict contradicts the vanishing-order "
                                 "shortcut (grid too coarse)");
    return rep;
}

// (FM-cont) data: Blaschke zeros, singular atoms, and optionally the boundary
// log-modulus of the outer part as a callable (refinable past any grid). The
// absent-log-term case is (AC-cont).
struct FmData {
    std::vector<BlaschkeZero> zeros;
    std::vector<std::pair<CirclePoint, double>> atoms;
    std::optional<std::function<double(double)>> log_modulus;  // log|b(e^{it})|
    std::vector<double> log_singular_angles;                   // where log|b| blows up
};

inline RegularityReport fm_check(const FmData& data, const CirclePoint& zeta0, int N,
                                 int levels = 40) {
    const cd z0 = zeta0.value;
    const double expo = 2.0 * N + 2.0;

    // zero series: partial sums, judged like refinement levels so geometric
    // growth of the terms registers as divergence of the underlying family
    std::vector<double> zero_partials;
    double zsum = 0;
    for (const auto& z : data.zeros) {
        const double dist = std::abs(z0 - z.value);
        if (dist < 1e-14) {
            zsum = std::numeric_limits<double>::infinity();
            zero_partials.push_back(zsum);
            break;
        }
        zsum += (1.0 - std::abs(z.value)) / std::pow(dist, expo);
        zero_partials.push_back(zsum);
    }
    if (!zero_partials.empty()) {
        auto zr = detail::judge_partials(zero_partials, ConditionId::FMCont);
        // a short finite list with no divergence pattern is just a finite sum
        if (!zr.budget_exhausted && zr.verdict == Verdict::Divergent) {
            zr.parameters = "zero series";
            return zr;
        }
    }

    double asum = 0;
    for (const auto& [xi, c] : data.atoms) {
        const double dist = std::abs(z0 - xi.value);
        if (dist < 1e-14) {
            RegularityReport rep;
            rep.verdict = Verdict::Divergent;
            rep.condition_id = data.log_modulus ? ConditionId::FMCont : ConditionId::ACCont;
            rep.parameters = "atom at zeta0";
            return rep;
        }
        asum += c / std::pow(dist, expo);
    }

    RegularityReport rep;
    if (data.log_modulus) {
        auto f = [&](double t) {
            const cd e(std::cos(t), std::sin(t));
            double u = std::abs((*data.log_modulus)(t));
            if (!std::isfinite(u)) u = 0;  // measure-zero spike; bands never touch it
            return u / std::pow(std::abs(e - z0), expo) / (2 * kPi);
        };
        auto sums = shrinking_arc_partials(f, zeta0.angle, levels);
        for (auto& p : sums.partial) p += zsum + asum;
        rep = detail::judge_partials(sums.partial, ConditionId::FMCont);
    } else {
        rep = detail::judge_partials({zsum + asum, zsum + asum, zsum + asum, zsum + asum},
                                     ConditionId::ACCont);
        rep.levels.resize(1);
    }
    rep.condition_id = data.log_modulus ? ConditionId::FMCont : ConditionId::ACCont;
    rep.parameters = "zeta0=" + std::to_string(zeta0.angle) + ", N=" + std::to_string(N);
    return rep;
}

// Grid wrapper: linear interpolation of a sampled log-modulus.
inline RegularityReport fm_check(const FmData& zeros_atoms, const BoundaryGrid& log_modulus_b,
                                 const CirclePoint& zeta0, int N, int levels = 40) {
    FmData data = zeros_atoms;
    const std::size_t G = log_modulus_b.size();
    std::vector<double> u(G);
    for (std::size_t j = 0; j < G; ++j) u[j] = log_modulus_b.samples[j].real();
    data.log_modulus = [u, G](double t) {
        double x = std::fmod(std::fmod(t, 2 * kPi) + 2 * kPi, 2 * kPi) / (2 * kPi) * double(G);
        const std::size_t j = std::size_t(x) % G;
        const double frac = x - std::floor(x);
        const double a = u[j], b = u[(j + 1) % G];
        if (!std::isfinite(a) || !std::isfinite(b)) return std::min(a, b);
        return (1 - frac) * a + frac * b;
    };
    for (std::size_t j = 0; j < G; ++j)
        if (!std::isfinite(u[j])) data.log_singular_angles.push_back(log_modulus_b.angle(j));
    return fm_check(data, zeta0, N, levels);
}

// ---------------------------------------------------------------------------
// Stolz paths and probes
// ---------------------------------------------------------------------------

struct StolzPath {
    CirclePoint anchor;
    double opening;          // alpha > 1
    std::vector<cd> points;  // approaching the anchor

    StolzPath(CirclePoint z0, double alpha, std::vector<cd> pts)
        : anchor(z0), opening(alpha), points(std::move(pts)) {
        if (!(opening > 1.0)) throw std::invalid_argument("StolzPath: opening must exceed 1");
        for (const cd& z : points)
            if (!(std::abs(z - anchor.value) < opening * (1.0 - std::abs(z)) + 1e-12))
                throw std::invalid_argument("StolzPath: point outside the Stolz region");
    }

    // lambda_j = (1 - 2^-j) zeta0, j = 1..count
    static StolzPath radial(CirclePoint z0, int count, double alpha = 2.0) {
        std::vector<cd> pts;
        for (int j = 1; j <= count; ++j) pts.push_back((1.0 - std::pow(2.0, -j)) * z0.value);
        return StolzPath(z0, alpha, std::move(pts));
    }
};

struct NormProbeResult {
    bool bounded;
    double sup;
    double tail_ratio;  // geometric mean of the last three growth ratios
    std::vector<double> values;
};

// Growing when the last three successive ratios all reach 1.1.
inline NormProbeResult stolz_probe(const std::function<double(cd)>& family,
                                   const StolzPath& path) {
    if (path.points.size() < 8) throw std::invalid_argument("stolz_probe: need >= 8 points");
    NormProbeResult out;
    out.sup = 0;
    for (const cd& z : path.points) {
        out.values.push_back(family(z));
        out.sup = std::max(out.sup, out.values.back());
    }
    const std::size_t n = out.values.size();
    bool growing = true;
    double prod = 1;
    for (std::size_t i = n - 3; i < n; ++i) {
        const double r = out.values[i] / std::max(out.values[i - 1], 1e-300);
        prod *= r;
        if (!(r >= 1.1)) growing = false;
    }
    out.tail_ratio = std::cbrt(prod);
    out.bounded = !growing;
    return out;
}

struct LimitProbeResult {
    bool has_limit;
    cd limit;
    std::vector<cd> values;
};

// Limit when the last three successive differences are small relative to the
// tail value.
inline LimitProbeResult stolz_probe_values(const std::function<cd(cd)>& family,
                                           const StolzPath& path) {
    if (path.points.size() < 8) throw std::invalid_argument("stolz_probe: need >= 8 points");
    LimitProbeResult out;
    for (const cd& z : path.points) out.values.push_back(family(z));
    const std::size_t n = out.values.size();
    const double ref = std::max(std::abs(out.values[n - 1]), 1e-12);
    out.has_limit = true;
    for (std::size_t i = n - 3; i < n; ++i)
        if (!(std::abs(out.values[i] - out.values[i - 1]) < 1e-4 * ref)) out.has_limit = false;
    out.limit = out.values[n - 1];
    return out;
}

// ---------------------------------------------------------------------------
// Derivative decay along the radius
// ---------------------------------------------------------------------------

struct DecayResult {
    bool passed;
    bool flagged;   // slope in [N-k, N+1/2-k): decays, but short of the target rate
    double slope;   // fitted d log|a^(k)(r zeta0)| / d log(1-r)
    bool underflow;
};

inline DecayResult decay_check(const AnalyticFunction& a, const CirclePoint& zeta0, int N, int k) {
    if (k > N) throw std::invalid_argument("decay_check: k must be <= N");
    if (!ac_check(a, zeta0, N).finite())
        throw std::invalid_argument("decay_check: ACa fails at this (zeta0, N)");
    AnalyticFunction d = derivative(a, k);
    std::vector<double> xs, ys;
    bool underflow = false;
    for (int j = 4; j <= 14; ++j) {
        const double omr = std::pow(2.0, -j);
        const double v = std::abs(evaluate(d, (1.0 - omr) * zeta0.value));
        if (v < 1e-12) {
            underflow = true;
            continue;
        }
        xs.push_back(std::log(omr));
        ys.push_back(std::log(v));
    }
    DecayResult out{false, false, 0.0, underflow};
    if (xs.size() < 3) {
        out.passed = underflow;
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = double(xs.size());
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double target = N + 0.5 - k;
    out.passed = (out.slope >= target - 0.1) || underflow;
    out.flagged = !out.passed && out.slope >= double(N - k);
    return out;
}

// Smallest N at which (ACa) fails; equals the vanishing order of a at zeta0.
inline int continuation_obstruction(const AnalyticFunction& a, const CirclePoint& zeta0) {
    if (a.is_zero(0.0)) throw std::invalid_argument("continuation_obstruction: a is zero");
    for (int N = 0; N <= a.degree() + 1; ++N)
        if (!ac_check(a, zeta0, N).finite()) return N;
    return a.degree() + 2;  // unreachable for polynomials
}

}  // namespace hardy
