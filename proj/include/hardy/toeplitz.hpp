// Truncated Toeplitz operators T_phi on the polynomials of degree <= M:
// construction from boundary symbols, application, least-squares solves,
// nullspaces, and model-space bases.
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "hardy/factory.hpp"
#include "hardy/linalg.hpp"

namespace hardy {

enum class SymbolKind { Analytic, CoAnalytic, UnimodularQuotient, ModulusSquared, General };

struct SymbolSpec {
    BoundaryGrid boundary;
    SymbolKind kind = SymbolKind::General;
    std::string provenance;
    std::vector<std::size_t> exceptional;  // grid indices filled by guard logic
    bool continuation_flagged = false;     // exceptional values filled by nearest neighbor
};

inline SymbolSpec symbol_from_function(const AnalyticFunction& f, bool conjugate, std::size_t G) {
    BoundaryGrid tr = boundary_trace(f, G);
    if (conjugate)
        for (auto& s : tr.samples) s = std::conj(s);
    return {std::move(tr), conjugate ? SymbolKind::CoAnalytic : SymbolKind::Analytic,
            (conjugate ? "conj(" : "") + (f.label.empty() ? "f" : f.label) +
                (conjugate ? ")" : "")};
}

inline SymbolSpec modulus_squared_symbol(const AnalyticFunction& a, std::size_t G) {
    BoundaryGrid tr = boundary_trace(a, G);
    for (auto& s : tr.samples) s = cd(std::norm(s), 0.0);
    return {std::move(tr), SymbolKind::ModulusSquared,
            "|" + (a.label.empty() ? "a" : a.label) + "|^2"};
}

// Boundary symbol a/conj(a), computed as a^2/|a|^2. Grid points where |a| is
// below 1e-10 * max|a| are exceptional: if all regular points agree with the
// closed form c z^N (all roots of a on the circle) the monomial is used,
// otherwise the values are continued from the nearest regular neighbor and
// the spec is flagged.
inline SymbolSpec quotient_symbol(const AnalyticFunction& a, std::size_t G,
                                  bool conjugated = false) {
    if (a.is_zero(0.0)) throw std::invalid_argument("quotient_symbol: a is identically zero");
    const BoundaryGrid tr = boundary_trace(a, G);
    double maxmod = 0;
    for (const auto& s : tr.samples) maxmod = std::max(maxmod, std::abs(s));
    SymbolSpec spec;
    spec.kind = SymbolKind::UnimodularQuotient;
    spec.provenance = "a/conj(a) from " + (a.label.empty() ? "a" : a.label);
    std::vector<cd> q(G);
    std::vector<bool> bad(G, false);
    for (std::size_t j = 0; j < G; ++j) {
        const cd v = tr.samples[j];
        if (std::abs(v) < 1e-10 * maxmod) {
            bad[j] = true;
            spec.exceptional.push_back(j);
        } else {
            q[j] = v * v / std::norm(v);
        }
    }
    if (!spec.exceptional.empty()) {
        // try the monomial closed form c z^N, N = deg(a)
        const int N = a.degree();
        cd c_est(0.0);
        double worst = 0;
        std::size_t cnt = 0;
        for (std::size_t j = 0; j < G; ++j) {
            if (bad[j]) continue;
            const double t = 2 * kPi * double(j) / double(G);
            const cd cz = q[j] * std::exp(cd(0.0, -double(N) * t));
            if (cnt == 0) c_est = cz;
            worst = std::max(worst, std::abs(cz - c_est));
            ++cnt;
        }
        if (cnt > 0 && worst < 1e-6) {
            for (std::size_t j = 0; j < G; ++j)
                if (bad[j]) {
                    const double t = 2 * kPi * double(j) / double(G);
                    q[j] = c_est * std::exp(cd(0.0, double(N) * t));
                }
            spec.provenance += " (closed form c z^" + std::to_string(N) + ")";
        } else {
            for (std::size_t j = 0; j < G; ++j)
                if (bad[j]) {
                    std::size_t l = j, r = j;
                    while (bad[l]) l = (l + G - 1) % G;
                    while (bad[r]) r = (r + 1) % G;
                    q[j] = (((j - l) % G) <= ((r - j) % G)) ? q[l] : q[r];
                }
            spec.continuation_flagged = true;
        }
    }
    if (conjugated)
        for (auto& s : q) s = std::conj(s);
    spec.boundary = BoundaryGrid(std::move(q));
    return spec;
}

// ---------------------------------------------------------------------------

struct TruncatedToeplitz {
    Matrix entries;  // (M+1)x(M+1), entries(j,k) = phi_hat(j-k)
    int M = 0;
    SymbolKind kind = SymbolKind::General;
    std::string provenance;

    mutable std::shared_ptr<Eigen::BDCSVD<Matrix>> svd_cache;

    const Eigen::BDCSVD<Matrix>& svd() const {
        if (!svd_cache)
            svd_cache = std::make_shared<Eigen::BDCSVD<Matrix>>(
                entries, Eigen::ComputeThinU | Eigen::ComputeThinV);
        return *svd_cache;
    }
};

inline TruncatedToeplitz build(const SymbolSpec& symbol, int M) {
    const std::size_t G = symbol.boundary.size();
    if (G < 4 * std::size_t(M + 1))
        throw std::invalid_argument("build: symbol grid too small for degree");
    std::vector<cd> hat = fft(symbol.boundary.samples);
    TruncatedToeplitz T;
    T.M = M;
    T.kind = symbol.kind;
    T.provenance = symbol.provenance;
    T.entries = Matrix(M + 1, M + 1);
    for (int j = 0; j <= M; ++j)
        for (int k = 0; k <= M; ++k) {
            const int d = j - k;
            T.entries(j, k) = hat[std::size_t((d + int(G)) % int(G))] / double(G);
        }
    return T;
}

// Exact matrix of T_a or T_conj(a) from Taylor coefficients (no grid, no
// aliasing); needed when the symbol oscillates too fast to sample.
inline TruncatedToeplitz build_from_taylor(const AnalyticFunction& a, bool conjugate, int M) {
    TruncatedToeplitz T;
    T.M = M;
    T.kind = conjugate ? SymbolKind::CoAnalytic : SymbolKind::Analytic;
    T.provenance = "taylor:" + a.label;
    T.entries = Matrix::Zero(M + 1, M + 1);
    for (int j = 0; j <= M; ++j)
        for (int k = 0; k <= M; ++k) {
            if (conjugate) {
                if (k >= j) T.entries(j, k) = std::conj(a.coeff(k - j));
            } else {
                if (j >= k) T.entries(j, k) = a.coeff(j - k);
            }
        }
    return T;
}

inline AnalyticFunction apply(const TruncatedToeplitz& T, const AnalyticFunction& f) {
    if (f.degree() > T.M) throw std::invalid_argument("apply: degree exceeds truncation");
    return from_vector(T.entries * to_vector(f, T.M));
}

struct SolveResult {
    AnalyticFunction solution;
    double residual;      // relative: ||T x - g|| / ||g||
    bool in_range;        // residual <= 1e-6
};

// Least squares through the SVD; singular values below tau * sigma_max are
// discarded. Direct inversion is useless here: T_conj(a) with boundary zeros
// is exponentially ill-conditioned in M.
inline SolveResult solve(const TruncatedToeplitz& T, const AnalyticFunction& g, double tau = 1e-10) {
    const Vector rhs = to_vector(g, T.M);
    const auto& svd = T.svd();
    const auto& s = svd.singularValues();
    Vector y = svd.matrixU().adjoint() * rhs;
    for (int i = 0; i < s.size(); ++i) y[i] = (s[i] > tau * s[0]) ? y[i] / s[i] : cd(0.0);
    const Vector x = svd.matrixV() * y;
    const double gn = rhs.norm();
    const double res = (gn == 0) ? 0.0 : (T.entries * x - rhs).norm() / gn;
    return {from_vector(x), res, res <= 1e-6};
}

enum class BasisOrigin { ModelSpace, ToeplitzKernel, Complement, PolynomialSpace };

struct SubspaceBasis {
    std::vector<AnalyticFunction> vectors;
    bool orthonormal = false;
    BasisOrigin origin = BasisOrigin::PolynomialSpace;

    int dimension() const { return int(vectors.size()); }
    Matrix matrix(int M = -1) const { return coefficient_matrix(vectors, M); }
};

// Orthonormal basis of the numerical nullspace: right singular vectors with
// singular value below tau * sigma_max.
inline SubspaceBasis nullspace(const TruncatedToeplitz& T, double tau = 1e-8) {
    const auto& svd = T.svd();
    const auto& s = svd.singularValues();
    SubspaceBasis basis;
    basis.orthonormal = true;
    basis.origin = BasisOrigin::ToeplitzKernel;
    const double cut = (s.size() ? s[0] : 0.0) * tau;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] < cut || s[i] == 0.0) basis.vectors.push_back(from_vector(svd.matrixV().col(i)));
    // pad with exact nullspace when the matrix is rank deficient beyond the
    // singular value list (thin SVD covers min(m,n) values; square here)
    return basis;
}

// Model space K_I = H^2 (-) I H^2 at truncation M.
// I = z^N gives the monomials exactly; a finite Blaschke product with
// distinct zeros gives the span of the Cauchy kernels at its zeros; anything
// else falls back to the nullspace of T_conj(I).
inline SubspaceBasis model_space_basis(const AnalyticFunction& I, int M) {
    const auto cls = classify(I);
    if (cls.verdict != FunctionClass::Inner)
        throw std::invalid_argument("model_space_basis: function is not inner");
    // monomial detection
    int nz = 0, pos = -1;
    for (int k = 0; k <= I.degree(); ++k)
        if (std::abs(I.coeffs[k]) > 1e-12) {
            ++nz;
            pos = k;
        }
    SubspaceBasis basis;
    basis.origin = BasisOrigin::ModelSpace;
    if (nz == 1 && std::abs(std::abs(I.coeffs[pos]) - 1.0) < 1e-10) {
        for (int k = 0; k < pos; ++k) basis.vectors.push_back(truncate(monomial(k), M));
        basis.orthonormal = true;
        return basis;
    }
    const std::size_t G = min_grid_size(M);
    SubspaceBasis ns = nullspace(build(symbol_from_function(I, true, G), M));
    ns.origin = BasisOrigin::ModelSpace;
    return ns;
}

inline SubspaceBasis model_space_basis(const BlaschkeSpec& spec, int M) {
    // distinct-zero check
    for (std::size_t i = 0; i < spec.zeros.size(); ++i)
        for (std::size_t j = i + 1; j < spec.zeros.size(); ++j)
            if (std::abs(spec.zeros[i].value - spec.zeros[j].value) < 1e-12)
                throw std::invalid_argument("model_space_basis: repeated Blaschke zero");
    std::vector<AnalyticFunction> kernels;
    for (const auto& z : spec.zeros)
        kernels.push_back(cauchy_kernel(DiskPoint(z.value), 0, M));
    // full-rank QR rather than a rank-revealing span: zeros crowding the same
    // boundary point give nearly parallel kernels, and the faint directions
    // separating them are exactly what compressions onto this space probe
    const Matrix A = coefficient_matrix(kernels, M);
    Eigen::HouseholderQR<Matrix> qr(A);
    const Matrix Q = qr.householderQ() * Matrix::Identity(A.rows(), A.cols());
    SubspaceBasis basis;
    basis.orthonormal = true;
    basis.origin = BasisOrigin::ModelSpace;
    for (int j = 0; j < Q.cols(); ++j) basis.vectors.push_back(from_vector(Q.col(j)));
    return basis;
}

}  // namespace hardy
