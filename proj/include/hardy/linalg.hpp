// Eigen bridging: coefficient matrices, orthonormal spans, principal angles.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hardy/analytic.hpp"

namespace hardy {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Vector to_vector(const AnalyticFunction& f, int M) {
    Vector v = Vector::Zero(M + 1);
    for (int k = 0; k <= std::min(M, f.degree()); ++k) v[k] = f.coeffs[k];
    return v;
}

inline AnalyticFunction from_vector(const Vector& v, std::string label = {}) {
    std::vector<cd> c(v.data(), v.data() + v.size());
    return AnalyticFunction(std::move(c), std::move(label));
}

// Columns are the coefficient vectors of the given functions.
inline Matrix coefficient_matrix(const std::vector<AnalyticFunction>& fs, int M = -1) {
    if (M < 0)
        for (const auto& f : fs) M = std::max(M, f.degree());
    Matrix A(M + 1, int(fs.size()));
    for (int j = 0; j < int(fs.size()); ++j) A.col(j) = to_vector(fs[j], M);
    return A;
}

// Orthonormal basis of the numerical column span (singular value cut at
// rel_tol * sigma_max).
inline Matrix orthonormal_span(const Matrix& A, double rel_tol = 1e-10) {
    if (A.cols() == 0) return Matrix(A.rows(), 0);
    Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s[i] > rel_tol * s[0]) ++r;
    return svd.matrixU().leftCols(r);
}

// Principal angles (radians, ascending) between the column spans of A and B.
inline std::vector<double> principal_angles(const Matrix& A, const Matrix& B) {
    const Matrix Qa = orthonormal_span(A), Qb = orthonormal_span(B);
    if (Qa.cols() == 0 || Qb.cols() == 0) return {};
    Eigen::BDCSVD<Matrix> svd(Matrix(Qa.adjoint() * Qb));
    std::vector<double> angles;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        double c = std::min(1.0, svd.singularValues()[i]);
        angles.push_back(std::acos(c));
    }
    std::sort(angles.begin(), angles.end());
    return angles;
}

}  // namespace hardy
