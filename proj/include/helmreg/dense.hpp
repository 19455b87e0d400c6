#pragma once

// Dense reference operators for verification. These are assembled entry by entry from
// the stencil definition and inverted explicitly, independent of the sparse solve path.

#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "helmreg/grid.hpp"

namespace helmreg::dense {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct FilterMatrices {
    Matrix neg_laplacian;
    Matrix A;
    Matrix G;
};

struct RegularizerMatrices {
    Matrix D;            ///< [(1−α)G + αI]⁻¹
    Matrix DG;           ///< D·G
    Matrix I_minus_DG;   ///< I − D·G
    Matrix D_J;          ///< D Σᵢ₌₀ᴶ (αD(I−G))ⁱ, the J-step Mitlar map ū ↦ u_J
};

inline constexpr std::size_t kFilterCap = 4096;
inline constexpr std::size_t kRegularizerCap = 1024;

inline Matrix neg_laplacian_matrix(const Grid& g) {
    const auto m = static_cast<Eigen::Index>(g.size());
    Matrix L = Matrix::Zero(m, m);
    const int mx = g.axis(0).interior();
    const double cx = 1.0 / (g.h(0) * g.h(0));
    if (g.dim() == 1) {
        for (Eigen::Index i = 0; i < m; ++i) {
            L(i, i) = 2.0 * cx;
            if (i > 0) L(i, i - 1) = -cx;
            if (i + 1 < m) L(i, i + 1) = -cx;
        }
        return L;
    }
    const int my = g.axis(1).interior();
    const double cy = 1.0 / (g.h(1) * g.h(1));
    auto idx = [mx](int i, int j) { return static_cast<Eigen::Index>(j) * mx + i; };
    for (int j = 0; j < my; ++j)
        for (int i = 0; i < mx; ++i) {
            const auto k = idx(i, j);
            L(k, k) = 2.0 * cx + 2.0 * cy;
            if (i > 0) L(k, idx(i - 1, j)) = -cx;
            if (i + 1 < mx) L(k, idx(i + 1, j)) = -cx;
            if (j > 0) L(k, idx(i, j - 1)) = -cy;
            if (j + 1 < my) L(k, idx(i, j + 1)) = -cy;
        }
    return L;
}

inline FilterMatrices dense_matrices(const Grid& g, double delta) {
    if (g.size() > kFilterCap) throw std::invalid_argument("dense operators are capped at 4096 interior nodes");
    FilterMatrices out;
    out.neg_laplacian = neg_laplacian_matrix(g);
    const auto m = out.neg_laplacian.rows();
    out.A = Matrix::Identity(m, m) + delta * delta * out.neg_laplacian;
    out.G = out.A.inverse();
    return out;
}

inline RegularizerMatrices dense_reg_operators(const Grid& g, double delta, double alpha, int J) {
    if (g.size() > kRegularizerCap)
        throw std::invalid_argument("dense regularizer operators are capped at 1024 interior nodes");
    if (J < 0) throw std::invalid_argument("J must be nonnegative");
    const Matrix G = dense_matrices(g, delta).G;
    const auto m = G.rows();
    const Matrix I = Matrix::Identity(m, m);
    RegularizerMatrices out;
    out.D = ((1.0 - alpha) * G + alpha * I).inverse();
    out.DG = out.D * G;
    out.I_minus_DG = I - out.DG;
    const Matrix step = alpha * out.D * (I - G);
    Matrix term = I, sum = I;
    for (int i = 1; i <= J; ++i) {
        term = step * term;
        sum += term;
    }
    out.D_J = out.D * sum;
    return out;
}

/// Largest singular value.
inline double spectral_norm(const Matrix& M) {
    Eigen::JacobiSVD<Matrix> svd(M);
    return svd.singularValues()(0);
}

inline Vector to_vector(const Field& f) {
    Vector v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t k = 0; k < f.size(); ++k) v(static_cast<Eigen::Index>(k)) = f[k];
    return v;
}

inline Field to_field(const Grid& g, const Vector& v) {
    Field f(g);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = v(static_cast<Eigen::Index>(k));
    return f;
}

}  // namespace helmreg::dense
