#ifndef WIGNER_NORMAL_MODES_HPP
#define WIGNER_NORMAL_MODES_HPP

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wigner/classical_crystal.hpp"
#include "wigner/errors.hpp"
#include "wigner/linalg.hpp"

namespace wigner {

/// Behaviour of a mode row under the mirror j -> N-1-j.
enum class Parity { symmetric, antisymmetric };

inline const char* to_string(Parity p)
{
    return p == Parity::symmetric ? "symmetric" : "antisymmetric";
}

/// Hessian eigen-decomposition at the classical minimum.
///
/// Row i of `U` is the eigenvector for `omega_sq[i]`, so the normal
/// coordinates are zeta = U z and H = U^T diag(omega_sq) U.
struct NormalModes {
    std::vector<double> omega_sq; // ascending; omega_sq[0] == 1 (centre of mass)
    Eigen::MatrixXd U;
    std::vector<Parity> parity;

    int size() const { return static_cast<int>(omega_sq.size()); }
};

/// Hessian of V^{g=1} at the dimensionless minimum (independent of g).
inline Eigen::MatrixXd hessian(const EquilibriumConfig& config, double d)
{
    return potential_hessian(config.beta, d, 1.0);
}

namespace detail {

inline Eigen::MatrixXd mirror_matrix(Eigen::Index n)
{
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        j(i, n - 1 - i) = 1.0;
    return j;
}

// Replaces the columns of `v` by an orthonormal basis of the same span made of
// mirror-symmetric and mirror-antisymmetric vectors.
inline Eigen::MatrixXd split_by_parity(const Eigen::MatrixXd& v)
{
    const Eigen::Index n = v.rows();
    const Eigen::MatrixXd mirror = mirror_matrix(n);
    Eigen::MatrixXd candidates(n, 2 * v.cols());
    candidates << 0.5 * (v + mirror * v), 0.5 * (v - mirror * v);

    Eigen::MatrixXd basis(n, v.cols());
    Eigen::Index found = 0;
    for (Eigen::Index c = 0; c < candidates.cols() && found < v.cols(); ++c) {
        Eigen::VectorXd u = candidates.col(c);
        for (Eigen::Index k = 0; k < found; ++k)
            u -= basis.col(k).dot(u) * basis.col(k);
        const double norm = u.norm();
        if (norm > 1e-6)
            basis.col(found++) = u / norm;
    }
    return basis.leftCols(found);
}

} // namespace detail

/// Diagonalizes a symmetric positive-definite Hessian.
///
/// Eigenvalues come back ascending. Each eigenvector is signed so its first
/// entry above 1e-10 in magnitude is positive, then labelled by mirror parity.
/// Clusters of eigenvalues closer than 1e-10 are rotated into parity-definite
/// combinations first.
inline NormalModes decompose(const Eigen::MatrixXd& h)
{
    if (h.rows() != h.cols())
        throw DomainError("decompose: Hessian must be square");
    if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw DomainError("decompose: Hessian must be symmetric");

    SymmetricEigen eig = jacobi_eigen(h);
    const Eigen::Index n = h.rows();
    if (eig.values[0] <= 0.0)
        throw NotAMinimum("decompose: non-positive Hessian eigenvalue " + std::to_string(eig.values[0]));

    for (Eigen::Index start = 0; start < n;) {
        Eigen::Index end = start + 1;
        while (end < n && eig.values[end] - eig.values[end - 1] <= 1e-10)
            ++end;
        if (end - start > 1) {
            const Eigen::MatrixXd mixed = detail::split_by_parity(eig.vectors.middleCols(start, end - start));
            if (mixed.cols() == end - start)
                eig.vectors.middleCols(start, end - start) = mixed;
        }
        start = end;
    }

    NormalModes modes;
    modes.omega_sq.resize(static_cast<std::size_t>(n));
    modes.U.resize(n, n);
    modes.parity.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::VectorXd row = eig.vectors.col(i);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (std::abs(row[j]) > 1e-10) {
                if (row[j] < 0.0)
                    row = -row;
                break;
            }
        }
        modes.omega_sq[static_cast<std::size_t>(i)] = eig.values[i];
        modes.U.row(i) = row.transpose();

        double sym = 0.0, anti = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            sym = std::max(sym, std::abs(row[j] - row[n - 1 - j]));
            anti = std::max(anti, std::abs(row[j] + row[n - 1 - j]));
        }
        modes.parity[static_cast<std::size_t>(i)] = sym <= anti ? Parity::symmetric : Parity::antisymmetric;
    }
    return modes;
}

inline NormalModes normal_modes(const EquilibriumConfig& config, double d)
{
    return decompose(hessian(config, d));
}

} // namespace wigner

#endif // WIGNER_NORMAL_MODES_HPP
