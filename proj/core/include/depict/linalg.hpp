#ifndef DEPICT_LINALG_HPP
#define DEPICT_LINALG_HPP

#include <utility>
#include <vector>

#include "depict/matrix.hpp"

namespace depict {

/// Result of a symmetric eigendecomposition, eigenvalues descending,
/// eigenvectors as orthonormal columns with A*V = V*diag(values).
struct SymEigen {
    std::vector<double> values;
    Matrix vectors;
};

/// log det(A) for symmetric positive definite A, via Cholesky:
/// 2 * sum(log diag(L)).
///
/// If the factorization fails on roundoff, a jitter of
/// 1e-12 * trace(A)/dim * I is added and the attempt repeated up to three
/// times with 10x escalation. Throws NotPositiveDefinite after the last
/// retry, NotSymmetric if the input is asymmetric beyond 1e-10.
double cholesky_logdet(const Matrix& a);

/// Lower Cholesky factor L with A = L*L^T. Same jitter policy as
/// cholesky_logdet.
Matrix cholesky_factor(const Matrix& a);

/// Solve A*X = B for SPD A using its Cholesky factor.
Matrix cholesky_solve(const Matrix& a, const Matrix& b);

/// Symmetric eigendecomposition by cyclic Jacobi sweeps. Deterministic,
/// accurate at the few-hundred-dimension scale this library targets.
SymEigen sym_eigen(const Matrix& a);

/// Thin orthonormal basis of span(B) via Householder QR (cols <= rows).
/// Throws RankDeficient when the smallest R diagonal falls below
/// 1e-12 * largest.
Matrix qr_orthonormalize(const Matrix& b);

/// Max absolute asymmetry |A - A^T|.
double asymmetry(const Matrix& a);

}  // namespace depict

#endif
