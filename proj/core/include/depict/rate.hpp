#ifndef DEPICT_RATE_HPP
#define DEPICT_RATE_HPP

#include "depict/matrix.hpp"

namespace depict {

/// Distortion and shape constants shared by every rate formula.
///
/// The scale in front of the Gram matrix is ambient_dim/(sample_count*eps^2)
/// for full-space rates and proj_dim/(sample_count*eps^2) for projected ones.
struct RateConfig {
    double epsilon = 0.5;
    int ambient_dim = 0;
    int sample_count = 0;
    int proj_dim = 0;  // 0 = unset; required only by projected variants

    void validate() const {
        if (!(epsilon > 0.0)) throw ConfigInvalid("epsilon must be > 0");
        if (ambient_dim < 1 || sample_count < 1)
            throw ConfigInvalid("ambient_dim and sample_count must be >= 1");
        if (proj_dim != 0 && (proj_dim < 1 || proj_dim > ambient_dim))
            throw ConfigInvalid("proj_dim must satisfy 1 <= M <= D");
    }

    static RateConfig for_matrix(const Matrix& z, double epsilon = 0.5) {
        return RateConfig{epsilon, z.rows(), z.cols(), 0};
    }
};

/// 0.5 * log det(I_D + (D/(N eps^2)) Z Z^T). Nonnegative, zero iff Z = 0.
/// Internally evaluates the determinant on the smaller Gram side, which is
/// value-identical.
double coding_rate(const Matrix& z, const RateConfig& cfg);

/// The Gram-side form 0.5 * log det(I_N + (D/(N eps^2)) Z^T Z), always
/// evaluated on the N x N side. Equal to coding_rate by the commutation
/// identity det(I + AB) = det(I + BA); keeping both routes gives the tests an
/// algebraic cross-check.
double coding_rate_dual(const Matrix& z, const RateConfig& cfg);

/// Projected coding rate of Z onto the M columns of Pp:
/// 0.5 * log det(I_M + (M/(N eps^2)) (Pp^T Z)(Pp^T Z)^T).
/// Defined for any Pp; the bound theorems assume orthonormal columns.
double projected_coding_rate(const Matrix& z, const Matrix& pp, const RateConfig& cfg);

/// Sum over columns p_c of Pp of 0.5 * log(1 + (1/(N eps^2)) p_c^T Z Z^T p_c).
double per_basis_rate_sum(const Matrix& z, const Matrix& pp, const RateConfig& cfg);

/// Exact gradient of projected_coding_rate with respect to Z:
/// (M/(N eps^2)) Pp Pp^T Z (I_N + (M/(N eps^2)) Z^T Pp Pp^T Z)^{-1}.
Matrix projected_rate_gradient(const Matrix& z, const Matrix& pp, const RateConfig& cfg);

/// Exact gradient of coding_rate with respect to Z:
/// (D/(N eps^2)) Z (I_N + (D/(N eps^2)) Z^T Z)^{-1}.
Matrix rate_gradient(const Matrix& z, const RateConfig& cfg);

/// Max |Pp^T Pp - I| over all entries; rate operators accept any Pp, but
/// bound checks record whether they ran in the orthonormal regime
/// (defect <= 1e-6) that the theorems assume.
double orthonormality_defect(const Matrix& pp);

inline bool nearly_orthonormal(const Matrix& pp, double tol = 1e-6) {
    return orthonormality_defect(pp) <= tol;
}

}  // namespace depict

#endif
