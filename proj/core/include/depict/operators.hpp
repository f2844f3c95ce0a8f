#ifndef DEPICT_OPERATORS_HPP
#define DEPICT_OPERATORS_HPP

#include <cstdint>
#include <vector>

#include "depict/matrix.hpp"
#include "depict/rate.hpp"

namespace depict {

/// Learnable parameter matrix P (D x K) partitioned into H head blocks of M
/// columns each.
struct SubspaceDictionary {
    Matrix full;  // D x K
    int heads = 1;
    int head_dim = 0;  // M, with heads * head_dim == full.cols()

    SubspaceDictionary() = default;
    SubspaceDictionary(Matrix p, int h) : full(std::move(p)), heads(h) {
        if (h < 1 || full.cols() % h != 0)
            throw ShapeMismatch("dictionary columns must split into equal head blocks");
        head_dim = full.cols() / h;
    }

    Matrix head(int h) const { return full.columns(h * head_dim, (h + 1) * head_dim); }
    int dict_cols() const { return full.cols(); }
};

/// Query/class matrix Q (D x C) plus its learnable initialization snapshot.
struct ClassEmbeddings {
    Matrix matrix;  // D x C
    Matrix init;    // Q0
};

/// Learnable step size; the sign is deliberately unconstrained.
struct StepSize {
    double alpha = 0.1;
};

struct LayerNormParams {
    std::vector<double> gain;  // D
    std::vector<double> bias;  // D
    double eps_ln = 1e-6;

    static LayerNormParams unit(int d, double eps = 1e-6) {
        LayerNormParams p;
        p.gain.assign(d, 1.0);
        p.bias.assign(d, 0.0);
        p.eps_ln = eps;
        return p;
    }
};

/// Which transcription of the update steps to use: the full form carries the
/// leading M/(N eps^2) scale constants; the simplified form folds them into
/// the learnable step size (the implementation default).
enum class StepForm : std::uint8_t { full, simplified };

/// Column-wise softmax with max-subtraction; every output column sums to 1.
Matrix softmax_columns(const Matrix& a);

/// Per-column normalization over the feature axis:
/// y = gain .* (x - mean)/sqrt(var + eps_ln) + bias.
Matrix layer_norm(const Matrix& z, const LayerNormParams& p);

/// SSA(Z | Ph) = (Ph^T Z) softmax((Ph^T Z)^T (Ph^T Z)); M x N.
Matrix ssa_head(const Matrix& z, const Matrix& ph);

/// Grouped multi-head subspace self-attention, D x N:
///   full:       (M/(N eps^2)) * sum_h Ph * SSA(Z | Ph)
///   simplified: sum_h Ph * SSA(Z | Ph)
Matrix mssa(const Matrix& z, const SubspaceDictionary& p, const RateConfig& cfg,
            StepForm form = StepForm::simplified);

/// The original one-head-per-basis form, (1/(N eps^2)) sum_c p_c SSA(Z|p_c).
/// Memory is O(C N^2); refuses to run past `cap` scratch entries because it
/// exists only as a small-scale cross-check.
Matrix mssa_per_basis(const Matrix& z, const Matrix& p, const RateConfig& cfg,
                      std::int64_t cap = 1 << 24);

/// One unrolled ascent step on Z:
///   full:       (1 + a M/(N eps^2)) Z - a M/(N eps^2) MSSA(Z|P)
///   simplified: Z - a MSSA(Z|P)
Matrix mssa_step(const Matrix& z, const SubspaceDictionary& p, StepSize alpha,
                 const RateConfig& cfg, StepForm form = StepForm::simplified);

/// Same objective with the softmax surrogate replaced by the exact inner
/// inverse: a literal gradient-ascent step, Z + a * sum_h grad_h.
Matrix mssa_step_exact(const Matrix& z, const SubspaceDictionary& p, StepSize alpha,
                       const RateConfig& cfg);

/// SCA(Q | Z, Ph) = (Ph^T Z) softmax((Ph^T Z)^T (Ph^T Q)); M x C.
Matrix sca_head(const Matrix& q, const Matrix& z, const Matrix& ph);

/// Multi-head subspace cross-attention, D x C; output lies in span(P).
Matrix msca(const Matrix& q, const Matrix& z, const SubspaceDictionary& p,
            const RateConfig& cfg, StepForm form = StepForm::simplified);

/// One cross-attention step on Q:
///   full:       (1 + a M/(N eps^2)) Q - a M/(N eps^2) MSCA(Q|Z,P)
///   simplified: Q - a MSCA(Q|Z,P)
Matrix msca_step(const Matrix& q, const Matrix& z, const SubspaceDictionary& p,
                 StepSize alpha, const RateConfig& cfg,
                 StepForm form = StepForm::simplified);

/// Self-attention step on the rank-C surrogate Qbar (D x N):
/// (1 + a D/(N eps^2)) Qbar - a (D/(N eps^2))^2 Qbar softmax(Qbar^T Qbar).
Matrix qbar_sa_step(const Matrix& qbar, StepSize alpha, const RateConfig& cfg);

/// Exact-inverse variant of qbar_sa_step: Qbar + a * grad R(Qbar).
Matrix qbar_sa_step_exact(const Matrix& qbar, StepSize alpha, const RateConfig& cfg);

/// Cross-attention step that updates each query once:
/// (1 + a D/(N eps^2)) Q - a (D/(N eps^2))^2 Z softmax(Z^T Q).
Matrix ca_step(const Matrix& q, const Matrix& z, StepSize alpha, const RateConfig& cfg);

/// Softmax-free self-attention update of the concatenation [Z, Q], returned
/// both as the concatenated computation and as its four-term decomposition.
/// The two paths agree exactly.
struct ConcatSaResult {
    Matrix z_next;
    Matrix q_next;
    Matrix zzt_z;  // Z Z^T Z
    Matrix qqt_z;  // Q Q^T Z
    Matrix zzt_q;  // Z Z^T Q
    Matrix qqt_q;  // Q Q^T Q
    double path_gap = 0.0;  // max entrywise difference between the two paths
};

ConcatSaResult concat_sa_decompose(const Matrix& z, const Matrix& q, StepSize alpha);

}  // namespace depict

#endif
