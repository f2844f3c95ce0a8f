#include "depict/rate.hpp"

#include <cmath>

#include "depict/linalg.hpp"

namespace depict {

namespace {

// 0.5 * log det(I + c * W W^T), evaluated on the smaller side of W.
double half_logdet_gram(const Matrix& w, double c) {
    const int r = w.rows(), n = w.cols();
    Matrix g = (r <= n) ? matmul_nt(w, w) : matmul_tn(w, w);
    const int dim = g.rows();
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) g(i, j) *= c;
        g(j, j) += 1.0;
    }
    return 0.5 * cholesky_logdet(g);
}

void check_rate_inputs(const Matrix& z, const RateConfig& cfg) {
    cfg.validate();
    if (z.rows() != cfg.ambient_dim || z.cols() != cfg.sample_count)
        throw ShapeMismatch("embedding matrix does not match RateConfig");
    require_finite(z, "coding rate input");
}

}  // namespace

double coding_rate(const Matrix& z, const RateConfig& cfg) {
    check_rate_inputs(z, cfg);
    const double c = double(cfg.ambient_dim) / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    return half_logdet_gram(z, c);
}

double coding_rate_dual(const Matrix& z, const RateConfig& cfg) {
    check_rate_inputs(z, cfg);
    const double c = double(cfg.ambient_dim) / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    Matrix g = matmul_tn(z, z);
    const int n = g.rows();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) g(i, j) *= c;
        g(j, j) += 1.0;
    }
    return 0.5 * cholesky_logdet(g);
}

double projected_coding_rate(const Matrix& z, const Matrix& pp, const RateConfig& cfg) {
    cfg.validate();
    if (pp.rows() != z.rows()) throw ShapeMismatch("basis rows must match embedding rows");
    if (z.cols() != cfg.sample_count || z.rows() != cfg.ambient_dim)
        throw ShapeMismatch("embedding matrix does not match RateConfig");
    require_finite(z, "projected rate input");
    require_finite(pp, "projected rate basis");
    const int m = pp.cols();
    if (m == 0) return 0.0;
    const double c = double(m) / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    const Matrix w = matmul_tn(pp, z);  // M x N
    return half_logdet_gram(w, c);
}

double per_basis_rate_sum(const Matrix& z, const Matrix& pp, const RateConfig& cfg) {
    cfg.validate();
    if (pp.rows() != z.rows()) throw ShapeMismatch("basis rows must match embedding rows");
    require_finite(z, "per-basis rate input");
    require_finite(pp, "per-basis rate basis");
    const double c = 1.0 / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    const Matrix w = matmul_tn(pp, z);  // rows are p_c^T Z
    double total = 0.0;
    for (int i = 0; i < w.rows(); ++i) {
        double sq = 0.0;
        for (int j = 0; j < w.cols(); ++j) sq += w(i, j) * w(i, j);
        total += 0.5 * std::log1p(c * sq);
    }
    return total;
}

Matrix projected_rate_gradient(const Matrix& z, const Matrix& pp, const RateConfig& cfg) {
    cfg.validate();
    if (pp.rows() != z.rows()) throw ShapeMismatch("basis rows must match embedding rows");
    const int m = pp.cols(), n = z.cols();
    const double c = double(m) / (double(n) * cfg.epsilon * cfg.epsilon);
    const Matrix w = matmul_tn(pp, z);  // M x N
    // S = I_N + c W^T W is SPD by construction.
    Matrix s = matmul_tn(w, w);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) s(i, j) *= c;
        s(j, j) += 1.0;
    }
    const Matrix y = cholesky_solve(s, transpose(w));  // N x M = S^{-1} W^T
    return scale(matmul(pp, transpose(y)), c);         // c * Pp (W S^{-1})
}

Matrix rate_gradient(const Matrix& z, const RateConfig& cfg) {
    check_rate_inputs(z, cfg);
    const int n = z.cols();
    const double c = double(cfg.ambient_dim) / (double(n) * cfg.epsilon * cfg.epsilon);
    Matrix s = matmul_tn(z, z);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) s(i, j) *= c;
        s(j, j) += 1.0;
    }
    const Matrix y = cholesky_solve(s, transpose(z));  // N x D
    return scale(transpose(y), c);
}

double orthonormality_defect(const Matrix& pp) {
    Matrix g = matmul_tn(pp, pp);
    for (int i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    return max_abs(g);
}

}  // namespace depict
