#include "depict/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace depict {

Matrix softmax_columns(const Matrix& a) {
    Matrix s = a;
    for (int j = 0; j < s.cols(); ++j) {
        double mx = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < s.rows(); ++i) mx = std::max(mx, s(i, j));
        double sum = 0.0;
        for (int i = 0; i < s.rows(); ++i) {
            s(i, j) = std::exp(s(i, j) - mx);
            sum += s(i, j);
        }
        for (int i = 0; i < s.rows(); ++i) s(i, j) /= sum;
    }
    return s;
}

Matrix layer_norm(const Matrix& z, const LayerNormParams& p) {
    const int d = z.rows(), n = z.cols();
    if (int(p.gain.size()) != d || int(p.bias.size()) != d)
        throw ShapeMismatch("layer_norm parameter length");
    Matrix out(d, n);
    for (int j = 0; j < n; ++j) {
        double mean = 0.0;
        for (int i = 0; i < d; ++i) mean += z(i, j);
        mean /= d;
        double var = 0.0;
        for (int i = 0; i < d; ++i) {
            const double c = z(i, j) - mean;
            var += c * c;
        }
        var /= d;
        const double inv = 1.0 / std::sqrt(var + p.eps_ln);
        for (int i = 0; i < d; ++i)
            out(i, j) = p.gain[i] * (z(i, j) - mean) * inv + p.bias[i];
    }
    return out;
}

Matrix ssa_head(const Matrix& z, const Matrix& ph) {
    if (ph.rows() != z.rows()) throw ShapeMismatch("ssa_head basis rows");
    const Matrix w = matmul_tn(ph, z);              // M x N
    const Matrix attn = softmax_columns(matmul_tn(w, w));  // N x N
    return matmul(w, attn);
}

namespace {

double head_scale(const SubspaceDictionary& p, const RateConfig& cfg, StepForm form) {
    if (form == StepForm::simplified) return 1.0;
    return double(p.head_dim) / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
}

}  // namespace

Matrix mssa(const Matrix& z, const SubspaceDictionary& p, const RateConfig& cfg,
            StepForm form) {
    if (p.full.rows() != z.rows()) throw ShapeMismatch("mssa dictionary rows");
    Matrix acc(z.rows(), z.cols());
    // Heads accumulate in fixed index order so results are bit-stable.
    for (int h = 0; h < p.heads; ++h) {
        const Matrix ph = p.head(h);
        axpy(acc, 1.0, matmul(ph, ssa_head(z, ph)));
    }
    const double c = head_scale(p, cfg, form);
    return (c == 1.0) ? acc : scale(acc, c);
}

Matrix mssa_per_basis(const Matrix& z, const Matrix& p, const RateConfig& cfg,
                      std::int64_t cap) {
    if (p.rows() != z.rows()) throw ShapeMismatch("mssa_per_basis basis rows");
    const std::int64_t need = std::int64_t(p.cols()) * z.cols() * z.cols();
    if (need > cap) throw ResourceCap("mssa_per_basis attention scratch");
    Matrix acc(z.rows(), z.cols());
    for (int c = 0; c < p.cols(); ++c) {
        const Matrix pc = p.columns(c, c + 1);
        axpy(acc, 1.0, matmul(pc, ssa_head(z, pc)));
    }
    const double sc = 1.0 / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    return scale(acc, sc);
}

Matrix mssa_step(const Matrix& z, const SubspaceDictionary& p, StepSize alpha,
                 const RateConfig& cfg, StepForm form) {
    const Matrix att = mssa(z, p, cfg, form);
    if (form == StepForm::simplified) {
        Matrix out = z;
        axpy(out, -alpha.alpha, att);
        return out;
    }
    const double c = double(p.head_dim) / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    Matrix out = scale(z, 1.0 + alpha.alpha * c);
    axpy(out, -alpha.alpha * c, att);
    return out;
}

Matrix mssa_step_exact(const Matrix& z, const SubspaceDictionary& p, StepSize alpha,
                       const RateConfig& cfg) {
    Matrix out = z;
    RateConfig head_cfg = cfg;
    head_cfg.proj_dim = p.head_dim;
    for (int h = 0; h < p.heads; ++h)
        axpy(out, alpha.alpha, projected_rate_gradient(z, p.head(h), head_cfg));
    return out;
}

Matrix sca_head(const Matrix& q, const Matrix& z, const Matrix& ph) {
    if (ph.rows() != z.rows() || q.rows() != z.rows())
        throw ShapeMismatch("sca_head input rows");
    const Matrix wz = matmul_tn(ph, z);                      // M x N
    const Matrix wq = matmul_tn(ph, q);                      // M x C
    const Matrix attn = softmax_columns(matmul_tn(wz, wq));  // N x C, normalized over keys
    return matmul(wz, attn);                                 // M x C
}

Matrix msca(const Matrix& q, const Matrix& z, const SubspaceDictionary& p,
            const RateConfig& cfg, StepForm form) {
    if (p.full.rows() != z.rows()) throw ShapeMismatch("msca dictionary rows");
    Matrix acc(q.rows(), q.cols());
    for (int h = 0; h < p.heads; ++h) {
        const Matrix ph = p.head(h);
        axpy(acc, 1.0, matmul(ph, sca_head(q, z, ph)));
    }
    const double c = head_scale(p, cfg, form);
    return (c == 1.0) ? acc : scale(acc, c);
}

Matrix msca_step(const Matrix& q, const Matrix& z, const SubspaceDictionary& p,
                 StepSize alpha, const RateConfig& cfg, StepForm form) {
    const Matrix att = msca(q, z, p, cfg, form);
    if (form == StepForm::simplified) {
        Matrix out = q;
        axpy(out, -alpha.alpha, att);
        return out;
    }
    const double c = double(p.head_dim) / (double(cfg.sample_count) * cfg.epsilon * cfg.epsilon);
    Matrix out = scale(q, 1.0 + alpha.alpha * c);
    axpy(out, -alpha.alpha * c, att);
    return out;
}

Matrix qbar_sa_step(const Matrix& qbar, StepSize alpha, const RateConfig& cfg) {
    cfg.validate();
    const double d = double(qbar.rows()) / (double(qbar.cols()) * cfg.epsilon * cfg.epsilon);
    const Matrix attn = softmax_columns(matmul_tn(qbar, qbar));
    Matrix out = scale(qbar, 1.0 + alpha.alpha * d);
    axpy(out, -alpha.alpha * d * d, matmul(qbar, attn));
    return out;
}

Matrix qbar_sa_step_exact(const Matrix& qbar, StepSize alpha, const RateConfig& cfg) {
    RateConfig local = cfg;
    local.ambient_dim = qbar.rows();
    local.sample_count = qbar.cols();
    Matrix out = qbar;
    axpy(out, alpha.alpha, rate_gradient(qbar, local));
    return out;
}

Matrix ca_step(const Matrix& q, const Matrix& z, StepSize alpha, const RateConfig& cfg) {
    cfg.validate();
    if (q.rows() != z.rows()) throw ShapeMismatch("ca_step query rows");
    const double d = double(z.rows()) / (double(z.cols()) * cfg.epsilon * cfg.epsilon);
    const Matrix attn = softmax_columns(matmul_tn(z, q));  // N x C
    Matrix out = scale(q, 1.0 + alpha.alpha * d);
    axpy(out, -alpha.alpha * d * d, matmul(z, attn));
    return out;
}

ConcatSaResult concat_sa_decompose(const Matrix& z, const Matrix& q, StepSize alpha) {
    if (q.rows() != z.rows()) throw ShapeMismatch("concat_sa_decompose rows");
    const int n = z.cols();

    ConcatSaResult r;
    r.zzt_z = matmul(z, matmul_tn(z, z));
    r.qqt_z = matmul(q, matmul_tn(q, z));
    r.zzt_q = matmul(z, matmul_tn(z, q));
    r.qqt_q = matmul(q, matmul_tn(q, q));

    r.z_next = z;
    axpy(r.z_next, -alpha.alpha, r.zzt_z);
    axpy(r.z_next, -alpha.alpha, r.qqt_z);
    r.q_next = q;
    axpy(r.q_next, -alpha.alpha, r.zzt_q);
    axpy(r.q_next, -alpha.alpha, r.qqt_q);

    // Concatenated route: [Z, Q] - alpha [Z, Q]([Z, Q]^T [Z, Q]).
    const Matrix zbar = concat_cols(z, q);
    Matrix concat = zbar;
    axpy(concat, -alpha.alpha, matmul(zbar, matmul_tn(zbar, zbar)));

    const Matrix cz = concat.columns(0, n);
    const Matrix cq = concat.columns(n, concat.cols());
    r.path_gap = std::max(max_abs_diff(cz, r.z_next), max_abs_diff(cq, r.q_next));
    return r;
}

}  // namespace depict
