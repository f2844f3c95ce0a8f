#include "depict/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace depict {

double asymmetry(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("asymmetry of non-square matrix");
    double worst = 0.0;
    for (int j = 0; j < a.cols(); ++j)
        for (int i = 0; i < j; ++i) worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
    return worst;
}

namespace {

constexpr double kSymTol = 1e-10;

void require_symmetric(const Matrix& a, const char* who) {
    if (a.rows() != a.cols()) throw ShapeMismatch(who);
    // Tolerance scales with the matrix magnitude so large well-conditioned
    // Gram matrices are not rejected on harmless roundoff.
    const double tol = kSymTol * std::max(1.0, max_abs(a));
    if (asymmetry(a) > tol) throw NotSymmetric(who);
}

// In-place attempt; returns false if a non-positive pivot shows up.
bool try_cholesky(Matrix& a) {
    const int n = a.rows();
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
    }
    // Zero out the strict upper triangle so the result is a clean L.
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) a(i, j) = 0.0;
    return true;
}

Matrix cholesky_with_jitter(const Matrix& a, const char* who) {
    require_symmetric(a, who);
    require_finite(a, who);
    const int n = a.rows();
    double jitter = 0.0;
    const double base = 1e-12 * trace(a) / std::max(1, n);
    for (int attempt = 0; attempt <= 3; ++attempt) {
        Matrix l = a;
        if (attempt > 0) {
            jitter = (attempt == 1) ? std::abs(base) : jitter * 10.0;
            if (jitter == 0.0) jitter = 1e-300;  // trace can be exactly zero
            for (int i = 0; i < n; ++i) l(i, i) += jitter;
        }
        if (try_cholesky(l)) return l;
    }
    throw NotPositiveDefinite(who);
}

}  // namespace

Matrix cholesky_factor(const Matrix& a) { return cholesky_with_jitter(a, "cholesky_factor"); }

double cholesky_logdet(const Matrix& a) {
    const Matrix l = cholesky_with_jitter(a, "cholesky_logdet");
    double s = 0.0;
    for (int i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

Matrix cholesky_solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("cholesky_solve");
    const Matrix l = cholesky_with_jitter(a, "cholesky_solve");
    const int n = a.rows(), m = b.cols();
    Matrix x = b;
    // forward substitution L y = b
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) {
            double s = x(i, j);
            for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
            x(i, j) = s / l(i, i);
        }
    // back substitution L^T x = y
    for (int j = 0; j < m; ++j)
        for (int i = n - 1; i >= 0; --i) {
            double s = x(i, j);
            for (int k = i + 1; k < n; ++k) s -= l(k, i) * x(k, j);
            x(i, j) = s / l(i, i);
        }
    return x;
}

SymEigen sym_eigen(const Matrix& a) {
    require_symmetric(a, "sym_eigen");
    require_finite(a, "sym_eigen");
    const int n = a.rows();
    Matrix d = a;
    Matrix v = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < j; ++i) s += d(i, j) * d(i, j);
        return std::sqrt(2.0 * s);
    };

    const double scale = std::max(1.0, max_abs(d));
    const double tol = 1e-14 * scale * n;
    const int max_sweeps = 100;
    int sweep = 0;
    while (off_norm() > tol) {
        if (++sweep > max_sweeps) throw NoConvergence("sym_eigen jacobi sweeps");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = d(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double app = d(p, p), aqq = d(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double dkp = d(k, p), dkq = d(k, q);
                    d(k, p) = c * dkp - s * dkq;
                    d(k, q) = s * dkp + c * dkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double dpk = d(p, k), dqk = d(q, k);
                    d(p, k) = c * dpk - s * dqk;
                    d(q, k) = s * dpk + c * dqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return d(i, i) > d(j, j); });

    SymEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = d(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

Matrix qr_orthonormalize(const Matrix& b) {
    const int m = b.rows(), n = b.cols();
    if (n > m) throw ShapeMismatch("qr_orthonormalize needs cols <= rows");
    if (n == 0) return b;
    require_finite(b, "qr_orthonormalize");

    // Householder QR; R's diagonal doubles as the rank certificate.
    Matrix r = b;
    std::vector<Matrix> reflectors;
    reflectors.reserve(n);
    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int i = k; i < m; ++i) norm += r(i, k) * r(i, k);
        norm = std::sqrt(norm);
        Matrix vk(m, 1);
        if (norm > 0.0) {
            const double alpha = (r(k, k) >= 0.0) ? -norm : norm;
            for (int i = k; i < m; ++i) vk(i, 0) = r(i, k);
            vk(k, 0) -= alpha;
            double vnorm = 0.0;
            for (int i = k; i < m; ++i) vnorm += vk(i, 0) * vk(i, 0);
            vnorm = std::sqrt(vnorm);
            if (vnorm > 0.0) {
                for (int i = k; i < m; ++i) vk(i, 0) /= vnorm;
                for (int j = k; j < n; ++j) {
                    double s = 0.0;
                    for (int i = k; i < m; ++i) s += vk(i, 0) * r(i, j);
                    for (int i = k; i < m; ++i) r(i, j) -= 2.0 * s * vk(i, 0);
                }
            }
        }
        reflectors.push_back(std::move(vk));
    }

    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const double d = std::abs(r(k, k));
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    if (!(dmin >= 1e-12 * dmax) || dmax == 0.0)
        throw RankDeficient("qr_orthonormalize input");

    // Q = H_0 ... H_{n-1} applied to the first n identity columns.
    Matrix q(m, n);
    for (int j = 0; j < n; ++j) q(j, j) = 1.0;
    for (int k = n - 1; k >= 0; --k) {
        const Matrix& vk = reflectors[k];
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = k; i < m; ++i) s += vk(i, 0) * q(i, j);
            for (int i = k; i < m; ++i) q(i, j) -= 2.0 * s * vk(i, 0);
        }
    }

    // Fix the sign so that span is preserved but Q R has positive R diagonal:
    // keeps the "already orthonormal in, same matrix out (up to sign)" rule
    // simple to reason about.
    for (int k = 0; k < n; ++k)
        if (r(k, k) < 0.0)
            for (int i = 0; i < m; ++i) q(i, k) = -q(i, k);
    return q;
}

}  // namespace depict
