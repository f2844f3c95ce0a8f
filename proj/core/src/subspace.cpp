#include "depict/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "depict/linalg.hpp"

namespace depict {

std::pair<Matrix, std::vector<double>> center_columns(const Matrix& z) {
    const int d = z.rows(), n = z.cols();
    std::vector<double> mean(d, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) mean[i] += z(i, j);
    for (double& m : mean) m /= std::max(1, n);
    Matrix out = z;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) out(i, j) -= mean[i];
    return {std::move(out), std::move(mean)};
}

namespace {

void sign_fix_columns(Matrix& u) {
    for (int j = 0; j < u.cols(); ++j) {
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < u.rows(); ++i) {
            const double a = std::abs(u(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (u(arg, j) < 0.0)
            for (int i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
    }
}

// Extend the orthonormal columns of u (first `have` valid) with standard
// basis vectors orthogonalized against them, until `want` columns exist.
void extend_orthonormal(Matrix& u, int have, int want) {
    int next_axis = 0;
    for (int j = have; j < want; ++j) {
        while (true) {
            if (next_axis >= u.rows())
                throw RankDeficient("cannot extend orthonormal basis");
            Matrix cand(u.rows(), 1);
            cand(next_axis, 0) = 1.0;
            ++next_axis;
            // Gram-Schmidt against everything accepted so far, twice for
            // numerical cleanliness.
            for (int pass = 0; pass < 2; ++pass)
                for (int k = 0; k < j; ++k) {
                    double s = 0.0;
                    for (int i = 0; i < u.rows(); ++i) s += u(i, k) * cand(i, 0);
                    for (int i = 0; i < u.rows(); ++i) cand(i, 0) -= s * u(i, k);
                }
            double norm = 0.0;
            for (int i = 0; i < u.rows(); ++i) norm += cand(i, 0) * cand(i, 0);
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (int i = 0; i < u.rows(); ++i) u(i, j) = cand(i, 0) / norm;
                break;
            }
        }
    }
}

}  // namespace

PcaResult pca(const Matrix& z, int c) {
    const int d = z.rows(), n = z.cols();
    if (c < 1 || c > std::min(d, n)) throw ConfigInvalid("pca: need 1 <= C <= min(D, N)");
    require_finite(z, "pca input");

    PcaResult out;
    out.mean.assign(d, 0.0);
    out.directions = Matrix(d, c);
    out.variances.assign(c, 0.0);

    // Eigen-decompose the smaller Gram side; both share nonzero eigenvalues.
    const bool d_side = d <= n;
    const Matrix gram = d_side ? matmul_nt(z, z) : matmul_tn(z, z);
    const SymEigen eig = sym_eigen(gram);

    const double lam_max = eig.values.empty() ? 0.0 : std::max(0.0, eig.values.front());
    const double rank_tol = std::max(1e-12 * lam_max, 1e-300);

    int filled = 0;
    for (int j = 0; j < c; ++j) {
        const double lam = (j < int(eig.values.size())) ? eig.values[j] : 0.0;
        if (lam <= rank_tol) break;
        if (d_side) {
            for (int i = 0; i < d; ++i) out.directions(i, j) = eig.vectors(i, j);
        } else {
            // u_j = Z v_j / sqrt(lambda_j)
            const double inv = 1.0 / std::sqrt(lam);
            for (int i = 0; i < d; ++i) {
                double s = 0.0;
                for (int k = 0; k < n; ++k) s += z(i, k) * eig.vectors(k, j);
                out.directions(i, j) = s * inv;
            }
        }
        out.variances[j] = lam / n;
        ++filled;
    }
    if (filled < c) {
        out.rank_deficient = true;
        extend_orthonormal(out.directions, filled, c);
    }
    sign_fix_columns(out.directions);
    out.coefficients = matmul_tn(out.directions, z);
    return out;
}

Matrix best_rank_c_approx(const Matrix& z, int c) {
    const PcaResult p = pca(z, c);
    return matmul(p.directions, p.coefficients);
}

std::vector<int> pca_segment(const Matrix& z, int c) {
    if (c < 2) throw ConfigInvalid("pca_segment: need C >= 2");
    const PcaResult p = pca(z, c);
    const int n = z.cols();
    std::vector<int> labels(n, 0);
    for (int j = 0; j < n; ++j) {
        double best = -std::numeric_limits<double>::infinity();
        int arg = 0;
        for (int k = 0; k < c; ++k) {
            const double v = p.coefficients(k, j);
            if (v > best) {
                best = v;
                arg = k;
            }
        }
        labels[j] = arg;
    }
    return labels;
}

namespace {

double sq_dist(const Matrix& z, int j, const Matrix& centroids, int k) {
    double s = 0.0;
    for (int i = 0; i < z.rows(); ++i) {
        const double diff = z(i, j) - centroids(i, k);
        s += diff * diff;
    }
    return s;
}

}  // namespace

namespace {

// Means of the assigned columns; empty clusters are repaired by stealing the
// point currently farthest from its own centroid.
void update_centroids(const Matrix& z, std::vector<int>& assignments, Matrix& centroids,
                      std::vector<int>& counts) {
    const int d = z.rows(), n = z.cols(), c = centroids.cols();
    for (int k = 0; k < c; ++k) {
        counts.assign(c, 0);
        Matrix sums(d, c);
        for (int j = 0; j < n; ++j) {
            ++counts[assignments[j]];
            for (int i = 0; i < d; ++i) sums(i, assignments[j]) += z(i, j);
        }
        int empty = -1;
        for (int kk = 0; kk < c; ++kk)
            if (counts[kk] == 0) {
                empty = kk;
                break;
            }
        if (empty < 0) {
            for (int kk = 0; kk < c; ++kk)
                for (int i = 0; i < d; ++i) centroids(i, kk) = sums(i, kk) / counts[kk];
            return;
        }
        double worst = -1.0;
        int far_j = 0;
        for (int j = 0; j < n; ++j) {
            const double s = sq_dist(z, j, centroids, assignments[j]);
            if (s > worst && counts[assignments[j]] > 1) {
                worst = s;
                far_j = j;
            }
        }
        assignments[far_j] = empty;
        // Loop repeats with the repaired assignment; at most C repairs.
    }
    throw NoConvergence("kmeans empty-cluster repair");
}

}  // namespace

KMeansResult kmeans(const Matrix& z, int c, Seed seed, int max_iters) {
    const int d = z.rows(), n = z.cols();
    if (c < 1 || n < c) throw ConfigInvalid("kmeans: need N >= C >= 1");
    require_finite(z, "kmeans input");
    Rng rng(seed);

    // k-means++ seeding.
    KMeansResult res;
    res.centroids = Matrix(d, c);
    std::vector<int> chosen;
    chosen.push_back(int(rng.next_below(std::uint64_t(n))));
    std::vector<double> dist2(n, 0.0);
    for (int k = 1; k < c; ++k) {
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (int prev : chosen) {
                double s = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double diff = z(i, j) - z(i, prev);
                    s += diff * diff;
                }
                best = std::min(best, s);
            }
            dist2[j] = best;
            total += best;
        }
        int pick;
        if (total <= 0.0) {
            pick = int(rng.next_below(std::uint64_t(n)));
        } else {
            double target = rng.next_double() * total;
            pick = n - 1;
            for (int j = 0; j < n; ++j) {
                target -= dist2[j];
                if (target <= 0.0) {
                    pick = j;
                    break;
                }
            }
        }
        chosen.push_back(pick);
    }
    for (int k = 0; k < c; ++k)
        for (int i = 0; i < d; ++i) res.centroids(i, k) = z(i, chosen[k]);

    res.assignments.assign(n, -1);
    res.counts.assign(c, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        double inertia = 0.0;
        for (int j = 0; j < n; ++j) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int k = 0; k < c; ++k) {
                const double s = sq_dist(z, j, res.centroids, k);
                if (s < best) {
                    best = s;
                    arg = k;
                }
            }
            if (arg != res.assignments[j]) {
                res.assignments[j] = arg;
                changed = true;
            }
            inertia += best;
        }
        res.iterations = iter + 1;
        res.inertia_history.push_back(inertia);
        if (!changed) break;
        update_centroids(z, res.assignments, res.centroids, res.counts);
    }

    // Returned centroids are exactly the means of the final assignment.
    update_centroids(z, res.assignments, res.centroids, res.counts);
    res.counts.assign(c, 0);
    res.inertia = 0.0;
    for (int j = 0; j < n; ++j) {
        ++res.counts[res.assignments[j]];
        res.inertia += sq_dist(z, j, res.centroids, res.assignments[j]);
    }
    return res;
}

Matrix replicate_columns(const Matrix& columns, const std::vector<int>& counts) {
    if (int(counts.size()) != columns.cols())
        throw CountMismatch("one count per column required");
    int total = 0;
    for (int c : counts) {
        if (c < 0) throw CountMismatch("negative replication count");
        total += c;
    }
    Matrix out(columns.rows(), total);
    int at = 0;
    for (int j = 0; j < columns.cols(); ++j)
        for (int r = 0; r < counts[j]; ++r) {
            for (int i = 0; i < columns.rows(); ++i) out(i, at) = columns(i, j);
            ++at;
        }
    return out;
}

LowrankQuality lowrank_quality(const Matrix& z, const QbarSpec& spec, const RateConfig& cfg) {
    int total = 0;
    for (int c : spec.counts) total += c;
    if (total != z.cols()) throw CountMismatch("replication counts must sum to N");

    Matrix source;
    switch (spec.source) {
        case QbarSpec::Source::principal_directions:
            source = pca(z, int(spec.counts.size())).directions;
            break;
        case QbarSpec::Source::kmeans_centroids:
            source = kmeans(z, int(spec.counts.size()), spec.seed).centroids;
            break;
        case QbarSpec::Source::explicit_columns:
            source = spec.columns;
            if (source.cols() != int(spec.counts.size()))
                throw CountMismatch("explicit columns vs counts");
            if (source.rows() != z.rows())
                throw ShapeMismatch("explicit columns row count");
            break;
    }

    const Matrix qbar = replicate_columns(source, spec.counts);
    LowrankQuality out;
    out.rate_z = coding_rate(z, cfg);
    out.rate_qbar = coding_rate(qbar, cfg);
    out.gap = std::abs(out.rate_z - out.rate_qbar);
    return out;
}

}  // namespace depict
