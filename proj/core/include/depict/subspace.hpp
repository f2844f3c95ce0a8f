#ifndef DEPICT_SUBSPACE_HPP
#define DEPICT_SUBSPACE_HPP

#include <vector>

#include "depict/matrix.hpp"
#include "depict/rate.hpp"
#include "depict/rng.hpp"

namespace depict {

/// Principal directions and projections of a centered embedding matrix.
struct PcaResult {
    Matrix directions;              // D x C, orthonormal, sign-fixed
    std::vector<double> variances;  // descending, eigenvalue/N per direction
    Matrix coefficients;            // C x N, U^T Z
    std::vector<double> mean;       // subtracted mean (zeros when input was pre-centered)
    bool rank_deficient = false;    // C exceeded the numerical rank; trailing
                                    // directions have zero variance
};

struct KMeansResult {
    Matrix centroids;             // D x C
    std::vector<int> assignments; // N labels in [0, C)
    std::vector<int> counts;      // per-centroid sizes, sum to N
    double inertia = 0.0;         // total squared distance
    int iterations = 0;
    std::vector<double> inertia_history;  // one entry per Lloyd iteration
};

/// How to materialize the rank-C matrix whose columns repeat per class.
struct QbarSpec {
    enum class Source { principal_directions, kmeans_centroids, explicit_columns };
    Source source = Source::principal_directions;
    std::vector<int> counts;  // replication count per column, sums to N
    Matrix columns;           // used when source == explicit_columns
    Seed seed{0};             // used when source == kmeans_centroids
};

struct LowrankQuality {
    double gap = 0.0;       // |R(Z) - R(Qbar)|
    double rate_z = 0.0;
    double rate_qbar = 0.0;
};

/// Subtract the per-row mean so that Z * 1 = 0; returns the removed mean.
std::pair<Matrix, std::vector<double>> center_columns(const Matrix& z);

/// Top-C principal directions of centered Z, via the smaller-side Gram
/// eigendecomposition. Directions are sign-fixed (largest-magnitude entry
/// positive) so downstream segmentation is deterministic. When C exceeds the
/// numerical rank the trailing directions are filled with an orthonormal
/// complement, get zero variance, and rank_deficient is set.
PcaResult pca(const Matrix& z, int c);

/// U U^T Z for the top-C directions: the Frobenius-optimal rank-C
/// approximation of Z (Eckart-Young).
Matrix best_rank_c_approx(const Matrix& z, int c);

/// Per-column argmax of the sign-fixed principal coefficients; the
/// first-10-directions-as-centroids segmentation rule. Ties break to the
/// lowest class index.
std::vector<int> pca_segment(const Matrix& z, int c);

/// Lloyd's algorithm with k-means++ seeding; deterministic per seed.
/// Empty clusters are re-seeded at the point farthest from its centroid.
KMeansResult kmeans(const Matrix& z, int c, Seed seed, int max_iters = 300);

/// Materialize Qbar per spec (replicating column i counts[i] times), then
/// report |R(Z) - R(Qbar)| together with both rates.
LowrankQuality lowrank_quality(const Matrix& z, const QbarSpec& spec, const RateConfig& cfg);

/// Replicate column i of `columns` counts[i] times.
Matrix replicate_columns(const Matrix& columns, const std::vector<int>& counts);

}  // namespace depict

#endif
