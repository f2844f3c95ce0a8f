#ifndef DEPICT_DECODER_HPP
#define DEPICT_DECODER_HPP

#include <string>
#include <vector>

#include "depict/operators.hpp"
#include "depict/rng.hpp"

namespace depict {

struct DecoderConfig {
    enum class Variant : std::uint8_t { sa, ca };

    Variant variant = Variant::ca;
    int sa_layers = 2;   // L1
    int ca_layers = 2;   // L2 (ignored by the SA variant)
    int heads = 2;       // H
    int head_dim = 2;    // M
    int num_classes = 4; // C
    int ambient_dim = 16;
    double epsilon = 0.5;
    StepForm step_form = StepForm::simplified;
    bool mask_layer_norm = true;  // normalize Z before the Q^T Z dot-product
    double eps_ln = 1e-6;

    int dict_cols() const { return heads * head_dim; }

    void validate() const {
        if (sa_layers < 0) throw ConfigInvalid("sa_layers must be >= 0");
        if (variant == Variant::ca && ca_layers < 1)
            throw ConfigInvalid("ca variant needs ca_layers >= 1");
        if (heads < 1 || head_dim < 1) throw ConfigInvalid("heads and head_dim must be >= 1");
        if (dict_cols() > ambient_dim)
            throw ConfigInvalid("dictionary cannot have more columns than ambient dimensions");
        if (num_classes < 0 || (variant == Variant::ca && num_classes < 1))
            throw ConfigInvalid("num_classes must be >= 1 for the ca variant");
        if (!(epsilon > 0.0) || !(eps_ln > 0.0))
            throw ConfigInvalid("epsilon and eps_ln must be > 0");
        if (ambient_dim < 1) throw ConfigInvalid("ambient_dim must be >= 1");
    }
};

/// One attention layer's learnables.
struct DecoderLayerParams {
    SubspaceDictionary dict;
    StepSize alpha;
    LayerNormParams ln;
};

struct DecoderParams {
    std::vector<DecoderLayerParams> sa;  // L1 entries
    std::vector<DecoderLayerParams> ca;  // L2 entries (empty for the SA variant)
    ClassEmbeddings queries;             // matrix = learnable Q0, init = snapshot
    LayerNormParams mask_ln;

    /// Conventional initialization: per-head QR-orthonormalized Gaussian P,
    /// alpha = 0.1, unit LayerNorm, Q0 Gaussian at scale 0.02.
    static DecoderParams init(const DecoderConfig& cfg, Seed seed);
};

/// C x N mask logits M = Q^T Z.
struct MaskMatrix {
    Matrix logits;
};

struct ForwardTrace {
    std::vector<Matrix> z;  // Z_0 .. Z_L1
    std::vector<Matrix> q;  // Q_0 .. Q_L2 (per SA layer for the SA variant)
};

struct ForwardResult {
    Matrix z_refined;
    Matrix q_final;
    MaskMatrix mask;
    ForwardTrace trace;
};

/// L1 x [pre-norm MSSA step on Z], then L2 x [pre-norm MSCA step on Q
/// against the refined Z], then mask logits. Q stays fixed during the
/// refinement phase. LayerNorm feeds the attention branch only, so alpha = 0
/// layers are exact identities.
ForwardResult depict_ca_forward(const Matrix& z0, const DecoderParams& params,
                                const DecoderConfig& cfg);

/// Concatenates [Z0, Q0], runs L1 pre-norm MSSA steps on the joint matrix,
/// splits back, and forms the mask logits.
ForwardResult depict_sa_forward(const Matrix& z0, const DecoderParams& params,
                                const DecoderConfig& cfg);

ForwardResult decoder_forward(const Matrix& z0, const DecoderParams& params,
                              const DecoderConfig& cfg);

/// Per-column argmax over classes; ties break to the lowest class index.
std::vector<int> predict_labels(const MaskMatrix& mask);

/// One measurement of the layer-probe grid.
struct ProbeRow {
    int layer = 0;       // which SA layer's dictionary
    int head = 0;
    int point = 0;       // which Z_point along the refinement trace
    double rate = 0.0;   // R(P_h^T Z_point)
    double ratio = 0.0;  // R(P_h P_h^T Z_point) / R(Z_point)
    double alpha = 0.0;  // the layer's learned step size
};

/// Projected coding rate of every SA layer's head subspaces measured at every
/// refinement snapshot; rows = sa_layers x heads x (sa_layers + 1).
std::vector<ProbeRow> layerwise_rate_probe(const DecoderParams& params,
                                           const DecoderConfig& cfg, const Matrix& z0);

enum class PerturbKind : std::uint8_t {
    per_head_orthogonal,   // P'_h <- P'_h O_M, fresh O per head per layer
    full_orthogonal,       // P <- P O_K per layer
    orthogonalize_heads,   // P'_h <- qr_orthonormalize(P'_h)
    gaussian_noise,        // P <- P + sigma * G
};

DecoderParams perturb_params(const DecoderParams& params, PerturbKind kind, double sigma,
                             Seed seed);

/// Versioned binary checkpoint ("DPCT", little-endian f64 tensors) plus a
/// JSON sidecar at path + ".json" mirroring the config.
void save_checkpoint(const std::string& path, const DecoderParams& params,
                     const DecoderConfig& cfg);

struct Checkpoint {
    DecoderConfig config;
    DecoderParams params;
};

Checkpoint load_checkpoint(const std::string& path);

}  // namespace depict

#endif
