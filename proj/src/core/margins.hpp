#pragma once

#include <cstddef>
#include <span>

namespace facepool::margins {

struct NormBatchStats {
    double mu_z = 0.0;
    double sigma_z = 0.0;
    double h = 0.33;  // concentration constant for the norm z-score
};

struct MarginParams {
    double m = 0.4;
    double s = 64.0;
};

// ((norm - mu)/(sigma/h)) clamped to [-1, 1]; 0 when sigma < 1e-12.
double normalized_feature_norm(double norm, const NormBatchStats& stats);

// Target class: s*cos(theta + g_angle) - g_add with g_angle = -m*z_hat and
// g_add = m*z_hat + m. Non-target: s*cos(theta).
// z_hat = 0 reduces to CosFace, z_hat = -1 to ArcFace.
double margin_score(double cos_theta, bool is_target, double z_hat, const MarginParams& params);

double cosface_score(double cos_theta, bool is_target, const MarginParams& params);
double arcface_score(double cos_theta, bool is_target, const MarginParams& params);

// Cross-entropy of the margin-adjusted target against scaled non-targets,
// stabilized by max subtraction.
double adaface_loss(std::span<const double> cos_thetas, std::size_t target_index, double z_hat,
                    const MarginParams& params);

}  // namespace facepool::margins
