#include "core/margins.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace facepool::margins {

double normalized_feature_norm(double norm, const NormBatchStats& stats) {
    if (stats.sigma_z < 1e-12) return 0.0;
    const double z = (norm - stats.mu_z) / (stats.sigma_z / stats.h);
    return std::clamp(z, -1.0, 1.0);
}

double margin_score(double cos_theta, bool is_target, double z_hat, const MarginParams& params) {
    const double c = std::clamp(cos_theta, -1.0, 1.0);
    if (!is_target) return params.s * c;
    const double g_angle = -params.m * z_hat;
    const double g_add = params.m * z_hat + params.m;
    // cos(theta + g) expanded so the g = 0 case stays exact.
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - c * c));
    const double shifted = c * std::cos(g_angle) - sin_theta * std::sin(g_angle);
    return params.s * shifted - g_add;
}

double cosface_score(double cos_theta, bool is_target, const MarginParams& params) {
    return margin_score(cos_theta, is_target, 0.0, params);
}

double arcface_score(double cos_theta, bool is_target, const MarginParams& params) {
    return margin_score(cos_theta, is_target, -1.0, params);
}

double adaface_loss(std::span<const double> cos_thetas, std::size_t target_index, double z_hat,
                    const MarginParams& params) {
    if (target_index >= cos_thetas.size())
        raise(ErrorCode::IndexOutOfRange, "adaface_loss: target index out of range");
    std::vector<double> scores(cos_thetas.size());
    for (std::size_t j = 0; j < cos_thetas.size(); ++j)
        scores[j] = margin_score(cos_thetas[j], j == target_index, z_hat, params);
    const double mx = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (double v : scores) sum += std::exp(v - mx);
    const double logsumexp = mx + std::log(sum);
    return logsumexp - scores[target_index];
}

}  // namespace facepool::margins
