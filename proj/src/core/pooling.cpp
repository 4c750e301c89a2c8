#include "core/pooling.hpp"

#include <cmath>

#include "core/error.hpp"

namespace facepool::pooling {

StrategyKind parse_strategy(const std::string& name) {
    if (name == "ap") return StrategyKind::AP;
    if (name == "qp") return StrategyKind::QP;
    if (name == "np") return StrategyKind::NP;
    if (name == "npstar") return StrategyKind::NPStar;
    if (name == "sp") return StrategyKind::SP;
    raise(ErrorCode::InvalidArgument, "unknown pooling strategy: " + name);
}

const char* strategy_name(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::AP: return "ap";
        case StrategyKind::QP: return "qp";
        case StrategyKind::NP: return "np";
        case StrategyKind::NPStar: return "npstar";
        case StrategyKind::SP: return "sp";
    }
    return "?";
}

namespace {

std::vector<double> scaled(std::vector<double> scores, double lambda) {
    for (double& s : scores) s *= lambda;
    return scores;
}

}  // namespace

std::vector<double> weights_from_norms(
    const PoolingStrategy& strategy, std::span<const double> norms,
    const std::optional<std::vector<double>>& detection_probs) {
    const std::size_t k = norms.size();
    if (k == 0) raise(ErrorCode::EmptyTemplate, "weights_from_norms: empty template");
    if (strategy.kind != StrategyKind::AP && !(strategy.lambda > 0.0))
        raise(ErrorCode::InvalidArgument, "lambda must be positive");

    switch (strategy.kind) {
        case StrategyKind::AP:
            return std::vector<double>(k, 1.0 / static_cast<double>(k));
        case StrategyKind::NP:
            return numerics::softmax(scaled(numerics::max_normalize_norms(norms), strategy.lambda));
        case StrategyKind::NPStar:
            return numerics::softmax(
                scaled(numerics::min_max_normalize_norms(norms), strategy.lambda));
        case StrategyKind::SP:
            return numerics::sparsemax(
                scaled(numerics::max_normalize_norms(norms), strategy.lambda));
        case StrategyKind::QP: {
            if (!detection_probs)
                raise(ErrorCode::MissingQualityScores, "QP requires detection probabilities");
            if (detection_probs->size() != k)
                raise(ErrorCode::LengthMismatch, "QP probability count mismatch");
            std::vector<double> logits(k);
            for (std::size_t i = 0; i < k; ++i) {
                const double p = (*detection_probs)[i];
                if (!(p > 0.0 && p < 1.0))
                    raise(ErrorCode::InvalidArgument,
                          "detection probability outside (0,1): " + std::to_string(p));
                logits[i] = std::min(0.5 * std::log(p / (1.0 - p)), 7.0);
            }
            return numerics::softmax(scaled(std::move(logits), strategy.lambda));
        }
    }
    raise(ErrorCode::InvalidArgument, "unreachable strategy");
}

std::vector<double> compute_weights(
    const PoolingStrategy& strategy, const std::vector<numerics::Vec>& features,
    const std::optional<std::vector<double>>& detection_probs) {
    if (features.empty()) raise(ErrorCode::EmptyTemplate, "compute_weights: empty template");
    std::vector<double> norms(features.size());
    for (std::size_t i = 0; i < features.size(); ++i) {
        norms[i] = numerics::l2_norm(features[i]);
        if (strategy.kind != StrategyKind::AP && strategy.kind != StrategyKind::QP &&
            norms[i] <= 0.0)
            raise(ErrorCode::ZeroNormInput, "compute_weights: zero-norm feature");
    }
    return weights_from_norms(strategy, norms, detection_probs);
}

PooledTemplate pool_template(
    const PoolingStrategy& strategy, const std::vector<numerics::Vec>& features,
    const std::optional<std::vector<double>>& detection_probs,
    std::vector<std::string> member_ids, std::string subject_id, int domain_code) {
    PooledTemplate out;
    out.weights = compute_weights(strategy, features, detection_probs);
    out.feature = numerics::weighted_combine(features, out.weights);
    out.member_ids = std::move(member_ids);
    out.subject_id = std::move(subject_id);
    out.domain_code = domain_code;
    out.strategy = strategy;
    return out;
}

PooledTemplate pool_bank_rows(
    const PoolingStrategy& strategy, const float* data, std::size_t dim,
    const std::vector<std::uint64_t>& rows,
    const std::optional<std::vector<double>>& detection_probs,
    std::vector<std::string> member_ids, std::string subject_id, int domain_code) {
    if (rows.empty()) raise(ErrorCode::EmptyTemplate, "pool_bank_rows: empty template");
    std::vector<double> norms(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const float* r = data + rows[i] * dim;
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) acc += static_cast<double>(r[d]) * r[d];
        norms[i] = std::sqrt(acc);
        if (strategy.kind != StrategyKind::AP && strategy.kind != StrategyKind::QP &&
            norms[i] <= 0.0)
            raise(ErrorCode::ZeroNormInput, "pool_bank_rows: zero-norm feature");
    }
    PooledTemplate out;
    out.weights = weights_from_norms(strategy, norms, detection_probs);
    out.feature.assign(dim, 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const float* r = data + rows[i] * dim;
        const double w = out.weights[i];
        for (std::size_t d = 0; d < dim; ++d) out.feature[d] += w * static_cast<double>(r[d]);
    }
    out.member_ids = std::move(member_ids);
    out.subject_id = std::move(subject_id);
    out.domain_code = domain_code;
    out.strategy = strategy;
    return out;
}

}  // namespace facepool::pooling
