#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/numerics.hpp"

namespace facepool::pooling {

enum class StrategyKind { AP, QP, NP, NPStar, SP };

struct PoolingStrategy {
    StrategyKind kind = StrategyKind::AP;
    double lambda = 1.0;
};

// Parses "ap" | "qp" | "np" | "npstar" | "sp"; throws InvalidArgument.
StrategyKind parse_strategy(const std::string& name);
const char* strategy_name(StrategyKind kind);

// Weighting from per-medium feature norms (and detection probabilities for QP):
//   AP:  uniform 1/k
//   NP:  softmax(lambda * norms/max)
//   NP*: softmax(lambda * (norms-min)/(max-min)), all-zero scores if degenerate
//   SP:  sparsemax(lambda * norms/max)
//   QP:  softmax(lambda * min(0.5*ln(p/(1-p)), 7))
std::vector<double> weights_from_norms(
    const PoolingStrategy& strategy, std::span<const double> norms,
    const std::optional<std::vector<double>>& detection_probs = std::nullopt);

// Convenience over explicit feature vectors; norms are derived internally.
std::vector<double> compute_weights(
    const PoolingStrategy& strategy, const std::vector<numerics::Vec>& features,
    const std::optional<std::vector<double>>& detection_probs = std::nullopt);

struct PooledTemplate {
    numerics::Vec feature;
    std::vector<double> weights;
    std::vector<std::string> member_ids;
    std::string subject_id;
    int domain_code = 0;
    PoolingStrategy strategy;
};

PooledTemplate pool_template(
    const PoolingStrategy& strategy, const std::vector<numerics::Vec>& features,
    const std::optional<std::vector<double>>& detection_probs = std::nullopt,
    std::vector<std::string> member_ids = {}, std::string subject_id = {},
    int domain_code = 0);

// Pools directly over float32 bank rows (row-major, `dim` wide) without
// materializing per-medium vectors.
PooledTemplate pool_bank_rows(
    const PoolingStrategy& strategy, const float* data, std::size_t dim,
    const std::vector<std::uint64_t>& rows,
    const std::optional<std::vector<double>>& detection_probs = std::nullopt,
    std::vector<std::string> member_ids = {}, std::string subject_id = {},
    int domain_code = 0);

}  // namespace facepool::pooling
