#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core/bank_io.hpp"
#include "core/pooling.hpp"
#include "core/protocol.hpp"

namespace facepool::evaluation {

// Dense probe-by-gallery cosine scores with identity labels on both axes.
struct ScoreMatrix {
    std::vector<std::string> probe_labels;
    std::vector<std::string> gallery_labels;
    std::vector<double> scores;  // row-major, probes x gallery

    std::size_t rows() const { return probe_labels.size(); }
    std::size_t cols() const { return gallery_labels.size(); }
    double at(std::size_t i, std::size_t j) const { return scores[i * cols() + j]; }
};

ScoreMatrix score_probes(const std::vector<pooling::PooledTemplate>& probes,
                         const std::vector<pooling::PooledTemplate>& gallery);

// rank_retrieval[r] = fraction of probes whose mate ranks within the top r+1
// under descending score, ties broken by ascending gallery index.
struct CmcCurve {
    std::vector<double> rank_retrieval;

    // 1-based rank accessor, clamped at the final entry.
    double at_rank(std::size_t rank) const;
};

CmcCurve closed_set_cmc(const ScoreMatrix& scores, const std::vector<std::string>& mate_map);
CmcCurve closed_set_cmc(const ScoreMatrix& scores);  // mates taken from probe labels

struct OpenSetResult {
    double fpir_target = 0.0;
    double threshold = 0.0;
    double fnir = 0.0;
    double achieved_fpir = 0.0;
};

// Threshold = smallest candidate value whose false-positive identification rate
// (fraction of non-mated probes with top-1 score >= threshold) stays <= target;
// candidates are the observed non-mated top-1 scores plus a -1 floor and a
// just-above-maximum sentinel. FNIR counts mated probes whose top-1 identity is
// wrong or whose mate score falls below the threshold.
OpenSetResult open_set_eval(const ScoreMatrix& mated, const std::vector<std::string>& mate_map,
                            const ScoreMatrix& nonmated, double fpir_target);
OpenSetResult open_set_eval(const ScoreMatrix& mated, const ScoreMatrix& nonmated,
                            double fpir_target);

struct NormQualityRow {
    int domain_code = 0;
    std::size_t media_count = 0;
    // Absent when fewer than 2 scored media exist or either series is constant.
    std::optional<double> pearson;
};

// Per-domain Pearson correlation between feature norms and recorded quality
// scores (falling back to detection probability when quality is absent).
std::vector<NormQualityRow> norm_quality_report(
    const std::vector<protocol::MediaRecord>& records, const bankio::FeatureBank& bank);

}  // namespace facepool::evaluation
