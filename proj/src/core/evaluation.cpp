#include "core/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "core/error.hpp"
#include "core/numerics.hpp"
#include "core/parallel.hpp"

namespace facepool::evaluation {

namespace {

std::size_t top1_column(const ScoreMatrix& m, std::size_t row) {
    std::size_t best = 0;
    double best_score = m.at(row, 0);
    for (std::size_t j = 1; j < m.cols(); ++j) {
        if (m.at(row, j) > best_score) {
            best_score = m.at(row, j);
            best = j;
        }
    }
    return best;
}

std::size_t mate_column(const ScoreMatrix& m, const std::string& subject) {
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.gallery_labels[j] == subject) return j;
    raise(ErrorCode::MissingMate, "no gallery template for subject " + subject);
}

}  // namespace

ScoreMatrix score_probes(const std::vector<pooling::PooledTemplate>& probes,
                         const std::vector<pooling::PooledTemplate>& gallery) {
    ScoreMatrix m;
    m.probe_labels.reserve(probes.size());
    m.gallery_labels.reserve(gallery.size());
    for (const auto& p : probes) m.probe_labels.push_back(p.subject_id);
    for (const auto& g : gallery) m.gallery_labels.push_back(g.subject_id);
    m.scores.resize(probes.size() * gallery.size());
    parallel_for(probes.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < gallery.size(); ++j)
            m.scores[i * gallery.size() + j] =
                numerics::cosine_similarity(probes[i].feature, gallery[j].feature);
    });
    return m;
}

double CmcCurve::at_rank(std::size_t rank) const {
    if (rank_retrieval.empty() || rank == 0) return 0.0;
    const std::size_t idx = std::min(rank, rank_retrieval.size()) - 1;
    return rank_retrieval[idx];
}

CmcCurve closed_set_cmc(const ScoreMatrix& scores, const std::vector<std::string>& mate_map) {
    if (mate_map.size() != scores.rows())
        raise(ErrorCode::LengthMismatch, "mate map size does not match probe count");
    if (scores.rows() == 0) raise(ErrorCode::EmptyProbeSet, "no probe rows to rank");

    std::vector<std::size_t> rank_hits(scores.cols(), 0);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        const std::size_t mate = mate_column(scores, mate_map[i]);
        const double mate_score = scores.at(i, mate);
        // Rank under descending score with ties broken by ascending gallery
        // index: strictly better columns all precede the mate, equal-scoring
        // columns precede it only at lower index.
        std::size_t rank = 1;
        for (std::size_t j = 0; j < scores.cols(); ++j) {
            if (j == mate) continue;
            const double s = scores.at(i, j);
            if (s > mate_score || (s == mate_score && j < mate)) ++rank;
        }
        ++rank_hits[rank - 1];
    }

    CmcCurve curve;
    curve.rank_retrieval.resize(scores.cols());
    std::size_t cumulative = 0;
    for (std::size_t r = 0; r < scores.cols(); ++r) {
        cumulative += rank_hits[r];
        curve.rank_retrieval[r] =
            static_cast<double>(cumulative) / static_cast<double>(scores.rows());
    }
    return curve;
}

CmcCurve closed_set_cmc(const ScoreMatrix& scores) {
    return closed_set_cmc(scores, scores.probe_labels);
}

OpenSetResult open_set_eval(const ScoreMatrix& mated, const std::vector<std::string>& mate_map,
                            const ScoreMatrix& nonmated, double fpir_target) {
    if (fpir_target < 0.0 || fpir_target > 1.0)
        raise(ErrorCode::InvalidArgument, "fpir_target outside [0,1]");
    if (mated.rows() == 0 || nonmated.rows() == 0)
        raise(ErrorCode::EmptyProbeSet, "open-set evaluation needs mated and non-mated probes");
    if (mate_map.size() != mated.rows())
        raise(ErrorCode::LengthMismatch, "mate map size does not match probe count");

    std::vector<double> tops;
    tops.reserve(nonmated.rows());
    for (std::size_t i = 0; i < nonmated.rows(); ++i)
        tops.push_back(nonmated.at(i, top1_column(nonmated, i)));
    std::sort(tops.begin(), tops.end());

    const auto fpir_at = [&](double threshold) {
        const auto first =
            std::lower_bound(tops.begin(), tops.end(), threshold) - tops.begin();
        return static_cast<double>(tops.size() - static_cast<std::size_t>(first)) /
               static_cast<double>(tops.size());
    };

    // Candidate thresholds, ascending: a floor below any cosine, every observed
    // top-1 value, and a sentinel just above the largest (which always yields
    // zero false positives). The smallest qualifying candidate maximizes the
    // achieved rate while staying at or below the target.
    std::vector<double> candidates;
    candidates.push_back(-1.0);
    for (double v : tops)
        if (candidates.back() != v) candidates.push_back(v);
    candidates.push_back(std::nextafter(tops.back(), std::numeric_limits<double>::infinity()));

    OpenSetResult result;
    result.fpir_target = fpir_target;
    for (double t : candidates) {
        if (fpir_at(t) <= fpir_target) {
            result.threshold = t;
            break;
        }
    }
    result.achieved_fpir = fpir_at(result.threshold);

    std::size_t rejected = 0;
    for (std::size_t i = 0; i < mated.rows(); ++i) {
        const std::size_t mate = mate_column(mated, mate_map[i]);
        const bool wrong_top = top1_column(mated, i) != mate;
        const bool below = mated.at(i, mate) < result.threshold;
        if (wrong_top || below) ++rejected;
    }
    result.fnir = static_cast<double>(rejected) / static_cast<double>(mated.rows());
    return result;
}

OpenSetResult open_set_eval(const ScoreMatrix& mated, const ScoreMatrix& nonmated,
                            double fpir_target) {
    return open_set_eval(mated, mated.probe_labels, nonmated, fpir_target);
}

std::vector<NormQualityRow> norm_quality_report(
    const std::vector<protocol::MediaRecord>& records, const bankio::FeatureBank& bank) {
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_domain;
    for (const auto& rec : records) {
        const auto score = rec.quality_score ? rec.quality_score : rec.detection_prob;
        if (!score) continue;
        if (rec.feature_index >= bank.count())
            raise(ErrorCode::IndexOutOfRange,
                  "feature index " + std::to_string(rec.feature_index) + " outside bank");
        const float* row = bank.row(rec.feature_index);
        double sq = 0.0;
        for (std::uint32_t i = 0; i < bank.dim; ++i)
            sq += static_cast<double>(row[i]) * static_cast<double>(row[i]);
        auto& [norms, quals] = by_domain[rec.domain_code];
        norms.push_back(std::sqrt(sq));
        quals.push_back(*score);
    }

    std::vector<NormQualityRow> report;
    report.reserve(by_domain.size());
    for (const auto& [code, series] : by_domain) {
        NormQualityRow row;
        row.domain_code = code;
        row.media_count = series.first.size();
        if (series.first.size() >= 2) {
            try {
                row.pearson = numerics::pearson_correlation(series.first, series.second);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ConstantSeries) throw;
            }
        }
        report.push_back(row);
    }
    return report;
}

}  // namespace facepool::evaluation
