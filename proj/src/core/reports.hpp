#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace facepool::reports {

// Rates are carried as fractions in [0,1]; CSV/JSON emission converts them to
// percentages with 2 decimals.
struct ClosedRow {
    std::string strategy;
    double lambda = 1.0;
    int domain = 0;
    double rank1 = 0.0;
    double rank5 = 0.0;
};

struct OpenRow {
    std::string strategy;
    double lambda = 1.0;
    int domain = 0;
    double fpir_target = 0.0;
    double threshold = 0.0;
    double fnir = 0.0;
};

struct NormRow {
    int domain = 0;
    std::string label;
    std::size_t media_count = 0;
    std::optional<double> pearson;  // empty cell when absent
};

std::string format_percent(double fraction);  // "97.60"
std::string format_lambda(double lambda);     // "1", "1e-12"
std::string format_threshold(double value);   // 6 decimals

std::string closed_csv(const std::vector<ClosedRow>& rows);
std::string closed_json(const std::vector<ClosedRow>& rows);
std::string open_csv(const std::vector<OpenRow>& rows);
std::string open_json(const std::vector<OpenRow>& rows);
std::string norm_csv(const std::vector<NormRow>& rows);
std::string norm_json(const std::vector<NormRow>& rows);

// Full per-rank retrieval curve for one domain: columns rank,retrieval.
std::string cmc_csv(const std::vector<double>& rank_retrieval);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace facepool::reports
