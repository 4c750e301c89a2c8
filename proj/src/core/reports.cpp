#include "core/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "core/error.hpp"

namespace facepool::reports {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string printf_str(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}

double percent2(double fraction) { return std::round(fraction * 10000.0) / 100.0; }

}  // namespace

std::string format_percent(double fraction) { return printf_str("%.2f", fraction * 100.0); }

std::string format_lambda(double lambda) { return printf_str("%.12g", lambda); }

std::string format_threshold(double value) { return printf_str("%.6f", value); }

std::string closed_csv(const std::vector<ClosedRow>& rows) {
    std::string out = "strategy,lambda,domain,rank1,rank5\n";
    for (const auto& r : rows) {
        out += r.strategy + ',' + format_lambda(r.lambda) + ',' + std::to_string(r.domain) +
               ',' + format_percent(r.rank1) + ',' + format_percent(r.rank5) + '\n';
    }
    return out;
}

std::string closed_json(const std::vector<ClosedRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["strategy"] = r.strategy;
        j["lambda"] = r.lambda;
        j["domain"] = r.domain;
        j["rank1"] = percent2(r.rank1);
        j["rank5"] = percent2(r.rank5);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string open_csv(const std::vector<OpenRow>& rows) {
    std::string out = "strategy,lambda,domain,fpir_target,threshold,fnir\n";
    for (const auto& r : rows) {
        out += r.strategy + ',' + format_lambda(r.lambda) + ',' + std::to_string(r.domain) +
               ',' + format_lambda(r.fpir_target) + ',' + format_threshold(r.threshold) + ',' +
               format_percent(r.fnir) + '\n';
    }
    return out;
}

std::string open_json(const std::vector<OpenRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["strategy"] = r.strategy;
        j["lambda"] = r.lambda;
        j["domain"] = r.domain;
        j["fpir_target"] = r.fpir_target;
        j["threshold"] = r.threshold;
        j["fnir"] = percent2(r.fnir);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string norm_csv(const std::vector<NormRow>& rows) {
    std::string out = "domain,label,media_count,pearson\n";
    for (const auto& r : rows) {
        out += std::to_string(r.domain) + ",\"" + r.label + "\"," +
               std::to_string(r.media_count) + ',' +
               (r.pearson ? printf_str("%.4f", *r.pearson) : std::string()) + '\n';
    }
    return out;
}

std::string norm_json(const std::vector<NormRow>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["domain"] = r.domain;
        j["label"] = r.label;
        j["media_count"] = r.media_count;
        if (r.pearson)
            j["pearson"] = std::round(*r.pearson * 10000.0) / 10000.0;
        else
            j["pearson"] = nullptr;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string cmc_csv(const std::vector<double>& rank_retrieval) {
    std::string out = "rank,retrieval\n";
    for (std::size_t r = 0; r < rank_retrieval.size(); ++r)
        out += std::to_string(r + 1) + ',' + format_percent(rank_retrieval[r]) + '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoFailure, "cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) raise(ErrorCode::IoFailure, "write failed: " + path);
}

}  // namespace facepool::reports
