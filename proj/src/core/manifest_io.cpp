#include "core/manifest_io.hpp"

#include <fstream>

#include <json.hpp>

#include "core/error.hpp"

namespace facepool::manifestio {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    raise(ErrorCode::ParseFailure, "manifest line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void write_manifest(const std::vector<protocol::MediaRecord>& records,
                    const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoFailure, "cannot open for writing: " + path);
    for (const auto& rec : records) {
        ordered_json j;
        j["media_id"] = rec.media_id;
        j["subject_id"] = rec.subject_id;
        j["domain_code"] = rec.domain_code;
        j["feature_index"] = rec.feature_index;
        if (rec.detection_prob) j["detection_prob"] = *rec.detection_prob;
        if (rec.quality_score) j["quality_score"] = *rec.quality_score;
        out << j.dump() << '\n';
    }
    out.flush();
    if (!out) raise(ErrorCode::IoFailure, "write failed: " + path);
}

std::vector<protocol::MediaRecord> read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoFailure, "cannot open for reading: " + path);
    std::vector<protocol::MediaRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) parse_fail(line_no, "invalid JSON");
        if (!j.is_object()) parse_fail(line_no, "expected a JSON object");

        protocol::MediaRecord rec;
        try {
            rec.media_id = j.at("media_id").get<std::string>();
            rec.subject_id = j.at("subject_id").get<std::string>();
            rec.domain_code = j.at("domain_code").get<int>();
            rec.feature_index = j.at("feature_index").get<std::uint64_t>();
        } catch (const ordered_json::exception& e) {
            parse_fail(line_no, e.what());
        }
        if (j.contains("detection_prob")) {
            if (!j["detection_prob"].is_number())
                parse_fail(line_no, "detection_prob must be a number");
            rec.detection_prob = j["detection_prob"].get<double>();
        }
        if (j.contains("quality_score")) {
            if (!j["quality_score"].is_number())
                parse_fail(line_no, "quality_score must be a number");
            rec.quality_score = j["quality_score"].get<double>();
        }
        records.push_back(std::move(rec));
    }
    if (in.bad()) raise(ErrorCode::IoFailure, "read failed: " + path);
    return records;
}

}  // namespace facepool::manifestio
