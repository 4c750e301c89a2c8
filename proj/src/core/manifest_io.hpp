#pragma once

#include <string>
#include <vector>

#include "core/protocol.hpp"

namespace facepool::manifestio {

// One JSON object per line with fields media_id, subject_id, domain_code,
// feature_index, and optional detection_prob / quality_score.
void write_manifest(const std::vector<protocol::MediaRecord>& records,
                    const std::string& path);
std::vector<protocol::MediaRecord> read_manifest(const std::string& path);

}  // namespace facepool::manifestio
