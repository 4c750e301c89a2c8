#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace facepool::protocol {

// Acquisition-domain codes 0-16: visible enrollment (0), surveillance and
// long-range visible captures, and SWIR/MWIR/LWIR infrared conditions.
// MWIR/LWIR (7-10) are representable but excluded from the default
// evaluation set.
int max_domain_code();
const char* domain_label(int code);  // throws InvalidArgument outside 0-16
std::vector<int> default_probe_domains();  // {1,2,3,4,5,15,16}

struct MediaRecord {
    std::string media_id;
    std::string subject_id;
    int domain_code = 0;
    std::uint64_t feature_index = 0;
    std::optional<double> detection_prob;
    std::optional<double> quality_score;
};

struct GallerySpec {
    std::string gallery_id;
    std::vector<std::string> subject_ids;  // sorted, unique
};

enum class ProtocolKind { Legacy, Exhaustive };

struct ProtocolConfig {
    ProtocolKind kind = ProtocolKind::Legacy;
    int legacy_min = 1;
    int legacy_max = 30;
    std::uint64_t seed = 0;
};

ProtocolKind parse_protocol(const std::string& name);  // "legacy" | "exhaustive"
const char* protocol_name(ProtocolKind kind);

struct ValidationIssue {
    std::string kind;     // "duplicate_media_id" | "feature_index_out_of_range" | "missing_domain"
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::size_t subject_count = 0;
    std::size_t media_count = 0;
    bool ok() const { return issues.empty(); }
};

ValidationReport validate_manifest(const std::vector<MediaRecord>& records,
                                   std::uint64_t bank_size);

struct TemplateSpec {
    std::string subject_id;
    int domain_code = 0;
    std::vector<std::size_t> record_indices;  // into the manifest record list
};

// Exhaustive: all media per (subject, domain). Legacy: uniform subset of size
// min(available, U), U ~ uniform[legacy_min, legacy_max], drawn from one
// seeded generator visiting pairs in lexicographic (subject, domain) order.
// With `pairs` given, requests with zero media raise EmptyDomain; by default
// pairs are derived from the records themselves.
std::vector<TemplateSpec> assemble_templates(
    const std::vector<MediaRecord>& records, const ProtocolConfig& config,
    const std::optional<std::vector<std::pair<std::string, int>>>& pairs = std::nullopt);

// Seeded shuffle; first ceil(n/2) subjects form G1, the rest G2.
std::pair<GallerySpec, GallerySpec> split_galleries(const std::vector<std::string>& subject_ids,
                                                    std::uint64_t seed);

}  // namespace facepool::protocol
