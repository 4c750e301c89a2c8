#include "core/protocol.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace facepool::protocol {

namespace {

constexpr const char* kDomainLabels[] = {
    "Visible enrollment",                      // 0
    "Visible surveillance",                    // 1
    "Visible gopro",                           // 2
    "Visible 500m",                            // 3
    "Visible 400m",                            // 4
    "Visible 300m",                            // 5
    "Visible 500m 400m walking",               // 6
    "MWIR 15m",                                // 7
    "MWIR 30m",                                // 8
    "LWIR 15m",                                // 9
    "LWIR 30m",                                // 10
    "SWIR enrollment nofilter",                // 11
    "SWIR enrollment (captured at 1150 nm)",   // 12
    "SWIR enrollment (captured at 1350 nm)",   // 13
    "SWIR enrollment (captured at 1550 nm)",   // 14
    "SWIR 15m",                                // 15
    "SWIR 30m",                                // 16
};

}  // namespace

int max_domain_code() { return 16; }

const char* domain_label(int code) {
    if (code < 0 || code > max_domain_code())
        raise(ErrorCode::InvalidArgument, "domain code out of range: " + std::to_string(code));
    return kDomainLabels[code];
}

std::vector<int> default_probe_domains() { return {1, 2, 3, 4, 5, 15, 16}; }

ProtocolKind parse_protocol(const std::string& name) {
    if (name == "legacy") return ProtocolKind::Legacy;
    if (name == "exhaustive") return ProtocolKind::Exhaustive;
    raise(ErrorCode::InvalidArgument, "unknown protocol: " + name);
}

const char* protocol_name(ProtocolKind kind) {
    return kind == ProtocolKind::Legacy ? "legacy" : "exhaustive";
}

ValidationReport validate_manifest(const std::vector<MediaRecord>& records,
                                   std::uint64_t bank_size) {
    ValidationReport report;
    report.media_count = records.size();

    std::map<std::string, std::size_t> first_seen;
    std::set<std::string> subjects;
    std::set<int> domains;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        auto [it, inserted] = first_seen.emplace(r.media_id, i);
        if (!inserted)
            report.issues.push_back(
                {"duplicate_media_id", r.media_id + " at records " +
                                           std::to_string(it->second) + " and " +
                                           std::to_string(i)});
        if (r.feature_index >= bank_size)
            report.issues.push_back(
                {"feature_index_out_of_range",
                 r.media_id + " index " + std::to_string(r.feature_index) + " >= bank size " +
                     std::to_string(bank_size)});
        subjects.insert(r.subject_id);
        domains.insert(r.domain_code);
    }
    report.subject_count = subjects.size();

    std::set<std::pair<std::string, int>> covered;
    for (const auto& r : records) covered.emplace(r.subject_id, r.domain_code);
    for (const auto& s : subjects)
        for (int d : domains)
            if (!covered.count({s, d}))
                report.issues.push_back(
                    {"missing_domain", s + " has no media in domain " + std::to_string(d)});
    return report;
}

std::vector<TemplateSpec> assemble_templates(
    const std::vector<MediaRecord>& records, const ProtocolConfig& config,
    const std::optional<std::vector<std::pair<std::string, int>>>& pairs) {
    if (config.legacy_min < 1 || config.legacy_min > config.legacy_max)
        raise(ErrorCode::InvalidConfig, "legacy template size range invalid");

    std::map<std::pair<std::string, int>, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < records.size(); ++i)
        members[{records[i].subject_id, records[i].domain_code}].push_back(i);

    // Lexicographic (subject, domain) visit order is the determinism contract
    // for the shared legacy generator.
    std::vector<std::pair<std::string, int>> wanted;
    if (pairs) {
        wanted = *pairs;
        std::sort(wanted.begin(), wanted.end());
        wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    } else {
        for (const auto& [key, _] : members) wanted.push_back(key);
    }

    Rng rng(config.seed);
    std::vector<TemplateSpec> out;
    out.reserve(wanted.size());
    for (const auto& key : wanted) {
        auto it = members.find(key);
        if (it == members.end() || it->second.empty())
            raise(ErrorCode::EmptyDomain, "no media for subject " + key.first + " in domain " +
                                              std::to_string(key.second));
        TemplateSpec spec;
        spec.subject_id = key.first;
        spec.domain_code = key.second;
        if (config.kind == ProtocolKind::Exhaustive) {
            spec.record_indices = it->second;
        } else {
            const auto& pool = it->second;
            const auto u = static_cast<std::size_t>(
                rng.uniform_int(config.legacy_min, config.legacy_max));
            const std::size_t take = std::min(u, pool.size());
            // Partial Fisher-Yates over a copy; first `take` entries are a
            // uniform subset without replacement.
            std::vector<std::size_t> shuffled = pool;
            for (std::size_t i = 0; i < take; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.below(shuffled.size() - i));
                std::swap(shuffled[i], shuffled[j]);
            }
            shuffled.resize(take);
            std::sort(shuffled.begin(), shuffled.end());
            spec.record_indices = std::move(shuffled);
        }
        out.push_back(std::move(spec));
    }
    return out;
}

std::pair<GallerySpec, GallerySpec> split_galleries(const std::vector<std::string>& subject_ids,
                                                    std::uint64_t seed) {
    if (subject_ids.size() < 2)
        raise(ErrorCode::TooFewSubjects, "gallery split needs at least 2 subjects");
    std::vector<std::string> shuffled = subject_ids;
    Rng rng(seed);
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(shuffled[i], shuffled[j]);
    }
    const std::size_t g1_size = (shuffled.size() + 1) / 2;
    GallerySpec g1{"G1", {shuffled.begin(), shuffled.begin() + g1_size}};
    GallerySpec g2{"G2", {shuffled.begin() + g1_size, shuffled.end()}};
    std::sort(g1.subject_ids.begin(), g1.subject_ids.end());
    std::sort(g2.subject_ids.begin(), g2.subject_ids.end());
    return {std::move(g1), std::move(g2)};
}

}  // namespace facepool::protocol
