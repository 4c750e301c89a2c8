#include "core/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace facepool::synthgen {

namespace {

std::string format_id(const char* prefix, int width, std::uint64_t value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*llu", prefix, width,
                  static_cast<unsigned long long>(value));
    return buf;
}

void validate(const std::vector<DomainProfile>& profiles, int n_subjects, int dim) {
    if (n_subjects < 2) raise(ErrorCode::InvalidConfig, "need at least 2 subjects");
    if (dim < 2) raise(ErrorCode::InvalidConfig, "need dim >= 2");
    if (profiles.empty()) raise(ErrorCode::InvalidConfig, "need at least one domain profile");
    std::set<int> seen;
    for (const auto& p : profiles) {
        if (p.domain_code < 0 || p.domain_code > protocol::max_domain_code())
            raise(ErrorCode::InvalidConfig,
                  "domain code out of range: " + std::to_string(p.domain_code));
        if (!seen.insert(p.domain_code).second)
            raise(ErrorCode::InvalidConfig,
                  "duplicate domain code: " + std::to_string(p.domain_code));
        if (!(p.quality_alpha > 0.0) || !(p.quality_beta > 0.0))
            raise(ErrorCode::InvalidConfig, "quality Beta parameters must be positive");
        if (p.media_min < 1 || p.media_min > p.media_max)
            raise(ErrorCode::InvalidConfig, "media_per_subject range invalid");
        if (p.noise_base < 0.0 || p.norm_jitter < 0.0)
            raise(ErrorCode::InvalidConfig, "noise magnitudes must be nonnegative");
    }
}

numerics::Vec unit_gaussian_direction(Rng& rng, int dim) {
    numerics::Vec v(static_cast<std::size_t>(dim));
    double norm = 0.0;
    do {
        for (auto& x : v) x = rng.normal();
        norm = numerics::l2_norm(v);
    } while (norm < 1e-9);
    for (auto& x : v) x /= norm;
    return v;
}

}  // namespace

std::vector<DomainProfile> default_domain_profiles() {
    // Beta shapes set the per-domain quality mix; the two hardest domains are
    // bimodal (most media near-useless, a small high-quality tail), the mid
    // domains unimodal. Probe domains carry enough media that exhaustive
    // templates average ~45x the legacy template size.
    std::vector<DomainProfile> profiles;
    auto add = [&](int code, double a, double b, int mmin, int mmax, double noise) {
        DomainProfile p;
        p.domain_code = code;
        p.quality_alpha = a;
        p.quality_beta = b;
        p.media_min = mmin;
        p.media_max = mmax;
        p.noise_base = noise;
        profiles.push_back(p);
    };
    add(0, 14.0, 2.0, 3, 8, 0.05);        // clean visible enrollment media
    add(1, 0.30, 0.50, 400, 1000, 8.0);   // surveillance footage, mostly junk frames
    add(2, 4.5, 4.5, 400, 1000, 0.60);    // body-worn camera, middling
    add(3, 7.0, 3.0, 400, 1000, 0.35);    // long-range visible, 500 m
    add(4, 8.0, 2.0, 400, 1000, 0.24);    // long-range visible, 400 m
    add(5, 9.0, 1.0, 400, 1000, 0.16);    // long-range visible, 300 m
    add(15, 6.0, 4.0, 400, 1000, 0.45);   // short-wave IR, 15 m
    add(16, 0.40, 0.45, 400, 1000, 6.5);  // short-wave IR, 30 m, mostly junk frames
    return profiles;
}

SynthDataset generate_dataset(const std::vector<DomainProfile>& profiles, int n_subjects,
                              int dim, std::uint64_t seed) {
    validate(profiles, n_subjects, dim);

    // All draws come from one seeded stream in a fixed order (prototypes first,
    // then media subject-major in profile order); reordering breaks the
    // byte-identical reproducibility contract.
    Rng rng(seed);
    SynthDataset ds;
    ds.bank.dim = static_cast<std::uint32_t>(dim);
    ds.prototypes.reserve(static_cast<std::size_t>(n_subjects));
    ds.subject_ids.reserve(static_cast<std::size_t>(n_subjects));
    for (int s = 0; s < n_subjects; ++s) {
        ds.prototypes.push_back(unit_gaussian_direction(rng, dim));
        ds.subject_ids.push_back(format_id("s", 4, static_cast<std::uint64_t>(s)));
    }

    std::uint64_t media_counter = 0;
    numerics::Vec direction(static_cast<std::size_t>(dim));
    for (int s = 0; s < n_subjects; ++s) {
        const auto& proto = ds.prototypes[static_cast<std::size_t>(s)];
        for (const auto& profile : profiles) {
            const int k = static_cast<int>(
                rng.uniform_int(profile.media_min, profile.media_max));
            for (int j = 0; j < k; ++j) {
                const double q =
                    std::clamp(rng.beta(profile.quality_alpha, profile.quality_beta),
                               1e-6, 1.0 - 1e-6);
                const double noise_scale = profile.noise_base * (1.0 - q);
                for (int i = 0; i < dim; ++i)
                    direction[static_cast<std::size_t>(i)] =
                        proto[static_cast<std::size_t>(i)] + noise_scale * rng.normal();
                double dnorm = numerics::l2_norm(direction);
                if (dnorm < 1e-12) {
                    direction = proto;
                    dnorm = 1.0;
                }
                const double norm = std::max(
                    profile.norm_base + profile.norm_gain * q +
                        profile.norm_jitter * rng.normal(),
                    1e-3);
                const double scale = norm / dnorm;
                for (int i = 0; i < dim; ++i)
                    ds.bank.data.push_back(
                        static_cast<float>(direction[static_cast<std::size_t>(i)] * scale));

                protocol::MediaRecord rec;
                rec.media_id = format_id("m", 7, media_counter);
                rec.subject_id = ds.subject_ids[static_cast<std::size_t>(s)];
                rec.domain_code = profile.domain_code;
                rec.feature_index = media_counter;
                rec.detection_prob = q;
                rec.quality_score = q;
                ds.manifest.push_back(std::move(rec));
                ++media_counter;
            }
        }
    }
    return ds;
}

std::vector<std::size_t> oracle_identify(const std::vector<numerics::Vec>& probes,
                                         const std::vector<numerics::Vec>& prototypes) {
    std::vector<std::size_t> predicted;
    predicted.reserve(probes.size());
    for (const auto& probe : probes) {
        std::size_t best = 0;
        double best_score = -2.0;
        for (std::size_t p = 0; p < prototypes.size(); ++p) {
            const double score = numerics::cosine_similarity(probe, prototypes[p]);
            if (score > best_score) {
                best_score = score;
                best = p;
            }
        }
        predicted.push_back(best);
    }
    return predicted;
}

}  // namespace facepool::synthgen
