#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/bank_io.hpp"
#include "core/numerics.hpp"
#include "core/protocol.hpp"

namespace facepool::synthgen {

// Per-domain generative knobs. Each medium draws a quality q ~ Beta(alpha, beta);
// its direction is the subject prototype perturbed by noise_base*(1-q) isotropic
// noise, and its length is norm_base + norm_gain*q + norm_jitter*N(0,1).
struct DomainProfile {
    int domain_code = 0;
    double quality_alpha = 1.0;
    double quality_beta = 1.0;
    int media_min = 1;
    int media_max = 1;
    double noise_base = 0.0;
    double norm_base = 18.0;
    double norm_gain = 6.0;
    double norm_jitter = 1.2;
};

struct SynthDataset {
    bankio::FeatureBank bank;
    std::vector<protocol::MediaRecord> manifest;
    // Hidden ground truth: unit prototype per subject, index-aligned with subject_ids.
    std::vector<numerics::Vec> prototypes;
    std::vector<std::string> subject_ids;
};

inline constexpr int kDefaultSubjects = 125;
inline constexpr int kDefaultDim = 64;

// Enrollment domain 0 plus the seven default probe domains (1-5, 15, 16).
std::vector<DomainProfile> default_domain_profiles();

SynthDataset generate_dataset(const std::vector<DomainProfile>& profiles, int n_subjects,
                              int dim, std::uint64_t seed);

// Exact nearest-prototype matcher by cosine similarity; ties go to the lowest
// prototype index. Test-support ground truth, not part of the evaluation path.
std::vector<std::size_t> oracle_identify(const std::vector<numerics::Vec>& probes,
                                         const std::vector<numerics::Vec>& prototypes);

}  // namespace facepool::synthgen
