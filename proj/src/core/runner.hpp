#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/bank_io.hpp"
#include "core/evaluation.hpp"
#include "core/pooling.hpp"
#include "core/protocol.hpp"
#include "core/reports.hpp"
#include "core/synthgen.hpp"
#include "facepool.h"

namespace facepool::runner {

// Seed used by default synthetic runs and the seeded test suite.
inline constexpr std::uint64_t kDefaultSeed = FP_DEFAULT_SEED;

struct Dataset {
    bankio::FeatureBank bank;
    std::vector<protocol::MediaRecord> records;
};

Dataset make_default_dataset(std::uint64_t seed = kDefaultSeed);
Dataset load_dataset(const std::string& bank_path, const std::string& manifest_path);

// One pooled template per observed (subject, domain) pair within `domains`
// (default probe domains when empty), assembled under `cfg`, ordered by
// (subject, domain).
std::vector<pooling::PooledTemplate> pool_probe_templates(
    const Dataset& ds, const pooling::PoolingStrategy& strategy,
    const protocol::ProtocolConfig& cfg, std::vector<int> domains = {});

// Enrollment-domain (code 0) media pooled exhaustively with the same strategy,
// one template per subject (all subjects when the filter is empty).
std::vector<pooling::PooledTemplate> pool_gallery_templates(
    const Dataset& ds, const pooling::PoolingStrategy& strategy,
    const std::vector<std::string>& subjects = {});

struct ClosedDomainResult {
    int domain = 0;
    evaluation::CmcCurve curve;
    double rank1 = 0.0;
    double rank5 = 0.0;
    std::size_t probe_count = 0;
};

// Scores each domain's probe templates against the full enrollment gallery.
std::vector<ClosedDomainResult> closed_eval(const Dataset& ds,
                                            const pooling::PoolingStrategy& strategy,
                                            const protocol::ProtocolConfig& cfg,
                                            std::vector<int> domains = {});

struct OpenDomainResult {
    int domain = 0;
    std::vector<evaluation::OpenSetResult> points;  // one per fpir target
};

// Splits subjects into G1/G2; G2 forms the gallery and the mated probes,
// G1 supplies the non-mated probes.
std::vector<OpenDomainResult> open_eval(const Dataset& ds,
                                        const pooling::PoolingStrategy& strategy,
                                        const protocol::ProtocolConfig& cfg,
                                        std::vector<int> domains = {},
                                        std::vector<double> fpir_targets = {},
                                        std::uint64_t split_seed = kDefaultSeed);

struct SweepResult {
    // AP baseline rows first, then one row per (lambda, domain), lambdas ascending.
    std::vector<reports::ClosedRow> rows;
    // Per domain: lambda maximizing rank-1, ties resolved to the smallest lambda.
    std::map<int, double> best_lambda;
};

SweepResult lambda_sweep(const Dataset& ds, pooling::StrategyKind kind,
                         std::vector<double> lambdas, const protocol::ProtocolConfig& cfg,
                         std::vector<int> domains = {});

// ---- file-level commands backing the CLI; each returns a process exit code
// ---- (0 success, 1 validation failure).

struct SynthCommand {
    int subjects = synthgen::kDefaultSubjects;
    int dim = synthgen::kDefaultDim;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir = ".";
};
int cmd_synth(const SynthCommand& cmd);

struct DataArgs {
    std::string bank_path;
    std::string manifest_path;
};

struct PoolCommand {
    DataArgs data;
    pooling::PoolingStrategy strategy;
    protocol::ProtocolConfig protocol;
    std::vector<int> domains;
    std::string out_dir = ".";
};
int cmd_pool(const PoolCommand& cmd);

struct EvalClosedCommand {
    DataArgs data;
    pooling::PoolingStrategy strategy;
    protocol::ProtocolConfig protocol;
    std::vector<int> domains;
    std::string out_dir = ".";
};
int cmd_eval_closed(const EvalClosedCommand& cmd);

struct EvalOpenCommand {
    DataArgs data;
    pooling::PoolingStrategy strategy;
    protocol::ProtocolConfig protocol;
    std::vector<int> domains;
    std::vector<double> fpir_targets;  // default {0.01, 0.05, 0.1, 0.3}
    std::uint64_t split_seed = kDefaultSeed;
    std::string out_dir = ".";
};
int cmd_eval_open(const EvalOpenCommand& cmd);

struct SweepCommand {
    DataArgs data;
    pooling::StrategyKind kind = pooling::StrategyKind::NP;
    std::vector<double> lambdas;  // default {1, 2, 5, 10, 20}
    protocol::ProtocolConfig protocol;
    std::vector<int> domains;
    std::string out_dir = ".";
};
int cmd_sweep(const SweepCommand& cmd);

struct NormStatsCommand {
    DataArgs data;
    std::string out_dir = ".";
};
int cmd_norm_stats(const NormStatsCommand& cmd);

struct ValidateCommand {
    DataArgs data;
    std::string out_dir = ".";
};
int cmd_validate(const ValidateCommand& cmd);

}  // namespace facepool::runner
