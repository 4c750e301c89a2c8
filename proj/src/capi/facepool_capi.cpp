#include "facepool.h"

#include <cstring>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/bank_io.hpp"
#include "core/error.hpp"
#include "core/margins.hpp"
#include "core/numerics.hpp"
#include "core/pooling.hpp"
#include "core/protocol.hpp"
#include "core/runner.hpp"

extern "C" {

struct fp_bank {
    facepool::bankio::FeatureBank bank;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

fp_status to_status(facepool::ErrorCode code) {
    using EC = facepool::ErrorCode;
    switch (code) {
        case EC::Ok: return FP_OK;
        case EC::DimMismatch: return FP_ERR_DIM_MISMATCH;
        case EC::ZeroNormInput: return FP_ERR_ZERO_NORM_INPUT;
        case EC::EmptyTemplate: return FP_ERR_EMPTY_TEMPLATE;
        case EC::MissingQualityScores: return FP_ERR_MISSING_QUALITY_SCORES;
        case EC::ConstantSeries: return FP_ERR_CONSTANT_SERIES;
        case EC::LengthMismatch: return FP_ERR_LENGTH_MISMATCH;
        case EC::IndexOutOfRange: return FP_ERR_INDEX_OUT_OF_RANGE;
        case EC::MissingMate: return FP_ERR_MISSING_MATE;
        case EC::EmptyProbeSet: return FP_ERR_EMPTY_PROBE_SET;
        case EC::EmptyDomain: return FP_ERR_EMPTY_DOMAIN;
        case EC::TooFewSubjects: return FP_ERR_TOO_FEW_SUBJECTS;
        case EC::InvalidConfig: return FP_ERR_INVALID_CONFIG;
        case EC::BadMagic: return FP_ERR_BAD_MAGIC;
        case EC::VersionUnsupported: return FP_ERR_VERSION_UNSUPPORTED;
        case EC::TruncatedPayload: return FP_ERR_TRUNCATED_PAYLOAD;
        case EC::IoFailure: return FP_ERR_IO_FAILURE;
        case EC::ParseFailure: return FP_ERR_PARSE_FAILURE;
        case EC::InvalidArgument: return FP_ERR_INVALID_ARGUMENT;
    }
    return FP_ERR_UNKNOWN;
}

template <typename Fn>
fp_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const facepool::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FP_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown failure";
        return FP_ERR_UNKNOWN;
    }
}

fp_status arg_error(const char* message) {
    g_last_error = message;
    return FP_ERR_INVALID_ARGUMENT;
}

fp_status run_result(int exit_code) {
    if (exit_code == 0) return FP_OK;
    g_last_error = "validation failed";
    return FP_ERR_VALIDATION_FAILED;
}

std::vector<int> domains_vec(const fp_eval_options& o) {
    return o.domains ? std::vector<int>(o.domains, o.domains + o.n_domains)
                     : std::vector<int>{};
}

facepool::pooling::PoolingStrategy strategy_of(const fp_eval_options& o) {
    facepool::pooling::PoolingStrategy s;
    s.kind = facepool::pooling::parse_strategy(o.strategy ? o.strategy : "ap");
    s.lambda = o.lambda;
    return s;
}

facepool::protocol::ProtocolConfig protocol_of(const fp_eval_options& o) {
    facepool::protocol::ProtocolConfig cfg;
    cfg.kind = facepool::protocol::parse_protocol(o.protocol ? o.protocol : "legacy");
    cfg.seed = o.seed;
    return cfg;
}

std::string string_of(const char* s, const char* fallback = "") {
    return s ? s : fallback;
}

}  // namespace

extern "C" {

const char* fp_status_name(fp_status status) {
    switch (status) {
        case FP_OK: return "FP_OK";
        case FP_ERR_DIM_MISMATCH: return "FP_ERR_DIM_MISMATCH";
        case FP_ERR_ZERO_NORM_INPUT: return "FP_ERR_ZERO_NORM_INPUT";
        case FP_ERR_EMPTY_TEMPLATE: return "FP_ERR_EMPTY_TEMPLATE";
        case FP_ERR_MISSING_QUALITY_SCORES: return "FP_ERR_MISSING_QUALITY_SCORES";
        case FP_ERR_CONSTANT_SERIES: return "FP_ERR_CONSTANT_SERIES";
        case FP_ERR_LENGTH_MISMATCH: return "FP_ERR_LENGTH_MISMATCH";
        case FP_ERR_INDEX_OUT_OF_RANGE: return "FP_ERR_INDEX_OUT_OF_RANGE";
        case FP_ERR_MISSING_MATE: return "FP_ERR_MISSING_MATE";
        case FP_ERR_EMPTY_PROBE_SET: return "FP_ERR_EMPTY_PROBE_SET";
        case FP_ERR_EMPTY_DOMAIN: return "FP_ERR_EMPTY_DOMAIN";
        case FP_ERR_TOO_FEW_SUBJECTS: return "FP_ERR_TOO_FEW_SUBJECTS";
        case FP_ERR_INVALID_CONFIG: return "FP_ERR_INVALID_CONFIG";
        case FP_ERR_BAD_MAGIC: return "FP_ERR_BAD_MAGIC";
        case FP_ERR_VERSION_UNSUPPORTED: return "FP_ERR_VERSION_UNSUPPORTED";
        case FP_ERR_TRUNCATED_PAYLOAD: return "FP_ERR_TRUNCATED_PAYLOAD";
        case FP_ERR_IO_FAILURE: return "FP_ERR_IO_FAILURE";
        case FP_ERR_PARSE_FAILURE: return "FP_ERR_PARSE_FAILURE";
        case FP_ERR_INVALID_ARGUMENT: return "FP_ERR_INVALID_ARGUMENT";
        case FP_ERR_VALIDATION_FAILED: return "FP_ERR_VALIDATION_FAILED";
        case FP_ERR_UNKNOWN: return "FP_ERR_UNKNOWN";
    }
    return "FP_ERR_UNKNOWN";
}

const char* fp_last_error_message(void) { return g_last_error.c_str(); }

const char* fp_version(void) { return "1.0.0"; }

fp_status fp_sparsemax(const double* z, size_t n, double* out) {
    if (!z || !out) return arg_error("fp_sparsemax: null pointer");
    return guarded([&] {
        const auto result = facepool::numerics::sparsemax({z, n});
        std::memcpy(out, result.data(), n * sizeof(double));
        return FP_OK;
    });
}

fp_status fp_softmax(const double* z, size_t n, double* out) {
    if (!z || !out) return arg_error("fp_softmax: null pointer");
    return guarded([&] {
        const auto result = facepool::numerics::softmax({z, n});
        std::memcpy(out, result.data(), n * sizeof(double));
        return FP_OK;
    });
}

fp_status fp_cosine_similarity(const double* a, const double* b, size_t n, double* out) {
    if (!a || !b || !out) return arg_error("fp_cosine_similarity: null pointer");
    return guarded([&] {
        *out = facepool::numerics::cosine_similarity({a, n}, {b, n});
        return FP_OK;
    });
}

fp_status fp_pool_weights(const char* strategy, double lambda, const double* norms, size_t n,
                          const double* detection_probs, double* out_weights) {
    if (!strategy || !norms || !out_weights) return arg_error("fp_pool_weights: null pointer");
    return guarded([&] {
        facepool::pooling::PoolingStrategy s;
        s.kind = facepool::pooling::parse_strategy(strategy);
        s.lambda = lambda;
        std::optional<std::vector<double>> probs;
        if (detection_probs) probs.emplace(detection_probs, detection_probs + n);
        const auto weights = facepool::pooling::weights_from_norms(s, {norms, n}, probs);
        std::memcpy(out_weights, weights.data(), n * sizeof(double));
        return FP_OK;
    });
}

fp_status fp_margin_score(double cos_theta, int is_target, double z_hat, double m, double s,
                          double* out) {
    if (!out) return arg_error("fp_margin_score: null pointer");
    return guarded([&] {
        facepool::margins::MarginParams params;
        params.m = m;
        params.s = s;
        *out = facepool::margins::margin_score(cos_theta, is_target != 0, z_hat, params);
        return FP_OK;
    });
}

fp_status fp_bank_create(uint32_t dim, const float* data, uint64_t count, fp_bank** out) {
    if (!out || (count > 0 && !data)) return arg_error("fp_bank_create: null pointer");
    return guarded([&] {
        auto handle = std::make_unique<fp_bank>();
        handle->bank.dim = dim;
        handle->bank.data.assign(data, data + count * dim);
        *out = handle.release();
        return FP_OK;
    });
}

fp_status fp_bank_read(const char* path, fp_bank** out) {
    if (!path || !out) return arg_error("fp_bank_read: null pointer");
    return guarded([&] {
        auto handle = std::make_unique<fp_bank>();
        handle->bank = facepool::bankio::read_feature_bank(path);
        *out = handle.release();
        return FP_OK;
    });
}

fp_status fp_bank_write(const fp_bank* bank, const char* path) {
    if (!bank || !path) return arg_error("fp_bank_write: null pointer");
    return guarded([&] {
        facepool::bankio::write_feature_bank(bank->bank, path);
        return FP_OK;
    });
}

uint32_t fp_bank_dim(const fp_bank* bank) { return bank ? bank->bank.dim : 0; }

uint64_t fp_bank_count(const fp_bank* bank) { return bank ? bank->bank.count() : 0; }

const float* fp_bank_row(const fp_bank* bank, uint64_t index) {
    if (!bank || index >= bank->bank.count()) return nullptr;
    return bank->bank.row(index);
}

void fp_bank_free(fp_bank* bank) { delete bank; }

fp_status fp_run_synth(const fp_synth_options* options) {
    if (!options || !options->out_dir) return arg_error("fp_run_synth: null pointer");
    return guarded([&] {
        facepool::runner::SynthCommand cmd;
        if (options->subjects > 0) cmd.subjects = options->subjects;
        if (options->dim > 0) cmd.dim = options->dim;
        cmd.seed = options->seed;
        cmd.out_dir = options->out_dir;
        return run_result(facepool::runner::cmd_synth(cmd));
    });
}

fp_status fp_run_pool(const fp_eval_options* options) {
    if (!options) return arg_error("fp_run_pool: null options");
    return guarded([&] {
        facepool::runner::PoolCommand cmd;
        cmd.data = {string_of(options->bank_path), string_of(options->manifest_path)};
        cmd.strategy = strategy_of(*options);
        cmd.protocol = protocol_of(*options);
        cmd.domains = domains_vec(*options);
        cmd.out_dir = string_of(options->out_dir, ".");
        return run_result(facepool::runner::cmd_pool(cmd));
    });
}

fp_status fp_run_eval_closed(const fp_eval_options* options) {
    if (!options) return arg_error("fp_run_eval_closed: null options");
    return guarded([&] {
        facepool::runner::EvalClosedCommand cmd;
        cmd.data = {string_of(options->bank_path), string_of(options->manifest_path)};
        cmd.strategy = strategy_of(*options);
        cmd.protocol = protocol_of(*options);
        cmd.domains = domains_vec(*options);
        cmd.out_dir = string_of(options->out_dir, ".");
        return run_result(facepool::runner::cmd_eval_closed(cmd));
    });
}

fp_status fp_run_eval_open(const fp_eval_options* options, const double* fpir_targets,
                           size_t n_targets, uint64_t split_seed) {
    if (!options) return arg_error("fp_run_eval_open: null options");
    return guarded([&] {
        facepool::runner::EvalOpenCommand cmd;
        cmd.data = {string_of(options->bank_path), string_of(options->manifest_path)};
        cmd.strategy = strategy_of(*options);
        cmd.protocol = protocol_of(*options);
        cmd.domains = domains_vec(*options);
        if (fpir_targets)
            cmd.fpir_targets.assign(fpir_targets, fpir_targets + n_targets);
        cmd.split_seed = split_seed;
        cmd.out_dir = string_of(options->out_dir, ".");
        return run_result(facepool::runner::cmd_eval_open(cmd));
    });
}

fp_status fp_run_sweep(const fp_eval_options* options, const double* lambdas,
                       size_t n_lambdas) {
    if (!options) return arg_error("fp_run_sweep: null options");
    return guarded([&] {
        facepool::runner::SweepCommand cmd;
        cmd.data = {string_of(options->bank_path), string_of(options->manifest_path)};
        cmd.kind = facepool::pooling::parse_strategy(
            options->strategy ? options->strategy : "np");
        if (lambdas) cmd.lambdas.assign(lambdas, lambdas + n_lambdas);
        cmd.protocol = protocol_of(*options);
        cmd.domains = domains_vec(*options);
        cmd.out_dir = string_of(options->out_dir, ".");
        return run_result(facepool::runner::cmd_sweep(cmd));
    });
}

fp_status fp_run_norm_stats(const fp_data_options* options) {
    if (!options) return arg_error("fp_run_norm_stats: null options");
    return guarded([&] {
        facepool::runner::NormStatsCommand cmd;
        cmd.data = {string_of(options->bank_path), string_of(options->manifest_path)};
        cmd.out_dir = string_of(options->out_dir, ".");
        return run_result(facepool::runner::cmd_norm_stats(cmd));
    });
}

fp_status fp_run_validate(const fp_data_options* options) {
    if (!options) return arg_error("fp_run_validate: null options");
    return guarded([&] {
        facepool::runner::ValidateCommand cmd;
        cmd.data = {string_of(options->bank_path), string_of(options->manifest_path)};
        cmd.out_dir = string_of(options->out_dir, ".");
        return run_result(facepool::runner::cmd_validate(cmd));
    });
}

}  // extern "C"
