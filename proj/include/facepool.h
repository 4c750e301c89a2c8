/* facepool — template pooling and 1:N identification toolkit, C API.
 *
 * All functions return fp_status (FP_OK = 0). On failure, a human-readable
 * message is available from fp_last_error_message() until the next call on
 * the same thread. Pointers returned from handle accessors stay valid until
 * the handle is freed.
 */
#ifndef FACEPOOL_H
#define FACEPOOL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fp_status {
    FP_OK = 0,
    FP_ERR_DIM_MISMATCH = 1,
    FP_ERR_ZERO_NORM_INPUT = 2,
    FP_ERR_EMPTY_TEMPLATE = 3,
    FP_ERR_MISSING_QUALITY_SCORES = 4,
    FP_ERR_CONSTANT_SERIES = 5,
    FP_ERR_LENGTH_MISMATCH = 6,
    FP_ERR_INDEX_OUT_OF_RANGE = 7,
    FP_ERR_MISSING_MATE = 8,
    FP_ERR_EMPTY_PROBE_SET = 9,
    FP_ERR_EMPTY_DOMAIN = 10,
    FP_ERR_TOO_FEW_SUBJECTS = 11,
    FP_ERR_INVALID_CONFIG = 12,
    FP_ERR_BAD_MAGIC = 13,
    FP_ERR_VERSION_UNSUPPORTED = 14,
    FP_ERR_TRUNCATED_PAYLOAD = 15,
    FP_ERR_IO_FAILURE = 16,
    FP_ERR_PARSE_FAILURE = 17,
    FP_ERR_INVALID_ARGUMENT = 18,
    FP_ERR_VALIDATION_FAILED = 19,
    FP_ERR_UNKNOWN = 20
} fp_status;

const char* fp_status_name(fp_status status);
const char* fp_last_error_message(void);
const char* fp_version(void);

/* Seed used when none is given; also the seed of the checked-in reference
 * experiments. */
#define FP_DEFAULT_SEED 7

/* ---- numeric kernels (caller-allocated outputs) ------------------------- */

/* Euclidean projection of z onto the probability simplex. */
fp_status fp_sparsemax(const double* z, size_t n, double* out);
fp_status fp_softmax(const double* z, size_t n, double* out);
fp_status fp_cosine_similarity(const double* a, const double* b, size_t n, double* out);

/* Pooling weights from per-medium feature norms. strategy is one of
 * "ap" | "qp" | "np" | "npstar" | "sp"; detection_probs (length n) is
 * required for "qp" and ignored otherwise (may be NULL). */
fp_status fp_pool_weights(const char* strategy, double lambda, const double* norms, size_t n,
                          const double* detection_probs, double* out_weights);

/* Margin-adjusted logit for one class. z_hat in [-1,1] blends the margin
 * between additive-angle (-1) and additive-cosine (0) behaviour. */
fp_status fp_margin_score(double cos_theta, int is_target, double z_hat, double m, double s,
                          double* out);

/* ---- feature bank handle ------------------------------------------------ */

typedef struct fp_bank fp_bank;

fp_status fp_bank_create(uint32_t dim, const float* data, uint64_t count, fp_bank** out);
fp_status fp_bank_read(const char* path, fp_bank** out);
fp_status fp_bank_write(const fp_bank* bank, const char* path);
uint32_t fp_bank_dim(const fp_bank* bank);
uint64_t fp_bank_count(const fp_bank* bank);
const float* fp_bank_row(const fp_bank* bank, uint64_t index);
void fp_bank_free(fp_bank* bank);

/* ---- command layer (mirrors the CLI subcommands) ------------------------ */

typedef struct fp_synth_options {
    int subjects;        /* <= 0 for the default (125) */
    int dim;             /* <= 0 for the default (64) */
    uint64_t seed;
    const char* out_dir; /* receives bank.ftbk + manifest.jsonl */
} fp_synth_options;

fp_status fp_run_synth(const fp_synth_options* options);

typedef struct fp_eval_options {
    const char* bank_path;
    const char* manifest_path;
    const char* strategy;  /* "ap" | "qp" | "np" | "npstar" | "sp" */
    double lambda;
    const char* protocol;  /* "legacy" | "exhaustive" */
    uint64_t seed;         /* legacy template subsampling seed */
    const int* domains;    /* NULL / 0 entries for the default probe domains */
    size_t n_domains;
    const char* out_dir;
} fp_eval_options;

fp_status fp_run_pool(const fp_eval_options* options);
fp_status fp_run_eval_closed(const fp_eval_options* options);
fp_status fp_run_eval_open(const fp_eval_options* options, const double* fpir_targets,
                           size_t n_targets, uint64_t split_seed);
fp_status fp_run_sweep(const fp_eval_options* options, const double* lambdas,
                       size_t n_lambdas);

typedef struct fp_data_options {
    const char* bank_path;
    const char* manifest_path;
    const char* out_dir;
} fp_data_options;

fp_status fp_run_norm_stats(const fp_data_options* options);

/* Returns FP_ERR_VALIDATION_FAILED (with the report still written) when the
 * manifest has issues. */
fp_status fp_run_validate(const fp_data_options* options);

#ifdef __cplusplus
}
#endif

#endif /* FACEPOOL_H */
