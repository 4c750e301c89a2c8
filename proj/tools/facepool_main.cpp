#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "facepool.h"

namespace {

struct EvalArgs {
    std::string bank;
    std::string manifest;
    std::string strategy = "ap";
    double lambda = 1.0;
    std::string protocol = "legacy";
    std::uint64_t seed = FP_DEFAULT_SEED;
    std::vector<int> domains;
    std::string out = ".";
};

void add_data_flags(CLI::App* cmd, EvalArgs& a) {
    cmd->add_option("--bank", a.bank, "feature bank file (.ftbk)")->required();
    cmd->add_option("--manifest", a.manifest, "media manifest file (.jsonl)")->required();
    cmd->add_option("--out", a.out, "output directory")->capture_default_str();
}

void add_eval_flags(CLI::App* cmd, EvalArgs& a, bool with_strategy) {
    add_data_flags(cmd, a);
    if (with_strategy) {
        cmd->add_option("--strategy", a.strategy, "pooling strategy")
            ->check(CLI::IsMember({"ap", "qp", "np", "npstar", "sp"}))
            ->capture_default_str();
        cmd->add_option("--lambda", a.lambda, "temperature")->capture_default_str();
    }
    cmd->add_option("--protocol", a.protocol, "template assembly protocol")
        ->check(CLI::IsMember({"legacy", "exhaustive"}))
        ->capture_default_str();
    cmd->add_option("--seed", a.seed, "legacy subsampling seed")->capture_default_str();
    cmd->add_option("--domains", a.domains, "probe domain codes (comma-separated)")
        ->delimiter(',');
}

fp_eval_options to_options(const EvalArgs& a) {
    fp_eval_options o{};
    o.bank_path = a.bank.c_str();
    o.manifest_path = a.manifest.c_str();
    o.strategy = a.strategy.c_str();
    o.lambda = a.lambda;
    o.protocol = a.protocol.c_str();
    o.seed = a.seed;
    o.domains = a.domains.empty() ? nullptr : a.domains.data();
    o.n_domains = a.domains.size();
    o.out_dir = a.out.c_str();
    return o;
}

int finish(fp_status status) {
    if (status == FP_OK) return 0;
    std::fprintf(stderr, "error: %s (%s)\n", fp_last_error_message(),
                 fp_status_name(status));
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"face template pooling and 1:N identification toolkit"};
    app.set_version_flag("--version", fp_version());
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    int synth_subjects = 125;
    int synth_dim = 64;
    std::uint64_t synth_seed = FP_DEFAULT_SEED;
    std::string synth_out = ".";
    synth->add_option("--subjects", synth_subjects, "number of subjects")
        ->capture_default_str();
    synth->add_option("--dim", synth_dim, "feature dimension")->capture_default_str();
    synth->add_option("--seed", synth_seed, "generator seed")->capture_default_str();
    synth->add_option("--out", synth_out, "output directory")->capture_default_str();

    // pool
    auto* pool = app.add_subcommand("pool", "pool media into one template per "
                                            "(subject, domain)");
    EvalArgs pool_args;
    add_eval_flags(pool, pool_args, true);

    // eval-closed
    auto* eval_closed =
        app.add_subcommand("eval-closed", "closed-set rank-k retrieval per domain");
    EvalArgs closed_args;
    add_eval_flags(eval_closed, closed_args, true);

    // eval-open
    auto* eval_open =
        app.add_subcommand("eval-open", "open-set FNIR at fixed FPIR targets per domain");
    EvalArgs open_args;
    std::vector<double> fpir_targets;
    std::uint64_t split_seed = FP_DEFAULT_SEED;
    add_eval_flags(eval_open, open_args, true);
    eval_open->add_option("--fpir-targets", fpir_targets,
                          "FPIR targets (default 0.01,0.05,0.1,0.3)")
        ->delimiter(',');
    eval_open->add_option("--split-seed", split_seed, "gallery split seed")
        ->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "lambda sweep with an average-pooling "
                                              "baseline row");
    EvalArgs sweep_args;
    sweep_args.strategy = "np";
    std::vector<double> sweep_lambdas;
    add_data_flags(sweep, sweep_args);
    sweep->add_option("--strategy", sweep_args.strategy, "pooling strategy to sweep")
        ->check(CLI::IsMember({"ap", "qp", "np", "npstar", "sp"}))
        ->capture_default_str();
    sweep->add_option("--lambda", sweep_lambdas, "lambda values (default 1,2,5,10,20)")
        ->delimiter(',');
    sweep->add_option("--protocol", sweep_args.protocol, "template assembly protocol")
        ->check(CLI::IsMember({"legacy", "exhaustive"}))
        ->capture_default_str();
    sweep->add_option("--seed", sweep_args.seed, "legacy subsampling seed")
        ->capture_default_str();
    sweep->add_option("--domains", sweep_args.domains, "probe domain codes")
        ->delimiter(',');

    // norm-stats
    auto* norm_stats =
        app.add_subcommand("norm-stats", "per-domain norm/quality Pearson correlation");
    EvalArgs norm_args;
    add_data_flags(norm_stats, norm_args);

    // validate
    auto* validate = app.add_subcommand("validate", "check a manifest against its bank");
    EvalArgs validate_args;
    add_data_flags(validate, validate_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (synth->parsed()) {
        fp_synth_options o{};
        o.subjects = synth_subjects;
        o.dim = synth_dim;
        o.seed = synth_seed;
        o.out_dir = synth_out.c_str();
        return finish(fp_run_synth(&o));
    }
    if (pool->parsed()) {
        const auto o = to_options(pool_args);
        return finish(fp_run_pool(&o));
    }
    if (eval_closed->parsed()) {
        const auto o = to_options(closed_args);
        return finish(fp_run_eval_closed(&o));
    }
    if (eval_open->parsed()) {
        const auto o = to_options(open_args);
        return finish(fp_run_eval_open(
            &o, fpir_targets.empty() ? nullptr : fpir_targets.data(), fpir_targets.size(),
            split_seed));
    }
    if (sweep->parsed()) {
        const auto o = to_options(sweep_args);
        return finish(fp_run_sweep(
            &o, sweep_lambdas.empty() ? nullptr : sweep_lambdas.data(),
            sweep_lambdas.size()));
    }
    if (norm_stats->parsed()) {
        fp_data_options o{};
        o.bank_path = norm_args.bank.c_str();
        o.manifest_path = norm_args.manifest.c_str();
        o.out_dir = norm_args.out.c_str();
        return finish(fp_run_norm_stats(&o));
    }
    if (validate->parsed()) {
        fp_data_options o{};
        o.bank_path = validate_args.bank.c_str();
        o.manifest_path = validate_args.manifest.c_str();
        o.out_dir = validate_args.out.c_str();
        return finish(fp_run_validate(&o));
    }
    return 2;
}
