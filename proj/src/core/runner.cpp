#include "core/runner.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "core/error.hpp"
#include "core/manifest_io.hpp"
#include "core/parallel.hpp"

namespace facepool::runner {

namespace fs = std::filesystem;

namespace {

std::vector<int> normalize_domains(std::vector<int> domains) {
    if (domains.empty()) domains = protocol::default_probe_domains();
    std::sort(domains.begin(), domains.end());
    domains.erase(std::unique(domains.begin(), domains.end()), domains.end());
    return domains;
}

std::vector<std::string> all_subjects(const std::vector<protocol::MediaRecord>& records) {
    std::set<std::string> subjects;
    for (const auto& r : records) subjects.insert(r.subject_id);
    return {subjects.begin(), subjects.end()};
}

std::vector<pooling::PooledTemplate> pool_from_specs(
    const Dataset& ds, const std::vector<protocol::TemplateSpec>& specs,
    const pooling::PoolingStrategy& strategy) {
    std::vector<pooling::PooledTemplate> out(specs.size());
    parallel_for(specs.size(), [&](std::size_t t) {
        const auto& spec = specs[t];
        std::vector<std::uint64_t> rows;
        std::vector<std::string> ids;
        rows.reserve(spec.record_indices.size());
        ids.reserve(spec.record_indices.size());
        std::vector<double> det;
        bool have_all_det = true;
        for (std::size_t idx : spec.record_indices) {
            const auto& rec = ds.records[idx];
            if (rec.feature_index >= ds.bank.count())
                raise(ErrorCode::IndexOutOfRange,
                      "feature index " + std::to_string(rec.feature_index) + " outside bank");
            rows.push_back(rec.feature_index);
            ids.push_back(rec.media_id);
            if (have_all_det && rec.detection_prob)
                det.push_back(*rec.detection_prob);
            else
                have_all_det = false;
        }
        out[t] = pooling::pool_bank_rows(
            strategy, ds.bank.data.data(), ds.bank.dim, rows,
            have_all_det ? std::optional<std::vector<double>>(std::move(det)) : std::nullopt,
            std::move(ids), spec.subject_id, spec.domain_code);
    });
    return out;
}

std::string join_path(const std::string& dir, const char* name) {
    return (fs::path(dir) / name).string();
}

// Duplicate ids or dangling feature indices make any evaluation meaningless;
// sparse domain coverage does not, so it only trips the validate command.
bool integrity_ok(const Dataset& ds) {
    const auto report = protocol::validate_manifest(ds.records, ds.bank.count());
    bool ok = true;
    for (const auto& issue : report.issues) {
        if (issue.kind == "missing_domain") continue;
        std::fprintf(stderr, "manifest issue (%s): %s\n", issue.kind.c_str(),
                     issue.detail.c_str());
        ok = false;
    }
    return ok;
}

std::vector<pooling::PooledTemplate> filter_templates(
    const std::vector<pooling::PooledTemplate>& templates, int domain,
    const std::set<std::string>* subjects = nullptr) {
    std::vector<pooling::PooledTemplate> out;
    for (const auto& t : templates)
        if (t.domain_code == domain && (!subjects || subjects->count(t.subject_id)))
            out.push_back(t);
    return out;
}

}  // namespace

Dataset make_default_dataset(std::uint64_t seed) {
    auto synth = synthgen::generate_dataset(synthgen::default_domain_profiles(),
                                            synthgen::kDefaultSubjects,
                                            synthgen::kDefaultDim, seed);
    return {std::move(synth.bank), std::move(synth.manifest)};
}

Dataset load_dataset(const std::string& bank_path, const std::string& manifest_path) {
    Dataset ds;
    ds.bank = bankio::read_feature_bank(bank_path);
    ds.records = manifestio::read_manifest(manifest_path);
    return ds;
}

std::vector<pooling::PooledTemplate> pool_probe_templates(
    const Dataset& ds, const pooling::PoolingStrategy& strategy,
    const protocol::ProtocolConfig& cfg, std::vector<int> domains) {
    domains = normalize_domains(std::move(domains));

    std::set<int> requested(domains.begin(), domains.end());
    std::set<std::pair<std::string, int>> observed;
    for (const auto& r : ds.records)
        if (requested.count(r.domain_code)) observed.emplace(r.subject_id, r.domain_code);
    for (int d : domains) {
        const bool any = std::any_of(observed.begin(), observed.end(),
                                     [d](const auto& p) { return p.second == d; });
        if (!any)
            raise(ErrorCode::EmptyDomain, "no media in domain " + std::to_string(d));
    }

    const std::vector<std::pair<std::string, int>> pairs(observed.begin(), observed.end());
    const auto specs = protocol::assemble_templates(ds.records, cfg, pairs);
    return pool_from_specs(ds, specs, strategy);
}

std::vector<pooling::PooledTemplate> pool_gallery_templates(
    const Dataset& ds, const pooling::PoolingStrategy& strategy,
    const std::vector<std::string>& subjects) {
    std::vector<std::string> wanted = subjects.empty() ? all_subjects(ds.records) : subjects;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
    std::vector<std::pair<std::string, int>> pairs;
    pairs.reserve(wanted.size());
    for (const auto& s : wanted) pairs.emplace_back(s, 0);
    protocol::ProtocolConfig cfg;
    cfg.kind = protocol::ProtocolKind::Exhaustive;
    const auto specs = protocol::assemble_templates(ds.records, cfg, pairs);
    return pool_from_specs(ds, specs, strategy);
}

std::vector<ClosedDomainResult> closed_eval(const Dataset& ds,
                                            const pooling::PoolingStrategy& strategy,
                                            const protocol::ProtocolConfig& cfg,
                                            std::vector<int> domains) {
    domains = normalize_domains(std::move(domains));
    const auto gallery = pool_gallery_templates(ds, strategy);
    const auto probes = pool_probe_templates(ds, strategy, cfg, domains);

    std::vector<ClosedDomainResult> results;
    results.reserve(domains.size());
    for (int d : domains) {
        const auto domain_probes = filter_templates(probes, d);
        ClosedDomainResult res;
        res.domain = d;
        res.probe_count = domain_probes.size();
        const auto matrix = evaluation::score_probes(domain_probes, gallery);
        res.curve = evaluation::closed_set_cmc(matrix);
        res.rank1 = res.curve.at_rank(1);
        res.rank5 = res.curve.at_rank(5);
        results.push_back(std::move(res));
    }
    return results;
}

std::vector<OpenDomainResult> open_eval(const Dataset& ds,
                                        const pooling::PoolingStrategy& strategy,
                                        const protocol::ProtocolConfig& cfg,
                                        std::vector<int> domains,
                                        std::vector<double> fpir_targets,
                                        std::uint64_t split_seed) {
    domains = normalize_domains(std::move(domains));
    if (fpir_targets.empty()) fpir_targets = {0.01, 0.05, 0.1, 0.3};

    const auto subjects = all_subjects(ds.records);
    const auto [g1, g2] = protocol::split_galleries(subjects, split_seed);
    const std::set<std::string> nonmated_set(g1.subject_ids.begin(), g1.subject_ids.end());
    const std::set<std::string> mated_set(g2.subject_ids.begin(), g2.subject_ids.end());

    const auto gallery = pool_gallery_templates(ds, strategy, g2.subject_ids);
    const auto probes = pool_probe_templates(ds, strategy, cfg, domains);

    std::vector<OpenDomainResult> results;
    results.reserve(domains.size());
    for (int d : domains) {
        const auto mated = filter_templates(probes, d, &mated_set);
        const auto nonmated = filter_templates(probes, d, &nonmated_set);
        const auto mated_matrix = evaluation::score_probes(mated, gallery);
        const auto nonmated_matrix = evaluation::score_probes(nonmated, gallery);
        OpenDomainResult res;
        res.domain = d;
        for (double t : fpir_targets)
            res.points.push_back(evaluation::open_set_eval(mated_matrix, nonmated_matrix, t));
        results.push_back(std::move(res));
    }
    return results;
}

SweepResult lambda_sweep(const Dataset& ds, pooling::StrategyKind kind,
                         std::vector<double> lambdas, const protocol::ProtocolConfig& cfg,
                         std::vector<int> domains) {
    if (lambdas.empty()) raise(ErrorCode::InvalidArgument, "lambda sweep needs lambdas");
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    domains = normalize_domains(std::move(domains));

    SweepResult result;
    for (const auto& res : closed_eval(ds, {pooling::StrategyKind::AP, 1.0}, cfg, domains))
        result.rows.push_back({"ap", 1.0, res.domain, res.rank1, res.rank5});

    std::map<int, double> best_rank1;
    for (double lambda : lambdas) {
        for (const auto& res : closed_eval(ds, {kind, lambda}, cfg, domains)) {
            result.rows.push_back(
                {pooling::strategy_name(kind), lambda, res.domain, res.rank1, res.rank5});
            auto it = best_rank1.find(res.domain);
            if (it == best_rank1.end() || res.rank1 > it->second) {
                best_rank1[res.domain] = res.rank1;
                result.best_lambda[res.domain] = lambda;
            }
        }
    }
    return result;
}

int cmd_synth(const SynthCommand& cmd) {
    const auto ds = synthgen::generate_dataset(synthgen::default_domain_profiles(),
                                               cmd.subjects, cmd.dim, cmd.seed);
    fs::create_directories(cmd.out_dir);
    bankio::write_feature_bank(ds.bank, join_path(cmd.out_dir, "bank.ftbk"));
    manifestio::write_manifest(ds.manifest, join_path(cmd.out_dir, "manifest.jsonl"));
    std::printf("synth: %zu media, %d subjects, dim %d, seed %llu -> %s\n",
                ds.manifest.size(), cmd.subjects, cmd.dim,
                static_cast<unsigned long long>(cmd.seed), cmd.out_dir.c_str());
    return 0;
}

int cmd_pool(const PoolCommand& cmd) {
    const auto ds = load_dataset(cmd.data.bank_path, cmd.data.manifest_path);
    if (!integrity_ok(ds)) return 1;
    const auto templates = pool_probe_templates(ds, cmd.strategy, cmd.protocol, cmd.domains);

    bankio::FeatureBank pooled;
    pooled.dim = ds.bank.dim;
    pooled.data.reserve(templates.size() * ds.bank.dim);
    std::vector<protocol::MediaRecord> manifest;
    manifest.reserve(templates.size());
    for (std::size_t i = 0; i < templates.size(); ++i) {
        for (double v : templates[i].feature) pooled.data.push_back(static_cast<float>(v));
        protocol::MediaRecord rec;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "t%07zu", i);
        rec.media_id = buf;
        rec.subject_id = templates[i].subject_id;
        rec.domain_code = templates[i].domain_code;
        rec.feature_index = i;
        manifest.push_back(std::move(rec));
    }
    fs::create_directories(cmd.out_dir);
    bankio::write_feature_bank(pooled, join_path(cmd.out_dir, "templates.ftbk"));
    manifestio::write_manifest(manifest, join_path(cmd.out_dir, "templates.jsonl"));
    std::printf("pool: %zu templates (%s, lambda %s) -> %s\n", templates.size(),
                pooling::strategy_name(cmd.strategy.kind),
                reports::format_lambda(cmd.strategy.lambda).c_str(), cmd.out_dir.c_str());
    return 0;
}

int cmd_eval_closed(const EvalClosedCommand& cmd) {
    const auto ds = load_dataset(cmd.data.bank_path, cmd.data.manifest_path);
    if (!integrity_ok(ds)) return 1;
    const auto results = closed_eval(ds, cmd.strategy, cmd.protocol, cmd.domains);

    std::vector<reports::ClosedRow> rows;
    rows.reserve(results.size());
    for (const auto& res : results)
        rows.push_back({pooling::strategy_name(cmd.strategy.kind), cmd.strategy.lambda,
                        res.domain, res.rank1, res.rank5});
    fs::create_directories(cmd.out_dir);
    reports::write_text_file(join_path(cmd.out_dir, "closed.csv"), reports::closed_csv(rows));
    reports::write_text_file(join_path(cmd.out_dir, "closed.json"), reports::closed_json(rows));
    for (const auto& res : results) {
        char name[32];
        std::snprintf(name, sizeof(name), "cmc_d%d.csv", res.domain);
        reports::write_text_file(join_path(cmd.out_dir, name),
                                 reports::cmc_csv(res.curve.rank_retrieval));
    }
    for (const auto& res : results)
        std::printf("closed: domain %d rank1 %s rank5 %s (%zu probes)\n", res.domain,
                    reports::format_percent(res.rank1).c_str(),
                    reports::format_percent(res.rank5).c_str(), res.probe_count);
    return 0;
}

int cmd_eval_open(const EvalOpenCommand& cmd) {
    const auto ds = load_dataset(cmd.data.bank_path, cmd.data.manifest_path);
    if (!integrity_ok(ds)) return 1;
    const auto results = open_eval(ds, cmd.strategy, cmd.protocol, cmd.domains,
                                   cmd.fpir_targets, cmd.split_seed);

    std::vector<reports::OpenRow> rows;
    for (const auto& res : results)
        for (const auto& point : res.points)
            rows.push_back({pooling::strategy_name(cmd.strategy.kind), cmd.strategy.lambda,
                            res.domain, point.fpir_target, point.threshold, point.fnir});
    fs::create_directories(cmd.out_dir);
    reports::write_text_file(join_path(cmd.out_dir, "open.csv"), reports::open_csv(rows));
    reports::write_text_file(join_path(cmd.out_dir, "open.json"), reports::open_json(rows));
    for (const auto& row : rows)
        std::printf("open: domain %d fpir_target %s threshold %s fnir %s\n", row.domain,
                    reports::format_lambda(row.fpir_target).c_str(),
                    reports::format_threshold(row.threshold).c_str(),
                    reports::format_percent(row.fnir).c_str());
    return 0;
}

int cmd_sweep(const SweepCommand& cmd) {
    const auto ds = load_dataset(cmd.data.bank_path, cmd.data.manifest_path);
    if (!integrity_ok(ds)) return 1;
    std::vector<double> lambdas = cmd.lambdas;
    if (lambdas.empty()) lambdas = {1.0, 2.0, 5.0, 10.0, 20.0};
    const auto result = lambda_sweep(ds, cmd.kind, lambdas, cmd.protocol, cmd.domains);

    fs::create_directories(cmd.out_dir);
    reports::write_text_file(join_path(cmd.out_dir, "sweep.csv"),
                             reports::closed_csv(result.rows));
    reports::write_text_file(join_path(cmd.out_dir, "sweep.json"),
                             reports::closed_json(result.rows));
    for (const auto& [domain, lambda] : result.best_lambda)
        std::printf("sweep: domain %d best lambda %s\n", domain,
                    reports::format_lambda(lambda).c_str());
    return 0;
}

int cmd_norm_stats(const NormStatsCommand& cmd) {
    const auto ds = load_dataset(cmd.data.bank_path, cmd.data.manifest_path);
    if (!integrity_ok(ds)) return 1;
    const auto report = evaluation::norm_quality_report(ds.records, ds.bank);

    std::vector<reports::NormRow> rows;
    rows.reserve(report.size());
    for (const auto& r : report) {
        const bool known = r.domain_code >= 0 && r.domain_code <= protocol::max_domain_code();
        rows.push_back({r.domain_code, known ? protocol::domain_label(r.domain_code) : "unknown",
                        r.media_count, r.pearson});
    }
    fs::create_directories(cmd.out_dir);
    reports::write_text_file(join_path(cmd.out_dir, "norm_stats.csv"), reports::norm_csv(rows));
    reports::write_text_file(join_path(cmd.out_dir, "norm_stats.json"),
                             reports::norm_json(rows));
    for (const auto& row : rows)
        std::printf("norm-stats: domain %d n=%zu pearson %s\n", row.domain, row.media_count,
                    row.pearson ? reports::format_threshold(*row.pearson).c_str() : "n/a");
    return 0;
}

int cmd_validate(const ValidateCommand& cmd) {
    const auto ds = load_dataset(cmd.data.bank_path, cmd.data.manifest_path);
    const auto report = protocol::validate_manifest(ds.records, ds.bank.count());

    nlohmann::ordered_json j;
    j["subject_count"] = report.subject_count;
    j["media_count"] = report.media_count;
    j["issues"] = nlohmann::ordered_json::array();
    for (const auto& issue : report.issues)
        j["issues"].push_back({{"kind", issue.kind}, {"detail", issue.detail}});
    fs::create_directories(cmd.out_dir);
    reports::write_text_file(join_path(cmd.out_dir, "validate.json"), j.dump(2) + "\n");

    std::printf("validate: %zu subjects, %zu media, %zu issues\n", report.subject_count,
                report.media_count, report.issues.size());
    for (const auto& issue : report.issues)
        std::printf("  %s: %s\n", issue.kind.c_str(), issue.detail.c_str());
    return report.ok() ? 0 : 1;
}

}  // namespace facepool::runner
