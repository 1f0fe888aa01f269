#include "figjudge/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "figjudge/corpus.hpp"
#include "figjudge/digest.hpp"
#include "figjudge/fixture.hpp"
#include "figjudge/judge.hpp"
#include "figjudge/report.hpp"
#include "figjudge/stats.hpp"
#include "figjudge/strategies.hpp"
#include "figjudge/timefmt.hpp"

namespace figjudge {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Everything needed to reproduce a run (secrets excluded: the API key comes
// from FIGJUDGE_API_KEY and is never serialized).
struct RunConfig {
    std::string corpus_path;
    std::string backend_kind = "oracle"; // remote|oracle|anti-oracle|noisy|scripted|context-probe
    std::string endpoint;
    std::string model;
    std::string script_path;
    double noise_flip_prob = 1.0;
    std::string strategy = "zs";
    std::string context = "all";
    std::uint64_t seed = 42;
    int max_questions = 5;
    std::string cache_dir;
    int parallel = 1;
    double requests_per_minute = 0.0;
    int max_attempts = 5;
    std::string out_dir;
    std::string run_id; // overrides the timestamped leaf directory name
    DecodingParams params;

    ordered_json to_json() const {
        ordered_json j;
        j["corpus"] = corpus_path;
        j["backend"] = {{"kind", backend_kind}, {"endpoint", endpoint},   {"model", model},
                        {"script", script_path}, {"noise", noise_flip_prob}};
        j["strategy"] = strategy;
        j["context"] = context;
        j["seed"] = seed;
        j["max_questions"] = max_questions;
        j["cache_dir"] = cache_dir;
        j["parallel"] = parallel;
        j["requests_per_minute"] = requests_per_minute;
        j["max_attempts"] = max_attempts;
        j["out"] = out_dir;
        j["params"] = {{"temperature", params.temperature},
                       {"top_p", params.top_p},
                       {"min_new_tokens", params.min_new_tokens},
                       {"max_new_tokens", params.max_new_tokens},
                       {"repetition_penalty", params.repetition_penalty},
                       {"num_beams", params.num_beams},
                       {"sample", params.sample}};
        return j;
    }

    void merge_file(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw Error(ErrorCode::InvalidConfig, "cannot open config file '" + path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw Error(ErrorCode::InvalidConfig, "config file '" + path + "': " + e.what());
        }
        corpus_path = j.value("corpus", corpus_path);
        if (j.contains("backend")) {
            const json& b = j["backend"];
            backend_kind = b.value("kind", backend_kind);
            endpoint = b.value("endpoint", endpoint);
            model = b.value("model", model);
            script_path = b.value("script", script_path);
            noise_flip_prob = b.value("noise", noise_flip_prob);
        }
        strategy = j.value("strategy", strategy);
        context = j.value("context", context);
        seed = j.value("seed", seed);
        max_questions = j.value("max_questions", max_questions);
        cache_dir = j.value("cache_dir", cache_dir);
        parallel = j.value("parallel", parallel);
        requests_per_minute = j.value("requests_per_minute", requests_per_minute);
        max_attempts = j.value("max_attempts", max_attempts);
        out_dir = j.value("out", out_dir);
        if (j.contains("params")) {
            const json& p = j["params"];
            params.temperature = p.value("temperature", params.temperature);
            params.top_p = p.value("top_p", params.top_p);
            params.min_new_tokens = p.value("min_new_tokens", params.min_new_tokens);
            params.max_new_tokens = p.value("max_new_tokens", params.max_new_tokens);
            params.repetition_penalty = p.value("repetition_penalty", params.repetition_penalty);
            params.num_beams = p.value("num_beams", params.num_beams);
            params.sample = p.value("sample", params.sample);
        }
    }
};

std::shared_ptr<JudgeBackend> build_backend(const RunConfig& cfg, const ValidatedCorpus& corpus) {
    if (cfg.backend_kind == "oracle")
        return make_oracle_backend(corpus);
    if (cfg.backend_kind == "anti-oracle")
        return make_anti_oracle_backend(corpus);
    if (cfg.backend_kind == "noisy")
        return make_noisy_backend(corpus, cfg.seed, cfg.noise_flip_prob);
    if (cfg.backend_kind == "context-probe")
        return make_context_probe_backend(cfg.seed);
    if (cfg.backend_kind == "scripted") {
        if (cfg.script_path.empty())
            throw Error(ErrorCode::InvalidConfig, "scripted backend requires --script");
        std::ifstream in(cfg.script_path);
        if (!in)
            throw Error(ErrorCode::InvalidConfig, "cannot open script file '" + cfg.script_path + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw Error(ErrorCode::InvalidConfig, "script file '" + cfg.script_path + "': " + e.what());
        }
        std::map<std::string, std::string> table;
        std::optional<std::string> fallback;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "*")
                fallback = it.value().get<std::string>();
            else
                table[it.key()] = it.value().get<std::string>();
        }
        return std::make_shared<ScriptedBackend>(std::move(table), std::move(fallback));
    }
    if (cfg.backend_kind == "remote") {
        if (cfg.endpoint.empty() || cfg.model.empty())
            throw Error(ErrorCode::InvalidConfig, "remote backend requires --endpoint and --model");
        RemoteBackendConfig rc;
        rc.endpoint = cfg.endpoint;
        rc.model = cfg.model;
        return make_remote_backend(rc);
    }
    throw Error(ErrorCode::InvalidConfig, "unknown backend kind '" + cfg.backend_kind + "'");
}

JudgeClient build_client(const RunConfig& cfg, const ValidatedCorpus& corpus) {
    ClientOptions options;
    if (!cfg.cache_dir.empty())
        options.cache = ResponseCache::on_disk(cfg.cache_dir);
    options.rate_limit.requests_per_minute = cfg.requests_per_minute;
    options.max_in_flight = std::max(1, cfg.parallel);
    options.retry.jitter_seed = cfg.seed;
    options.retry.max_attempts = cfg.max_attempts;
    return JudgeClient(build_backend(cfg, corpus), std::move(options));
}

StrategySpec build_spec(const RunConfig& cfg) {
    StrategySpec spec;
    spec.kind = strategy_from_id(cfg.strategy);
    spec.context = context_mode_from_id(cfg.context, cfg.seed);
    spec.exemplar_seed = cfg.seed;
    spec.max_questions = cfg.max_questions;
    return spec;
}

// One directory per run: <out>/<command>-<timestamp>-<confighash8>, never
// reused; --run-id pins the leaf name for scripted comparisons.
std::filesystem::path make_run_dir(const RunConfig& cfg, const std::string& command) {
    std::filesystem::path base(cfg.out_dir);
    std::string leaf = cfg.run_id;
    if (leaf.empty())
        leaf = command + "-" + utc_timestamp_compact() + "-" + sha256_hex(cfg.to_json().dump()).substr(0, 8);
    std::filesystem::path dir = base / leaf;
    int suffix = 1;
    while (std::filesystem::exists(dir))
        dir = base / (leaf + "-" + std::to_string(++suffix));
    std::filesystem::create_directories(dir);
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidConfig, "cannot write '" + path.string() + "'");
    out << content;
}

// Reports never overwrite: an occupied name gets a numeric suffix.
std::filesystem::path fresh_path(const std::filesystem::path& dir, const std::string& stem,
                                 const std::string& ext) {
    std::filesystem::path path = dir / (stem + ext);
    int suffix = 1;
    while (std::filesystem::exists(path))
        path = dir / (stem + "-" + std::to_string(++suffix) + ext);
    return path;
}

void print_warnings(const ValidatedCorpus& corpus) {
    for (const auto& w : corpus.warnings())
        std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_make_fixture(const FixtureSpec& spec, const std::string& out_path) {
    const ValidatedCorpus corpus = make_reference_fixture(spec);
    write_file(out_path, corpus.serialize_jsonl());
    const ErrorCensus census = error_census(corpus);
    std::cout << "wrote " << out_path << " (" << corpus.figures().size() << " figures, " << corpus.caption_count()
              << " captions, " << corpus.valid_caption_ids().size() << " valid)\n";
    std::cout << render_census(census, corpus.caption_count(), corpus.valid_caption_ids().size());
    return 0;
}

int cmd_ingest(const std::string& corpus_path, const std::string& out_dir) {
    const ValidatedCorpus corpus = load_corpus(corpus_path);
    print_warnings(corpus);
    const ErrorCensus census = error_census(corpus);
    std::cout << "corpus " << corpus_path << "\n";
    std::cout << "  figures          : " << corpus.figures().size() << "\n";
    std::cout << "  phd rankings     : " << corpus.phd_rankings().size() << "\n";
    std::cout << "  undergrad ratings: " << corpus.undergrad_ratings().size() << "\n";
    std::cout << "  content hash     : " << corpus.content_hash() << "\n";
    std::cout << render_census(census, corpus.caption_count(), corpus.valid_caption_ids().size());
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        ordered_json manifest;
        manifest["kind"] = "ingest-manifest";
        manifest["corpus"] = corpus_path;
        manifest["corpus_hash"] = corpus.content_hash();
        manifest["figures"] = corpus.figures().size();
        manifest["captions"] = corpus.caption_count();
        manifest["valid_captions"] = corpus.valid_caption_ids().size();
        manifest["census"] = {{"image_extraction", census.image_extraction},
                              {"text_extraction", census.text_extraction},
                              {"not_line_chart", census.not_line_chart},
                              {"compound_figure", census.compound_figure},
                              {"any_error", census.any_error}};
        manifest["warnings"] = corpus.warnings();
        write_file(fresh_path(out_dir, "ingest", ".json"), manifest.dump(2) + "\n");
    }
    return 0;
}

int cmd_judge(const RunConfig& cfg) {
    const ValidatedCorpus corpus = load_corpus(cfg.corpus_path);
    print_warnings(corpus);
    JudgeClient client = build_client(cfg, corpus);
    const RunResult result = run_strategy(corpus, build_spec(cfg), client, cfg.parallel);
    if (result.scores.empty() && !result.manifest.failures.empty())
        throw Error(result.manifest.failures.front().code,
                    "all " + std::to_string(result.manifest.failures.size()) + " captions failed; first: " +
                        result.manifest.failures.front().error);

    const std::filesystem::path dir = make_run_dir(cfg, "judge");
    write_file(dir / "scores.jsonl", render_scores_jsonl(result));
    write_file(dir / "run.json", render_run_json(result));
    write_file(dir / "config.json", cfg.to_json().dump(2) + "\n");

    std::cout << "run directory: " << dir.string() << "\n";
    std::cout << "scores: " << result.scores.size() << " (failures: " << result.manifest.failures.size()
              << ", backend calls: " << result.manifest.backend_calls << ", cache hits: "
              << result.manifest.cache_hits << ")\n";
    if (!result.manifest.no_mentions_figures.empty())
        std::cout << "figures without mentions: " << result.manifest.no_mentions_figures.size() << "\n";
    return 0;
}

int cmd_analyze(const std::string& corpus_path, const std::vector<std::string>& score_files,
                const std::string& out_dir) {
    const ValidatedCorpus corpus = load_corpus(corpus_path);
    print_warnings(corpus);

    std::vector<BatteryRow> rows;
    ordered_json manifest;
    manifest["kind"] = "analyze-manifest";
    manifest["corpus"] = corpus_path;
    manifest["corpus_hash"] = corpus.content_hash();
    ordered_json inputs = ordered_json::array();

    for (const auto& file : score_files) {
        const auto [header, scores] = load_scores_jsonl(file);
        BatteryRow row;
        row.backend_id = header.backend_id;
        row.strategy_id = header.strategy_id;
        row.context_id = header.context_id;
        row.reports = correlation_battery(scores, corpus);
        rows.push_back(std::move(row));
        inputs.push_back({{"file", file}, {"n_scores", scores.size()}});
    }
    manifest["inputs"] = std::move(inputs);

    const std::string csv = render_battery_csv(rows);
    const std::string md = render_battery_markdown(rows);
    std::cout << md;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(fresh_path(out_dir, "report", ".csv"), csv);
        write_file(fresh_path(out_dir, "report", ".md"), md);
        write_file(fresh_path(out_dir, "analyze", ".json"), manifest.dump(2) + "\n");
        std::cout << "reports written to " << out_dir << "\n";
    }
    return 0;
}

int cmd_ablate(RunConfig cfg) {
    const ValidatedCorpus corpus = load_corpus(cfg.corpus_path);
    print_warnings(corpus);
    JudgeClient client = build_client(cfg, corpus);

    const std::filesystem::path dir = make_run_dir(cfg, "ablate");
    const std::vector<std::string> modes = {"all", "first", "random", "caption"};

    std::map<std::string, std::map<std::string, double>> scores_by_mode; // mode -> caption -> score
    std::vector<AblationRow> rows;

    for (const auto& mode : modes) {
        RunConfig mode_cfg = cfg;
        mode_cfg.context = mode;
        const RunResult result = run_strategy(corpus, build_spec(mode_cfg), client, cfg.parallel);
        write_file(dir / ("scores-" + mode + ".jsonl"), render_scores_jsonl(result));
        write_file(dir / ("run-" + mode + ".json"), render_run_json(result));

        AblationRow row;
        row.context_id = mode;
        row.reports = correlation_battery(result.scores, corpus);
        row.no_mentions_figures = static_cast<int>(result.manifest.no_mentions_figures.size());
        rows.push_back(std::move(row));
        for (const auto& s : result.scores)
            scores_by_mode[mode][s.caption_id] = s.score;
    }

    // paired t-test of each context against caption-only, aligned by caption id
    const auto& caption_scores = scores_by_mode.at("caption");
    for (auto& row : rows) {
        if (row.context_id == "caption")
            continue;
        std::vector<double> a, b;
        for (const auto& [caption_id, score] : scores_by_mode.at(row.context_id)) {
            auto it = caption_scores.find(caption_id);
            if (it == caption_scores.end())
                continue;
            a.push_back(score);
            b.push_back(it->second);
        }
        row.t_vs_caption = paired_t_test(a, b);
    }

    const std::string csv = render_ablation_csv(rows);
    const std::string md = render_ablation_markdown(rows);
    std::cout << md;
    write_file(dir / "ablation.csv", csv);
    write_file(dir / "ablation.md", md);
    write_file(dir / "config.json", cfg.to_json().dump(2) + "\n");
    std::cout << "run directory: " << dir.string() << "\n";
    return 0;
}

int cmd_agreement(const std::string& corpus_path, const std::string& annotator_a, const std::string& annotator_b,
                  const std::string& out_dir) {
    const ValidatedCorpus corpus = load_corpus(corpus_path);
    print_warnings(corpus);

    std::vector<PhdRanking> a, b;
    std::set<std::string> figures_a, figures_b;
    for (const auto& r : corpus.phd_rankings()) {
        if (r.annotator_id == annotator_a) {
            a.push_back(r);
            figures_a.insert(r.figure_id);
        } else if (r.annotator_id == annotator_b) {
            b.push_back(r);
            figures_b.insert(r.figure_id);
        }
    }

    std::set<std::string> shared;
    for (const auto& f : figures_a)
        if (figures_b.count(f))
            shared.insert(f);

    const auto keep_shared = [&](std::vector<PhdRanking>& v) {
        std::erase_if(v, [&](const PhdRanking& r) { return !shared.count(r.figure_id); });
    };
    const std::size_t dropped = (figures_a.size() - shared.size()) + (figures_b.size() - shared.size());
    keep_shared(a);
    keep_shared(b);
    if (dropped > 0)
        std::cerr << "warning: ignoring " << dropped << " figure(s) not ranked by both annotators\n";

    const double tau = agreement(a, b);
    std::cout << "inter-annotator agreement (" << annotator_a << " vs " << annotator_b << ", "
              << shared.size() << " figures): mean Kendall tau = " << format_fixed(tau, 3) << "\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        ordered_json manifest;
        manifest["kind"] = "agreement-manifest";
        manifest["corpus_hash"] = corpus.content_hash();
        manifest["annotator_a"] = annotator_a;
        manifest["annotator_b"] = annotator_b;
        manifest["shared_figures"] = shared.size();
        manifest["mean_kendall_tau"] = tau;
        write_file(fresh_path(out_dir, "agreement", ".json"), manifest.dump(2) + "\n");
    }
    return 0;
}

int cmd_features(const std::string& corpus_path, const std::string& judge, const std::string& out_dir) {
    const ValidatedCorpus corpus = load_corpus(corpus_path);
    print_warnings(corpus);

    std::vector<FeatureReportRow> rows;
    if (judge == "phd" || judge == "both")
        rows.push_back({"PhD", feature_helpfulness_correlation(corpus, HelpfulnessJudge::Phd)});
    if (judge == "undergrad" || judge == "both")
        rows.push_back({"Undergrad", feature_helpfulness_correlation(corpus, HelpfulnessJudge::Undergrad)});
    if (rows.empty())
        throw Error(ErrorCode::InvalidConfig, "--judge must be phd, undergrad or both");

    const std::string md = render_features_markdown(rows);
    std::cout << md;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(fresh_path(out_dir, "features", ".csv"), render_features_csv(rows));
        write_file(fresh_path(out_dir, "features", ".md"), md);
        ordered_json manifest;
        manifest["kind"] = "features-manifest";
        manifest["corpus_hash"] = corpus.content_hash();
        manifest["judge"] = judge;
        write_file(fresh_path(out_dir, "features-manifest", ".json"), manifest.dump(2) + "\n");
        std::cout << "reports written to " << out_dir << "\n";
    }
    return 0;
}

int cmd_export_labels(const std::string& corpus_path, const std::string& source, std::uint64_t seed,
                      const std::string& out_dir) {
    const ValidatedCorpus corpus = load_corpus(corpus_path);
    print_warnings(corpus);

    LabelSource label_source;
    if (source == "phd")
        label_source = LabelSource::PhdRankings;
    else if (source == "undergrad")
        label_source = LabelSource::UndergradRatings;
    else
        throw Error(ErrorCode::InvalidConfig, "--labels must be phd or undergrad");

    const std::vector<CaptionLabel> labels = derive_labels(corpus, label_source);
    const SplitFiles files = export_split(corpus, labels, out_dir, SplitRatios{}, seed);
    const auto splits = split_labels(corpus, labels, SplitRatios{}, seed);

    int yes = 0;
    for (const auto& label : labels)
        yes += label.helpful ? 1 : 0;

    ordered_json manifest;
    manifest["kind"] = "labels-manifest";
    manifest["corpus_hash"] = corpus.content_hash();
    manifest["source"] = source;
    manifest["seed"] = seed;
    manifest["n_labels"] = labels.size();
    manifest["n_yes"] = yes;
    manifest["split_sizes"] = {splits[0].size(), splits[1].size(), splits[2].size()};
    write_file(std::filesystem::path(out_dir) / "labels.json", manifest.dump(2) + "\n");

    std::cout << "labels: " << labels.size() << " (" << yes << " Yes / " << labels.size() - yes << " No)\n";
    std::cout << "splits: train " << splits[0].size() << ", validation " << splits[1].size() << ", test "
              << splits[2].size() << "\n";
    std::cout << "files: " << files.train.string() << ", " << files.validation.string() << ", "
              << files.test.string() << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Reference-free LLM evaluation harness for scientific figure captions"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    // make-fixture
    FixtureSpec fixture_spec;
    std::string fixture_out = "corpus.jsonl";
    auto* mk = app.add_subcommand("make-fixture", "Generate a synthetic demo corpus");
    mk->add_option("--out", fixture_out, "Output JSONL path");
    mk->add_option("--figures-per-domain", fixture_spec.figures_per_domain, "Figures per domain (default 200)");
    mk->add_option("--seed", fixture_spec.seed, "Generator seed");
    mk->add_option("--error-rate", fixture_spec.error_rate, "Random error rate for non-standard sizes");
    mk->add_option("--empty-mentions", fixture_spec.empty_mention_fraction, "Fraction of figures without mentions");
    mk->add_flag("--no-exact-errors", [&fixture_spec](std::int64_t) { fixture_spec.exact_error_layout = false; },
                 "Disable the exact error-count layout");

    // ingest
    std::string ingest_corpus, ingest_out;
    auto* ingest = app.add_subcommand("ingest", "Load, validate and summarize a corpus");
    ingest->add_option("--corpus", ingest_corpus, "Corpus JSONL path")->required();
    ingest->add_option("--out", ingest_out, "Manifest output directory");

    // shared judge/ablate options
    const auto add_run_options = [&cfg, &config_path](CLI::App* cmd, bool context_option) {
        cmd->add_option("--config", config_path, "JSON config file (flags override)");
        cmd->add_option("--corpus", cfg.corpus_path, "Corpus JSONL path");
        cmd->add_option("--strategy", cfg.strategy, "zs|fs|cot-qa|cot-yn");
        if (context_option)
            cmd->add_option("--context", cfg.context, "all|first|random|caption");
        cmd->add_option("--backend", cfg.backend_kind, "remote|oracle|anti-oracle|noisy|scripted|context-probe");
        cmd->add_option("--model", cfg.model, "Remote model name");
        cmd->add_option("--endpoint", cfg.endpoint, "Remote endpoint URL");
        cmd->add_option("--script", cfg.script_path, "Scripted backend response table (JSON)");
        cmd->add_option("--noise", cfg.noise_flip_prob, "Noisy backend flip probability");
        cmd->add_option("--seed", cfg.seed, "Seed for context/exemplar/backend draws");
        cmd->add_option("--max-questions", cfg.max_questions, "CoT question cap");
        cmd->add_option("--cache-dir", cfg.cache_dir, "Response cache directory");
        cmd->add_option("--parallel", cfg.parallel, "Max in-flight requests");
        cmd->add_option("--rpm", cfg.requests_per_minute, "Rate limit, requests per minute");
        cmd->add_option("--max-attempts", cfg.max_attempts, "Transport retry budget per request");
        cmd->add_option("--out", cfg.out_dir, "Output directory (flag or config file)");
        cmd->add_option("--run-id", cfg.run_id, "Fixed run directory name");
    };

    auto* judge = app.add_subcommand("judge", "Score every valid caption with one strategy");
    add_run_options(judge, true);

    auto* ablate = app.add_subcommand("ablate", "Run all four context modes and t-test against caption-only");
    add_run_options(ablate, false);

    // analyze
    std::string analyze_corpus, analyze_out;
    std::vector<std::string> analyze_scores;
    auto* analyze = app.add_subcommand("analyze", "Correlation battery over score files");
    analyze->add_option("--corpus", analyze_corpus, "Corpus JSONL path")->required();
    analyze->add_option("--scores", analyze_scores, "Score files (repeatable)")->required();
    analyze->add_option("--out", analyze_out, "Report output directory");

    // agreement
    std::string agr_corpus, agr_a, agr_b, agr_out;
    auto* agr = app.add_subcommand("agreement", "Inter-annotator agreement between two annotators");
    agr->add_option("--corpus", agr_corpus, "Corpus JSONL path")->required();
    agr->add_option("--annotator-a", agr_a, "First annotator id")->required();
    agr->add_option("--annotator-b", agr_b, "Second annotator id")->required();
    agr->add_option("--out", agr_out, "Manifest output directory");

    // features
    std::string feat_corpus, feat_judge = "both", feat_out;
    auto* feat = app.add_subcommand("features", "Feature vs helpfulness correlations");
    feat->add_option("--corpus", feat_corpus, "Corpus JSONL path")->required();
    feat->add_option("--judge", feat_judge, "phd|undergrad|both");
    feat->add_option("--out", feat_out, "Report output directory");

    // export-labels
    std::string labels_corpus, labels_source = "phd", labels_out;
    std::uint64_t labels_seed = 42;
    auto* labels = app.add_subcommand("export-labels", "Derive Yes/No labels and write 80/10/10 splits");
    labels->add_option("--corpus", labels_corpus, "Corpus JSONL path")->required();
    labels->add_option("--labels", labels_source, "phd|undergrad");
    labels->add_option("--seed", labels_seed, "Split shuffle seed");
    labels->add_option("--out", labels_out, "Output directory")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("figjudge");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!config_path.empty()) {
            // config file first, then re-apply explicit flags on top
            RunConfig merged;
            merged.merge_file(config_path);
            const auto apply = [](CLI::App* cmd, const char* name, auto& target, const auto& flag_value) {
                const CLI::Option* opt = cmd->get_option_no_throw(name);
                if (opt && opt->count() > 0)
                    target = flag_value;
            };
            CLI::App* active = judge->parsed() ? judge : ablate;
            RunConfig flags = cfg;
            apply(active, "--corpus", merged.corpus_path, flags.corpus_path);
            apply(active, "--strategy", merged.strategy, flags.strategy);
            apply(active, "--context", merged.context, flags.context);
            apply(active, "--backend", merged.backend_kind, flags.backend_kind);
            apply(active, "--model", merged.model, flags.model);
            apply(active, "--endpoint", merged.endpoint, flags.endpoint);
            apply(active, "--script", merged.script_path, flags.script_path);
            apply(active, "--noise", merged.noise_flip_prob, flags.noise_flip_prob);
            apply(active, "--seed", merged.seed, flags.seed);
            apply(active, "--max-questions", merged.max_questions, flags.max_questions);
            apply(active, "--cache-dir", merged.cache_dir, flags.cache_dir);
            apply(active, "--parallel", merged.parallel, flags.parallel);
            apply(active, "--rpm", merged.requests_per_minute, flags.requests_per_minute);
            apply(active, "--max-attempts", merged.max_attempts, flags.max_attempts);
            apply(active, "--out", merged.out_dir, flags.out_dir);
            apply(active, "--run-id", merged.run_id, flags.run_id);
            cfg = merged;
        }

        if (mk->parsed())
            return cmd_make_fixture(fixture_spec, fixture_out);
        if (ingest->parsed())
            return cmd_ingest(ingest_corpus, ingest_out);
        const auto require_run_config = [&](const char* command) {
            if (cfg.corpus_path.empty())
                throw Error(ErrorCode::InvalidConfig,
                            std::string(command) + " requires --corpus (flag or config file)");
            if (cfg.out_dir.empty())
                throw Error(ErrorCode::InvalidConfig,
                            std::string(command) + " requires --out (flag or config file)");
        };
        if (judge->parsed()) {
            require_run_config("judge");
            return cmd_judge(cfg);
        }
        if (ablate->parsed()) {
            require_run_config("ablate");
            return cmd_ablate(cfg);
        }
        if (analyze->parsed())
            return cmd_analyze(analyze_corpus, analyze_scores, analyze_out);
        if (agr->parsed())
            return cmd_agreement(agr_corpus, agr_a, agr_b, agr_out);
        if (feat->parsed())
            return cmd_features(feat_corpus, feat_judge, feat_out);
        if (labels->parsed())
            return cmd_export_labels(labels_corpus, labels_source, labels_seed, labels_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace figjudge
