// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all criteria hold.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "figjudge/cli.hpp"
#include "figjudge/corpus.hpp"
#include "figjudge/fixture.hpp"
#include "figjudge/judge.hpp"
#include "figjudge/stats.hpp"
#include "figjudge/strategies.hpp"
#include "support/oracles.hpp"
#include "support/parse_cases.hpp"
#include "support/tempdir.hpp"

using namespace figjudge;
using namespace figjudge::testing;

namespace {

struct Checker {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
    void near(double actual, double expected, double tol, const std::string& label) {
        if (std::fabs(actual - expected) > tol && ok) {
            ok = false;
            std::ostringstream msg;
            msg.precision(15);
            msg << label << ": got " << actual << ", want " << expected << " (tol " << tol << ")";
            detail = msg.str();
        }
    }
};

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const ValidatedCorpus& full_fixture() {
    static const ValidatedCorpus corpus = make_reference_fixture();
    return corpus;
}

RunResult run_zero_shot(const ValidatedCorpus& corpus, std::shared_ptr<JudgeBackend> backend) {
    JudgeClient client(std::move(backend), {});
    StrategySpec spec;
    spec.kind = StrategyKind::ZeroShot;
    return run_strategy(corpus, spec, client, 4);
}

std::map<RankConversion, CorrelationReport> battery_map(const std::vector<JudgeScore>& scores,
                                                        const ValidatedCorpus& corpus) {
    std::map<RankConversion, CorrelationReport> out;
    for (const auto& r : correlation_battery(scores, corpus))
        out[r.conversion] = r;
    return out;
}

// --- criteria -------------------------------------------------------------

void criterion_1_oracle_equivalence(Checker& c) {
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        const auto [x, y] = random_tied_series(seed);
        const PairedSeries s = PairedSeries::from_vectors(x, y);

        const auto tau_expected = tau_b_oracle(x, y);
        c.require(tau_expected.has_value(), "oracle degenerate at seed " + std::to_string(seed));
        if (!tau_expected)
            return;
        c.near(kendall_tau_b(s), *tau_expected, 1e-12, "tau seed " + std::to_string(seed));

        const auto rs_expected = spearman_oracle(x, y);
        c.require(rs_expected.has_value(), "spearman oracle degenerate at seed " + std::to_string(seed));
        if (!rs_expected)
            return;
        c.near(spearman(s), *rs_expected, 1e-12, "spearman seed " + std::to_string(seed));
        if (!c.ok)
            return;
    }
    const double secs = elapsed_s(start);
    c.require(secs < 10.0, "runtime " + std::to_string(secs) + "s exceeds 10s");
}

void criterion_2_hand_anchors(Checker& c) {
    c.near(pearson(PairedSeries::from_vectors({1, 2, 3, 4}, {1, 3, 2, 4})), 0.8, 1e-12, "pearson");
    c.near(kendall_tau_b(PairedSeries::from_vectors({1, 2, 3}, {1, 3, 2})), 1.0 / 3.0, 1e-12, "kendall");
    c.near(spearman(PairedSeries::from_vectors({1, 2, 3}, {3, 1, 2})), -0.5, 1e-12, "spearman");
}

void criterion_3_oracle_end_to_end(Checker& c) {
    const auto start = std::chrono::steady_clock::now();
    const ValidatedCorpus& corpus = full_fixture();

    const RunResult oracle = run_zero_shot(corpus, make_oracle_backend(corpus));
    c.require(oracle.scores.size() == 3159, "oracle run produced " + std::to_string(oracle.scores.size()));
    const auto reports = battery_map(oracle.scores, corpus);
    c.near(reports.at(RankConversion::Reversed).rho, 1.0, 1e-9, "oracle rho");
    c.near(reports.at(RankConversion::Reversed).tau, 1.0, 1e-9, "oracle tau");
    c.near(reports.at(RankConversion::Reversed).r_s, 1.0, 1e-9, "oracle r_s");

    const RunResult anti = run_zero_shot(corpus, make_anti_oracle_backend(corpus));
    const auto anti_reports = battery_map(anti.scores, corpus);
    c.near(anti_reports.at(RankConversion::Reversed).tau, -1.0, 1e-9, "anti-oracle tau");

    const double secs = elapsed_s(start);
    c.require(secs < 30.0, "runtime " + std::to_string(secs) + "s exceeds 30s");
}

void criterion_4_null_calibration(Checker& c) {
    const ValidatedCorpus& corpus = full_fixture();
    const RunResult a = run_zero_shot(corpus, make_noisy_backend(corpus, 42, 1.0));
    const auto reports = battery_map(a.scores, corpus);
    const double tau = reports.at(RankConversion::Reversed).tau;
    c.require(std::fabs(tau) < 0.05, "random-score |tau| = " + std::to_string(std::fabs(tau)));

    const RunResult b = run_zero_shot(corpus, make_noisy_backend(corpus, 42, 1.0));
    c.require(a.scores.size() == b.scores.size(), "rerun size mismatch");
    for (std::size_t i = 0; i < a.scores.size() && c.ok; ++i) {
        c.require(a.scores[i].caption_id == b.scores[i].caption_id &&
                      a.scores[i].score == b.scores[i].score,
                  "seeded rerun diverged at index " + std::to_string(i));
    }
}

void criterion_5_corpus_filtering(Checker& c) {
    const ValidatedCorpus& corpus = full_fixture();
    const ErrorCensus census = error_census(corpus);
    c.require(census.image_extraction == 102, "image count " + std::to_string(census.image_extraction));
    c.require(census.text_extraction == 242, "text count " + std::to_string(census.text_extraction));
    c.require(census.not_line_chart == 101, "line-chart count " + std::to_string(census.not_line_chart));
    c.require(census.compound_figure == 23, "compound count " + std::to_string(census.compound_figure));
    c.require(census.any_error == 441, "union " + std::to_string(census.any_error));
    c.require(corpus.valid_caption_ids().size() == 3159,
              "valid " + std::to_string(corpus.valid_caption_ids().size()));
}

void criterion_6_parse_suite(Checker& c) {
    int fallbacks = 0;
    for (const auto& pc : parse_cases()) {
        const ScoreParse r = parse_score(pc.text);
        c.require(r.score == pc.score && r.status == pc.status,
                  "'" + pc.text.substr(0, 40) + "' parsed (" + std::to_string(r.score) + ")");
        if (pc.status == ParseStatus::Fallback) {
            ++fallbacks;
            c.require(r.score == 1, "fallback fixture must score 1");
        }
    }
    c.require(parse_cases().size() == 20, "suite must hold 20 fixtures");
    c.require(fallbacks >= 3, "suite must include unparseable fixtures");
}

void criterion_7_cot_arithmetic(Checker& c) {
    FigureRecord fig;
    fig.figure_id = "fig-cot";
    fig.domain = Domain::CL;
    fig.figure_index_label = "Figure 1";
    for (CaptionSource src : kAllCaptionSources) {
        CaptionCandidate cap;
        cap.caption_id = "cap-" + std::string(to_string(src));
        cap.figure_id = fig.figure_id;
        cap.source = src;
        cap.text = "text";
        fig.captions.push_back(cap);
    }
    const CaptionCandidate& cap = fig.captions[0];

    std::vector<double> fractions, bands;
    for (int m = 1; m <= 5; ++m) {
        for (int k = 0; k <= m; ++k) {
            QuestionSet qs;
            qs.caption_or_figure_id = fig.figure_id;
            qs.style = QuestionStyle::YesNo;
            std::string answer;
            for (int i = 0; i < m; ++i) {
                qs.questions.push_back("Q?");
                answer += std::to_string(i + 1) + ". " + (i < k ? "Yes" : "No") + "\n";
            }
            JudgeClient client(std::make_shared<ScriptedBackend>(std::map<std::string, std::string>{
                                   {make_request_tag(cap.caption_id, "cot-yn", "a"), answer}}),
                               {});
            const JudgeScore s = answer_questions(fig, cap, qs, client);
            const double expected_fraction = static_cast<double>(k) / m;
            c.require(s.fraction.has_value() && *s.fraction == expected_fraction,
                      "fraction for " + std::to_string(k) + "/" + std::to_string(m));
            c.require(s.score == 1.0 + 5.0 * expected_fraction,
                      "band for " + std::to_string(k) + "/" + std::to_string(m));
            fractions.push_back(*s.fraction);
            bands.push_back(s.score);
        }
    }
    const PairedSeries s = PairedSeries::from_vectors(fractions, bands);
    c.near(spearman(s), 1.0, 1e-12, "rank correlation of fraction vs band");
    c.near(kendall_tau_b(s), 1.0, 1e-12, "tau of fraction vs band");
}

void criterion_8_ablation_mechanics(Checker& c) {
    const ValidatedCorpus corpus = make_reference_fixture({.figures_per_domain = 10, .empty_mention_fraction = 0.0});
    const std::vector<ContextMode> modes = {ContextMode::all(), ContextMode::first(), ContextMode::random(4),
                                            ContextMode::caption_only()};

    const auto run_modes = [&](std::shared_ptr<JudgeBackend> backend) {
        std::map<std::string, std::map<std::string, double>> by_mode;
        for (const auto& mode : modes) {
            JudgeClient client(backend, {});
            StrategySpec spec;
            spec.kind = StrategyKind::ZeroShot;
            spec.context = mode;
            for (const auto& s : run_strategy(corpus, spec, client).scores)
                by_mode[std::string(mode.id())][s.caption_id] = s.score;
        }
        return by_mode;
    };

    const auto paired = [&](const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
        std::vector<double> va, vb;
        for (const auto& [id, score] : a) {
            va.push_back(score);
            vb.push_back(b.at(id));
        }
        return paired_t_test(va, vb);
    };

    const auto oracle = run_modes(make_oracle_backend(corpus));
    for (const char* mode : {"all", "first", "random"}) {
        const TTestResult t = paired(oracle.at(mode), oracle.at("caption"));
        c.require(t.t == 0.0 && t.p == 1.0, std::string("oracle ") + mode + " vs caption not (0, 1)");
    }

    const auto probe = run_modes(make_context_probe_backend(5));
    for (const char* mode : {"all", "first", "random"}) {
        const TTestResult t = paired(probe.at(mode), probe.at("caption"));
        c.require(!t.zero_variance, std::string("probe ") + mode + ": differences degenerate");
        c.require(t.p < 0.001, std::string("probe ") + mode + " p = " + std::to_string(t.p));
    }
}

void criterion_9_determinism(Checker& c) {
    TempDir dir;
    const ValidatedCorpus corpus = make_reference_fixture({.figures_per_domain = 8});
    const auto corpus_path = dir / "corpus.jsonl";
    {
        std::ofstream out(corpus_path, std::ios::binary);
        out << corpus.serialize_jsonl();
    }

    nlohmann::json table;
    int k = 0;
    for (const auto* cap : corpus.valid_captions())
        table[make_request_tag(cap->caption_id, "zs", "rate")] = "Rating: " + std::to_string(1 + (k++ % 6));
    const auto script = dir / "script.json";
    {
        std::ofstream out(script, std::ios::binary);
        out << table.dump();
    }

    const auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    const auto quiet_cli = [](const std::vector<std::string>& args) {
        std::ostringstream sink;
        std::streambuf* old = std::cout.rdbuf(sink.rdbuf());
        const int code = run_cli(args);
        std::cout.rdbuf(old);
        return code;
    };

    for (const char* id : {"r1", "r2"}) {
        const int code = quiet_cli({"judge", "--corpus", corpus_path.string(), "--backend", "scripted", "--script",
                                    script.string(), "--out", (dir / "runs").string(), "--run-id", id});
        c.require(code == 0, std::string("judge run ") + id + " failed");
    }
    if (!c.ok)
        return;
    c.require(slurp(dir / "runs" / "r1" / "scores.jsonl") == slurp(dir / "runs" / "r2" / "scores.jsonl"),
              "score files differ between identical runs");

    for (const char* rep : {"rep1", "rep2"}) {
        const int code = quiet_cli({"analyze", "--corpus", corpus_path.string(), "--scores",
                                    (dir / "runs" / "r1" / "scores.jsonl").string(), "--out", (dir / rep).string()});
        c.require(code == 0, std::string("analyze ") + rep + " failed");
    }
    if (!c.ok)
        return;
    c.require(slurp(dir / "rep1" / "report.csv") == slurp(dir / "rep2" / "report.csv"), "CSV reports differ");
    c.require(slurp(dir / "rep1" / "report.md") == slurp(dir / "rep2" / "report.md"), "markdown reports differ");
}

void criterion_10_label_derivation(Checker& c) {
    const ValidatedCorpus& corpus = full_fixture();

    // PhD mode: exactly 3 Yes / 3 No per fully valid figure; rank rule exact
    const auto labels = derive_labels(corpus, LabelSource::PhdRankings);
    std::map<std::string, std::pair<int, int>> per_figure;
    for (const auto& label : labels) {
        auto& [yes, no] = per_figure[corpus.figure_of_caption(label.caption_id)->figure_id];
        (label.helpful ? yes : no)++;
        const int rank = *corpus.phd_rank(label.caption_id);
        c.require(label.helpful == (rank <= 3), "rank rule broken for " + label.caption_id);
    }
    for (const auto& [figure_id, counts] : per_figure) {
        const auto& fig = *corpus.find_figure(figure_id);
        int valid = 0;
        for (const auto& cap : fig.captions)
            valid += corpus.is_valid(cap.caption_id) ? 1 : 0;
        if (valid == 6)
            c.require(counts.first == 3 && counts.second == 3, "figure " + figure_id + " not 3/3");
    }

    // Undergrad mode: Unsure maps to No
    const auto ug = derive_labels(corpus, LabelSource::UndergradRatings);
    for (const auto& label : ug) {
        const auto* rating = corpus.primary_rating(label.caption_id);
        c.require(label.helpful == (rating->helpfulness == Helpfulness::Yes),
                  "undergrad rule broken for " + label.caption_id);
        if (rating->helpfulness == Helpfulness::Unsure)
            c.require(!label.helpful, "Unsure mapped to Yes for " + label.caption_id);
    }
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<void(Checker&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "statistical oracle equivalence (1000 seeded series, 1e-12, <10s)", criterion_1_oracle_equivalence},
        {2, "hand-computed anchors (1e-12)", criterion_2_hand_anchors},
        {3, "oracle end-to-end on the 3,159-caption fixture (1e-9, <30s)", criterion_3_oracle_end_to_end},
        {4, "null calibration: seeded random scores, |tau| < 0.05, deterministic", criterion_4_null_calibration},
        {5, "corpus filtering: 102/242/101/23, union 441, 3159 valid (exact)", criterion_5_corpus_filtering},
        {6, "parse suite: 20 hand-verified fixtures (exact)", criterion_6_parse_suite},
        {7, "CoT arithmetic: fraction k/m, band 1+5k/m, rank-equivalent (exact)", criterion_7_cot_arithmetic},
        {8, "ablation mechanics: oracle t=0 p=1; context probe p < 0.001", criterion_8_ablation_mechanics},
        {9, "determinism: byte-identical score files and reports", criterion_9_determinism},
        {10, "label derivation: 3 Yes / 3 No per figure, Unsure -> No (exact)", criterion_10_label_derivation},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Checker checker;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.fn(checker);
        } catch (const std::exception& e) {
            checker.ok = false;
            checker.detail = std::string("exception: ") + e.what();
        }
        const double secs = elapsed_s(start);
        if (checker.ok) {
            std::printf("[PASS] %2d. %s (%.2fs)\n", criterion.id, criterion.title, secs);
        } else {
            std::printf("[FAIL] %2d. %s: %s\n", criterion.id, criterion.title, checker.detail.c_str());
            ++failures;
        }
    }
    if (failures > 0)
        std::printf("%d criterion(s) failing\n", failures);
    return failures == 0 ? 0 : 1;
}
