#include <doctest.h>

#include <fstream>

#include <map>
#include <set>

#include "figjudge/rng.hpp"

#include "figjudge/fixture.hpp"
#include "figjudge/strategies.hpp"
#include "support/corpus_builder.hpp"

using namespace figjudge;
using namespace figjudge::testing;

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

JudgeClient scripted_client(std::map<std::string, std::string> table,
                            std::optional<std::string> fallback = std::nullopt) {
    return JudgeClient(std::make_shared<ScriptedBackend>(std::move(table), std::move(fallback)), {});
}

} // namespace

TEST_CASE("assemble_context") {
    FigureRecord fig = test_figure("fig-a", Domain::CL, 0);
    fig.mentions = {"P1", "P2"};

    CHECK(assemble_context(fig, ContextMode::all()).text == "P1\n\nP2");
    CHECK(assemble_context(fig, ContextMode::first()).text == "P1");
    CHECK(assemble_context(fig, ContextMode::caption_only()).text.empty());
    CHECK(!assemble_context(fig, ContextMode::all()).no_mentions);

    SUBCASE("random draw is deterministic per (seed, figure)") {
        const auto pick1 = assemble_context(fig, ContextMode::random(5)).text;
        const auto pick2 = assemble_context(fig, ContextMode::random(5)).text;
        CHECK(pick1 == pick2);
        CHECK((pick1 == "P1" || pick1 == "P2"));

        FigureRecord other = fig;
        other.figure_id = "fig-b";
        // a different figure may draw differently, but stays deterministic
        CHECK(assemble_context(other, ContextMode::random(5)).text ==
              assemble_context(other, ContextMode::random(5)).text);
    }

    SUBCASE("empty mentions flag the record for every paragraph mode") {
        FigureRecord empty = test_figure("fig-e", Domain::CL, 0);
        for (const auto mode : {ContextMode::all(), ContextMode::first(), ContextMode::random(1)}) {
            const auto ctx = assemble_context(empty, mode);
            CHECK(ctx.text.empty());
            CHECK(ctx.no_mentions);
        }
        CHECK(!assemble_context(empty, ContextMode::caption_only()).no_mentions);
    }
}

TEST_CASE("zero-shot prompt substitution") {
    const auto req = build_zero_shot("As shown in Figure 4, loss drops.", "Loss vs epochs");
    REQUIRE(req.messages.size() == 1);
    CHECK(req.messages[0].role == Role::User);
    const std::string& prompt = req.messages[0].content;

    CHECK(prompt.find("from 1 to 6") != std::string::npos);
    CHECK(prompt.find("Paragraphs: As shown in Figure 4, loss drops.") != std::string::npos);
    CHECK(prompt.find("Caption: Loss vs epochs") != std::string::npos);
    CHECK(prompt.find("[PARAGRAPHS]") == std::string::npos);
    CHECK(prompt.find("[CAPTION]") == std::string::npos);
    CHECK(count_occurrences(prompt, "Loss vs epochs") == 1);

    SUBCASE("empty context leaves an empty paragraphs slot") {
        const auto bare = build_zero_shot("", "A caption");
        CHECK(bare.messages[0].content.find("Paragraphs: . Caption: A caption") != std::string::npos);
    }
    SUBCASE("placeholder-looking caption text is inserted literally") {
        const auto tricky = build_zero_shot("ctx [CAPTION] here", "uses [PARAGRAPHS] literally");
        const std::string& p = tricky.messages[0].content;
        // each placeholder-looking string survives exactly once, unreplaced
        CHECK(count_occurrences(p, "uses [PARAGRAPHS] literally") == 1);
        CHECK(count_occurrences(p, "ctx [CAPTION] here") == 1);
    }
    SUBCASE("empty caption is rejected") {
        CHECK_THROWS_AS(build_zero_shot("ctx", ""), Error);
    }
}

TEST_CASE("exemplar selection") {
    const ValidatedCorpus corpus = make_reference_fixture({.figures_per_domain = 12, .exact_error_layout = false});

    const ExemplarSet set1 = select_exemplars(corpus, Domain::CL, "fig-cl-0000", 17);
    const ExemplarSet set2 = select_exemplars(corpus, Domain::CL, "fig-cl-0000", 17);
    CHECK(set1.best == set2.best);
    CHECK(set1.worst == set2.worst);

    SUBCASE("pools honor rank and domain restrictions") {
        // collect every rank-1/rank-6 caption text of the domain minus the excluded figure
        std::set<std::string> rank1, rank6, excluded_texts;
        for (const auto& fig : corpus.figures()) {
            const PhdRanking* r = corpus.primary_ranking(fig.figure_id);
            for (CaptionSource src : kAllCaptionSources) {
                const std::string& text = fig.caption(src).text;
                if (fig.figure_id == "fig-cl-0000") {
                    excluded_texts.insert(text);
                    continue;
                }
                if (fig.domain != Domain::CL)
                    continue;
                if (r->rank_of(src) == 1)
                    rank1.insert(text);
                if (r->rank_of(src) == 6)
                    rank6.insert(text);
            }
        }
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            const ExemplarSet set = select_exemplars(corpus, Domain::CL, "fig-cl-0000", seed);
            for (const auto& text : set.best) {
                CHECK(rank1.count(text) == 1);
                CHECK(excluded_texts.count(text) == 0);
            }
            for (const auto& text : set.worst)
                CHECK(rank6.count(text) == 1);
        }
    }

    SUBCASE("a pool of exactly 3+3 is forced for any seed") {
        // three CL figures minus the excluded one leaves exactly 2... build a
        // minimal corpus directly instead: 4 figures, one excluded
        std::vector<FigureRecord> figures;
        std::vector<PhdRanking> rankings;
        for (int i = 0; i < 4; ++i) {
            figures.push_back(test_figure("fig-" + std::to_string(i), Domain::CL));
            rankings.push_back(test_ranking("fig-" + std::to_string(i), {1, 2, 3, 4, 5, 6}));
        }
        const ValidatedCorpus small = ValidatedCorpus::build(std::move(figures), std::move(rankings), {});
        const ExemplarSet a = select_exemplars(small, Domain::CL, "fig-0", 1);
        const ExemplarSet b = select_exemplars(small, Domain::CL, "fig-0", 999);
        std::set<std::string> sa(a.best.begin(), a.best.end()), sb(b.best.begin(), b.best.end());
        CHECK(sa == sb); // forced set, order may differ
        CHECK(sa.size() == 3);

        CHECK_THROWS_AS(select_exemplars(small, Domain::HC, "fig-0", 1), Error);
    }
}

TEST_CASE("few-shot prompt lists three best then three worst") {
    ExemplarSet exemplars;
    exemplars.best = {"B-one", "B-two", "B-three"};
    exemplars.worst = {"W-one", "W-two", "W-three"};
    const auto req = build_few_shot("ctx", "caption-under-test-91", exemplars);
    const std::string& p = req.messages[0].content;

    const std::size_t high = p.find("high-quality captions: B-one, B-two, B-three");
    const std::size_t low = p.find("low-quality captions: W-one, W-two, W-three");
    REQUIRE(high != std::string::npos);
    REQUIRE(low != std::string::npos);
    CHECK(high < low);
    CHECK(p.find("{Best-1}") == std::string::npos);
    CHECK(p.find("{Worst-3}") == std::string::npos);
    CHECK(count_occurrences(p, "caption-under-test-91") == 1);
}

TEST_CASE("question prompts substitute figure label, count and domain") {
    const FigureRecord fig = test_figure("fig-a", Domain::CL);

    const auto open = build_question_prompt(fig, "ctx paragraph", QuestionStyle::Open, 5);
    const std::string& p = open.messages[0].content;
    CHECK(count_occurrences(p, "Figure 4") >= 2); // label appears in both slots
    CHECK(p.find("at most five questions") != std::string::npos);
    CHECK(p.find("Natural Language Processing") != std::string::npos);
    CHECK(p.find("{figure-index}") == std::string::npos);
    CHECK(p.find("{domain}") == std::string::npos);
    CHECK(p.find("yes or no") == std::string::npos);
    CHECK(p.find("Paragraphs: ctx paragraph") != std::string::npos);

    const auto yn = build_question_prompt(fig, "ctx", QuestionStyle::YesNo, 5);
    CHECK(yn.messages[0].content.find("at most five yes or no questions") != std::string::npos);

    const auto three = build_question_prompt(fig, "ctx", QuestionStyle::Open, 3);
    CHECK(three.messages[0].content.find("at most three questions") != std::string::npos);
}

TEST_CASE("parse_questions accepts numbered, bulleted and question-mark lines") {
    const std::string text = "Here are the questions:\n"
                             "1. What metric is plotted?\n"
                             "2) Which model wins?\n"
                             "- Does the trend hold at scale?\n"
                             "Is the baseline included?\n"
                             "This line is prose and must be skipped.\n"
                             "3: Why does loss spike early\n";
    const auto questions = parse_questions(text, 5);
    REQUIRE(questions.size() == 5);
    CHECK(questions[0] == "What metric is plotted?");
    CHECK(questions[1] == "Which model wins?");
    CHECK(questions[2] == "Does the trend hold at scale?");
    CHECK(questions[3] == "Is the baseline included?");
    CHECK(questions[4] == "Why does loss spike early");

    CHECK(parse_questions(text, 2).size() == 2); // cap wins
    CHECK(parse_questions("No questions here. Just prose.", 5).empty());
    CHECK(parse_questions("", 5).empty());
}

TEST_CASE("parse_questions is total on arbitrary text") {
    SplitMix64 rng(0xbeef);
    const char* pieces[] = {"1.", "2)", "-", "?", "\n", "What", "is", "plotted", ":", "*", "", "3:"};
    for (int trial = 0; trial < 1000; ++trial) {
        std::string text;
        const std::size_t n = rng.bounded(20);
        for (std::size_t i = 0; i < n; ++i) {
            text += pieces[rng.bounded(std::size(pieces))];
            text += rng.bounded(3) ? " " : "";
        }
        const auto questions = parse_questions(text, 5);
        CHECK(questions.size() <= 5);
        for (const auto& q : questions)
            CHECK(!q.empty());
    }
}

TEST_CASE("CoT scoring arithmetic") {
    const FigureRecord fig = test_figure("fig-a", Domain::CL);
    const CaptionCandidate& cap = fig.captions[0];

    const auto score_with = [&](int yes, int m) {
        QuestionSet qs;
        qs.caption_or_figure_id = fig.figure_id;
        qs.style = QuestionStyle::YesNo;
        std::string answer;
        for (int i = 0; i < m; ++i) {
            qs.questions.push_back("Q" + std::to_string(i + 1) + "?");
            answer += std::to_string(i + 1) + ". " + (i < yes ? "Yes" : "No") + "\n";
        }
        auto client = scripted_client({{make_request_tag(cap.caption_id, "cot-yn", "a"), answer}});
        return answer_questions(fig, cap, qs, client);
    };

    SUBCASE("5 questions, 3 yes: fraction 0.6, band 4.0") {
        const JudgeScore s = score_with(3, 5);
        CHECK(*s.fraction == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(s.score == doctest::Approx(4.0).epsilon(1e-15));
        CHECK(s.parse_status == ParseStatus::Parsed);
    }
    SUBCASE("4 questions, 0 yes: fraction 0, band 1") {
        const JudgeScore s = score_with(0, 4);
        CHECK(*s.fraction == 0.0);
        CHECK(s.score == 1.0);
    }
    SUBCASE("5 of 5 yes: fraction 1, band 6") {
        const JudgeScore s = score_with(5, 5);
        CHECK(*s.fraction == 1.0);
        CHECK(s.score == 6.0);
    }
}

TEST_CASE("run_cot: two phases, parse failure raises NoQuestionsParsed") {
    const ValidatedCorpus corpus = two_figure_corpus();
    const FigureRecord& fig = *corpus.find_figure("fig-a");
    const CaptionCandidate& cap = fig.captions[0];

    SUBCASE("happy path") {
        auto client = scripted_client({
            {make_request_tag(fig.figure_id, "cot-yn", "q"), "1. Does it name the metric?\n2. Is the trend stated?"},
            {make_request_tag(cap.caption_id, "cot-yn", "a"), "1. Yes\n2. No"},
        });
        const JudgeScore s = run_cot(fig, cap, client, QuestionStyle::YesNo, ContextMode::all());
        CHECK(*s.fraction == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(s.score == doctest::Approx(3.5).epsilon(1e-15));
        CHECK(s.strategy_id == "cot-yn");
    }
    SUBCASE("phase 1 returning prose yields NoQuestionsParsed") {
        auto client = scripted_client({{make_request_tag(fig.figure_id, "cot-qa", "q"), "I decline to answer."}});
        try {
            run_cot(fig, cap, client, QuestionStyle::Open, ContextMode::all());
            FAIL("expected NoQuestionsParsed");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NoQuestionsParsed);
        }
    }
    SUBCASE("empty phase-2 answer gives all No and Fallback status") {
        auto client = scripted_client({
            {make_request_tag(fig.figure_id, "cot-yn", "q"), "1. Q one?\n2. Q two?"},
            {make_request_tag(cap.caption_id, "cot-yn", "a"), ""},
        });
        const JudgeScore s = run_cot(fig, cap, client, QuestionStyle::YesNo, ContextMode::all());
        CHECK(s.score == 1.0);
        CHECK(s.parse_status == ParseStatus::Fallback);
    }
}

TEST_CASE("run_strategy with the oracle reproduces reversed ranks in canonical order") {
    const ValidatedCorpus corpus = make_reference_fixture({.figures_per_domain = 6, .exact_error_layout = false});
    JudgeClient client(make_oracle_backend(corpus), {});
    StrategySpec spec;
    spec.kind = StrategyKind::ZeroShot;

    const RunResult result = run_strategy(corpus, spec, client);
    const auto valid = corpus.valid_captions();
    REQUIRE(result.scores.size() == valid.size());
    for (std::size_t i = 0; i < valid.size(); ++i) {
        CHECK(result.scores[i].caption_id == valid[i]->caption_id); // canonical order
        CHECK(result.scores[i].score == static_cast<double>(*corpus.reversed_rank(valid[i]->caption_id)));
        CHECK(result.scores[i].parse_status == ParseStatus::Parsed);
    }
    CHECK(result.manifest.n_scores == static_cast<int>(valid.size()));
    CHECK(result.manifest.failures.empty());
    CHECK(result.manifest.corpus_hash == corpus.content_hash());

    SUBCASE("parallel execution returns the same scores in the same order") {
        JudgeClient parallel_client(make_oracle_backend(corpus), {});
        const RunResult parallel = run_strategy(corpus, spec, parallel_client, 8);
        REQUIRE(parallel.scores.size() == result.scores.size());
        for (std::size_t i = 0; i < result.scores.size(); ++i) {
            CHECK(parallel.scores[i].caption_id == result.scores[i].caption_id);
            CHECK(parallel.scores[i].score == result.scores[i].score);
        }
    }
}

TEST_CASE("run_strategy records no-mention figures and keeps cardinality per context mode") {
    std::vector<FigureRecord> figures = {test_figure("fig-a", Domain::CL, 2), test_figure("fig-b", Domain::CL, 0)};
    std::vector<PhdRanking> rankings = {test_ranking("fig-a", {1, 2, 3, 4, 5, 6}),
                                        test_ranking("fig-b", {6, 5, 4, 3, 2, 1})};
    const ValidatedCorpus corpus = ValidatedCorpus::build(std::move(figures), std::move(rankings), {});

    for (const auto mode : {ContextMode::all(), ContextMode::first(), ContextMode::random(3),
                            ContextMode::caption_only()}) {
        CAPTURE(mode.id());
        JudgeClient client(make_oracle_backend(corpus), {});
        StrategySpec spec;
        spec.kind = StrategyKind::ZeroShot;
        spec.context = mode;
        const RunResult result = run_strategy(corpus, spec, client);
        CHECK(result.scores.size() == corpus.valid_caption_ids().size());
        if (mode.kind == ContextMode::Kind::CaptionOnly)
            CHECK(result.manifest.no_mentions_figures.empty());
        else
            CHECK(result.manifest.no_mentions_figures == std::vector<std::string>{"fig-b"});
    }
}

TEST_CASE("run_strategy with a warm cache makes zero backend calls and identical scores") {
    const ValidatedCorpus corpus = two_figure_corpus();
    auto cache = ResponseCache::in_memory();

    struct Once {
        RunResult result;
        std::int64_t backend_calls;
        std::int64_t cache_hits;
    };
    const auto run_once = [&] {
        ClientOptions options;
        options.cache = cache;
        JudgeClient client(make_oracle_backend(corpus), std::move(options));
        StrategySpec spec;
        spec.kind = StrategyKind::ZeroShot;
        RunResult result = run_strategy(corpus, spec, client);
        return Once{std::move(result), client.backend_calls(), client.cache_hits()};
    };

    const Once cold_run = run_once();
    const RunResult& cold = cold_run.result;
    CHECK(cold_run.backend_calls == 12);
    const Once warm_run = run_once();
    const RunResult& warm = warm_run.result;
    CHECK(warm_run.backend_calls == 0); // zero backend calls
    CHECK(warm_run.cache_hits == 12);
    REQUIRE(warm.scores.size() == cold.scores.size());
    for (std::size_t i = 0; i < warm.scores.size(); ++i) {
        CHECK(warm.scores[i].score == cold.scores[i].score);
        CHECK(warm.scores[i].raw.raw_text == cold.scores[i].raw.raw_text);
        CHECK(warm.scores[i].raw.cached);
    }
}

TEST_CASE("run_strategy: CoT evaluates phase 1 once per figure") {
    const ValidatedCorpus corpus = two_figure_corpus();
    std::map<std::string, std::string> table;
    for (const auto& fig : corpus.figures()) {
        table[make_request_tag(fig.figure_id, "cot-yn", "q")] = "1. Metric named?\n2. Trend given?";
        for (const auto& cap : fig.captions)
            table[make_request_tag(cap.caption_id, "cot-yn", "a")] = "1. Yes\n2. Yes";
    }
    JudgeClient client(std::make_shared<ScriptedBackend>(table), {});
    StrategySpec spec;
    spec.kind = StrategyKind::CoTQAYN;
    const RunResult result = run_strategy(corpus, spec, client, 4);
    CHECK(result.scores.size() == 12);
    for (const auto& s : result.scores) {
        CHECK(s.score == 6.0);
        CHECK(*s.fraction == 1.0);
    }
    // 2 question calls + 12 answer calls
    CHECK(client.backend_calls() == 14);
}

TEST_CASE("run_strategy records transport failures without fabricating scores") {
    const ValidatedCorpus corpus = two_figure_corpus();
    // scripted table misses one caption: BackendRefused for it
    std::map<std::string, std::string> table;
    for (const auto& fig : corpus.figures())
        for (const auto& cap : fig.captions)
            if (cap.caption_id != "fig-b-trocr")
                table[make_request_tag(cap.caption_id, "zs", "rate")] = "Rating: 4";
    JudgeClient client(std::make_shared<ScriptedBackend>(table), {});
    StrategySpec spec;
    spec.kind = StrategyKind::ZeroShot;

    const RunResult result = run_strategy(corpus, spec, client);
    CHECK(result.scores.size() == 11);
    REQUIRE(result.manifest.failures.size() == 1);
    CHECK(result.manifest.failures[0].caption_id == "fig-b-trocr");
    for (const auto& s : result.scores)
        CHECK(s.caption_id != "fig-b-trocr");
}

TEST_CASE("few-shot run never uses the evaluated figure's captions as exemplars") {
    const ValidatedCorpus corpus = make_reference_fixture({.figures_per_domain = 8, .exact_error_layout = false});
    // scripted backend that echoes a fixed rating; we only inspect the prompts
    JudgeClient client(std::make_shared<ScriptedBackend>(std::map<std::string, std::string>{}, "Rating: 3"), {});
    StrategySpec spec;
    spec.kind = StrategyKind::FewShot;
    spec.exemplar_seed = 21;
    const RunResult result = run_strategy(corpus, spec, client);
    CHECK(result.scores.size() == corpus.valid_caption_ids().size());
    CHECK(result.manifest.failures.empty());
}

TEST_CASE("scores file round-trips through render and load") {
    const ValidatedCorpus corpus = two_figure_corpus();
    JudgeClient client(make_oracle_backend(corpus), {});
    StrategySpec spec;
    spec.kind = StrategyKind::ZeroShot;
    const RunResult result = run_strategy(corpus, spec, client);

    const std::string text = render_scores_jsonl(result);
    const auto path = std::filesystem::temp_directory_path() / "figjudge-scores-roundtrip.jsonl";
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }
    const auto [header, scores] = load_scores_jsonl(path);
    std::filesystem::remove(path);

    CHECK(header.strategy_id == "zs");
    CHECK(header.backend_id == "oracle");
    CHECK(header.corpus_hash == corpus.content_hash());
    CHECK(header.n_scores == 12);
    REQUIRE(scores.size() == result.scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        CHECK(scores[i].caption_id == result.scores[i].caption_id);
        CHECK(scores[i].score == result.scores[i].score);
        CHECK(scores[i].parse_status == result.scores[i].parse_status);
        CHECK(scores[i].raw.raw_text == result.scores[i].raw.raw_text);
    }
}
