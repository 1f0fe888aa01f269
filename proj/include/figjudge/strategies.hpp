#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "figjudge/corpus.hpp"
#include "figjudge/judge.hpp"

namespace figjudge {

enum class StrategyKind { ZeroShot, FewShot, CoTQA, CoTQAYN };

// Stable ids used in CLI flags, score files and reports.
std::string_view strategy_id(StrategyKind kind); // "zs", "fs", "cot-qa", "cot-yn"
StrategyKind strategy_from_id(std::string_view id);

struct ContextMode {
    enum class Kind { All, First, Random, CaptionOnly };

    Kind kind = Kind::All;
    std::uint64_t seed = 0; // Random only

    static ContextMode all() { return {Kind::All, 0}; }
    static ContextMode first() { return {Kind::First, 0}; }
    static ContextMode random(std::uint64_t seed) { return {Kind::Random, seed}; }
    static ContextMode caption_only() { return {Kind::CaptionOnly, 0}; }

    std::string_view id() const; // "all", "first", "random", "caption"
    bool operator==(const ContextMode&) const = default;
};

ContextMode context_mode_from_id(std::string_view id, std::uint64_t seed);

struct StrategySpec {
    StrategyKind kind = StrategyKind::ZeroShot;
    ContextMode context = ContextMode::all();
    std::uint64_t exemplar_seed = 0; // FewShot only
    int max_questions = 5;           // CoT only
};

struct ContextResult {
    std::string text;
    bool no_mentions = false; // warning marker, carried into the run manifest
};

// All: mentions joined in document order by blank lines; First: the first
// mention; Random: one seeded draw, deterministic per (seed, figure_id);
// CaptionOnly: empty. Empty mention lists yield empty text plus the flag.
ContextResult assemble_context(const FigureRecord& figure, const ContextMode& mode);

JudgeRequest build_zero_shot(const std::string& context, const std::string& caption);

struct ExemplarSet {
    std::array<std::string, 3> best;  // drawn from rank-1 captions
    std::array<std::string, 3> worst; // drawn from rank-6 captions
};

// Seeded draw without replacement from the rank-1 / rank-6 pools of the given
// domain, never selecting captions of exclude_figure.
ExemplarSet select_exemplars(const ValidatedCorpus& corpus, Domain domain, const std::string& exclude_figure,
                             std::uint64_t seed);

JudgeRequest build_few_shot(const std::string& context, const std::string& caption, const ExemplarSet& exemplars);

enum class QuestionStyle { Open, YesNo };

struct QuestionSet {
    std::string caption_or_figure_id;
    std::vector<std::string> questions; // 1..max_questions
    QuestionStyle style = QuestionStyle::Open;
};

JudgeRequest build_question_prompt(const FigureRecord& figure, const std::string& context, QuestionStyle style,
                                   int max_questions);
JudgeRequest build_answer_prompt(const FigureRecord& figure, const CaptionCandidate& caption,
                                 const QuestionSet& questions);

// Numbered lines, bulleted lines, or lines ending in "?", capped at
// max_questions, document order.
std::vector<std::string> parse_questions(std::string_view raw_text, int max_questions);

// CoT phase 1; throws NoQuestionsParsed when nothing usable comes back.
QuestionSet generate_questions(const FigureRecord& figure, const std::string& context, QuestionStyle style,
                               int max_questions, JudgeClient& client);
// CoT phase 2: score = yes fraction, stored as the 1 + 5*fraction band with
// the raw fraction alongside.
JudgeScore answer_questions(const FigureRecord& figure, const CaptionCandidate& caption, const QuestionSet& questions,
                            JudgeClient& client);

JudgeScore run_cot(const FigureRecord& figure, const CaptionCandidate& caption, JudgeClient& client,
                   QuestionStyle style, const ContextMode& context, int max_questions = 5);

struct CaptionFailure {
    std::string caption_id;
    std::string error;
    ErrorCode code = ErrorCode::BackendRefused;
};

struct RunManifest {
    StrategySpec spec;
    std::string backend_id;
    std::string corpus_hash;
    int n_scores = 0;
    std::vector<std::string> no_mentions_figures;
    std::vector<CaptionFailure> failures;
    // volatile diagnostics: reported in run.json, never in the scores file
    std::string timestamp;
    std::int64_t wall_ms = 0;
    std::int64_t backend_calls = 0;
    std::int64_t cache_hits = 0;
};

struct RunResult {
    std::vector<JudgeScore> scores; // canonical caption order
    RunManifest manifest;
};

// Evaluates every valid caption exactly once. Parse-level per-caption
// failures become (1, Fallback) scores plus a manifest entry; transport
// failures are recorded and skipped so they never masquerade as low scores.
RunResult run_strategy(const ValidatedCorpus& corpus, const StrategySpec& spec, JudgeClient& client,
                       int parallelism = 1);

struct ScoresHeader {
    std::string strategy_id;
    std::string context_id;
    std::string backend_id;
    std::string corpus_hash;
    int n_scores = 0;
};

// Scores file: one manifest header line, then one JudgeScore per line. Only
// run-stable fields are serialized, so identical runs are byte-identical.
std::string render_scores_jsonl(const RunResult& result);
std::pair<ScoresHeader, std::vector<JudgeScore>> load_scores_jsonl(const std::filesystem::path& path);

// Full manifest (including timestamp and transport diagnostics) for run.json.
std::string render_run_json(const RunResult& result);

// Prompt templates, placeholders included; substitution is single-pass.
std::string_view zero_shot_template();
std::string_view few_shot_template();
std::string_view question_template(QuestionStyle style);
std::string_view answer_template();

} // namespace figjudge
