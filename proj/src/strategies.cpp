#include "figjudge/strategies.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "figjudge/rng.hpp"
#include "figjudge/timefmt.hpp"

namespace figjudge {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view strategy_id(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::ZeroShot: return "zs";
    case StrategyKind::FewShot: return "fs";
    case StrategyKind::CoTQA: return "cot-qa";
    case StrategyKind::CoTQAYN: return "cot-yn";
    }
    return "zs";
}

StrategyKind strategy_from_id(std::string_view id) {
    if (id == "zs")
        return StrategyKind::ZeroShot;
    if (id == "fs")
        return StrategyKind::FewShot;
    if (id == "cot-qa")
        return StrategyKind::CoTQA;
    if (id == "cot-yn")
        return StrategyKind::CoTQAYN;
    throw Error(ErrorCode::InvalidConfig, "unknown strategy id '" + std::string(id) + "'");
}

std::string_view ContextMode::id() const {
    switch (kind) {
    case Kind::All: return "all";
    case Kind::First: return "first";
    case Kind::Random: return "random";
    case Kind::CaptionOnly: return "caption";
    }
    return "all";
}

ContextMode context_mode_from_id(std::string_view id, std::uint64_t seed) {
    if (id == "all")
        return ContextMode::all();
    if (id == "first")
        return ContextMode::first();
    if (id == "random")
        return ContextMode::random(seed);
    if (id == "caption")
        return ContextMode::caption_only();
    throw Error(ErrorCode::InvalidConfig, "unknown context mode '" + std::string(id) + "'");
}

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kZeroShotTemplate =
    "Given the paragraphs and caption below, please rate the level of usefulness of the caption from 1 to 6 "
    "based on how well the caption could help readers understand the important information. 6 is the highest; "
    "1 is the lowest. Please also explain your rating. Paragraphs: [PARAGRAPHS]. Caption: [CAPTION]";

constexpr std::string_view kFewShotTemplate =
    "Given the paragraph and caption below, please rate the level of usefulness of the caption from 1 to 6 "
    "based on how well the caption could help readers understand the important information. 6 is the highest; "
    "1 is the lowest. Please also explain your rating. The following are 3 examples of high-quality captions: "
    "{Best-1}, {Best-2}, {Best-3}. The following are 3 examples of low-quality captions: {Worst-1}, {Worst-2}, "
    "{Worst-3}. Paragraphs: [PARAGRAPHS]. Caption: [CAPTION]";

constexpr std::string_view kOpenQuestionTemplate =
    "The following are paragraphs from a paper that mentioned {figure-index}. Based on these paragraphs, "
    "please generate at most {max-questions} questions that the caption of {figure-index} should be able to "
    "answer. These questions quite be interesting and useful to the readers of the paper, who are mostly "
    "researchers in {domain} and AI.";

constexpr std::string_view kYesNoQuestionTemplate =
    "The following are paragraphs from a paper that mentioned {figure-index}. Based on these paragraphs, "
    "please generate at most {max-questions} yes or no questions that the caption of {figure-index} should be "
    "able to answer. These questions quite be interesting and useful to the readers of the paper, who are "
    "mostly researchers in {domain} and AI.";

constexpr std::string_view kAnswerTemplate =
    "The following is the caption of {figure-index}. Does this caption answer each question? Please answer "
    "Yes or No one by one and explain why or why not. Do not repeat the question.";

// Single pass over the template: replacements are emitted verbatim and never
// rescanned, so placeholder-looking text inside values stays literal.
std::string render_template(std::string_view tmpl,
                            const std::vector<std::pair<std::string_view, std::string_view>>& slots) {
    std::string out;
    out.reserve(tmpl.size() + 256);
    std::size_t i = 0;
    while (i < tmpl.size()) {
        bool replaced = false;
        for (const auto& [placeholder, value] : slots) {
            if (tmpl.compare(i, placeholder.size(), placeholder) == 0) {
                out.append(value);
                i += placeholder.size();
                replaced = true;
                break;
            }
        }
        if (!replaced)
            out.push_back(tmpl[i++]);
    }
    return out;
}

std::string number_word(int n) {
    static constexpr std::string_view words[] = {"zero", "one", "two",   "three", "four", "five",
                                                 "six",  "seven", "eight", "nine",  "ten"};
    if (n >= 0 && n <= 10)
        return std::string(words[n]);
    return std::to_string(n);
}

JudgeRequest single_user_request(std::string prompt) {
    JudgeRequest req;
    req.messages.push_back({Role::User, std::move(prompt)});
    return req;
}

} // namespace

std::string_view zero_shot_template() { return kZeroShotTemplate; }
std::string_view few_shot_template() { return kFewShotTemplate; }
std::string_view question_template(QuestionStyle style) {
    return style == QuestionStyle::Open ? kOpenQuestionTemplate : kYesNoQuestionTemplate;
}
std::string_view answer_template() { return kAnswerTemplate; }

// ---------------------------------------------------------------------------
// Context and prompts
// ---------------------------------------------------------------------------

ContextResult assemble_context(const FigureRecord& figure, const ContextMode& mode) {
    if (mode.kind == ContextMode::Kind::CaptionOnly)
        return {"", false};
    if (figure.mentions.empty())
        return {"", true};

    switch (mode.kind) {
    case ContextMode::Kind::All: {
        std::string joined;
        for (std::size_t i = 0; i < figure.mentions.size(); ++i) {
            if (i > 0)
                joined += "\n\n";
            joined += figure.mentions[i];
        }
        return {std::move(joined), false};
    }
    case ContextMode::Kind::First:
        return {figure.mentions.front(), false};
    case ContextMode::Kind::Random: {
        SplitMix64 rng(mix_seed(mode.seed, figure.figure_id));
        return {figure.mentions[static_cast<std::size_t>(rng.bounded(figure.mentions.size()))], false};
    }
    case ContextMode::Kind::CaptionOnly:
        break;
    }
    return {"", false};
}

JudgeRequest build_zero_shot(const std::string& context, const std::string& caption) {
    if (caption.empty())
        throw Error(ErrorCode::EmptyCaption, "cannot rate an empty caption");
    return single_user_request(
        render_template(kZeroShotTemplate, {{"[PARAGRAPHS]", context}, {"[CAPTION]", caption}}));
}

ExemplarSet select_exemplars(const ValidatedCorpus& corpus, Domain domain, const std::string& exclude_figure,
                             std::uint64_t seed) {
    std::vector<std::string> best_pool, worst_pool;
    for (const auto& fig : corpus.figures()) {
        if (fig.domain != domain || fig.figure_id == exclude_figure)
            continue;
        const PhdRanking* r = corpus.primary_ranking(fig.figure_id);
        if (!r)
            continue;
        for (CaptionSource src : kAllCaptionSources) {
            const int rank = r->rank_of(src);
            if (rank == 1)
                best_pool.push_back(fig.caption(src).text);
            else if (rank == kRankCount)
                worst_pool.push_back(fig.caption(src).text);
        }
    }
    if (best_pool.size() < 3 || worst_pool.size() < 3)
        throw Error(ErrorCode::InsufficientExemplars,
                    "domain " + std::string(to_string(domain)) + " has " + std::to_string(best_pool.size()) +
                        " rank-1 and " + std::to_string(worst_pool.size()) + " rank-6 captions outside figure '" +
                        exclude_figure + "', need 3 of each");

    SplitMix64 rng(mix_seed(seed, exclude_figure + "|" + std::string(to_string(domain))));
    const auto best = sample_without_replacement(best_pool, 3, rng);
    const auto worst = sample_without_replacement(worst_pool, 3, rng);

    ExemplarSet set;
    std::copy_n(best.begin(), 3, set.best.begin());
    std::copy_n(worst.begin(), 3, set.worst.begin());
    return set;
}

JudgeRequest build_few_shot(const std::string& context, const std::string& caption, const ExemplarSet& exemplars) {
    if (caption.empty())
        throw Error(ErrorCode::EmptyCaption, "cannot rate an empty caption");
    return single_user_request(render_template(kFewShotTemplate, {
                                                                     {"{Best-1}", exemplars.best[0]},
                                                                     {"{Best-2}", exemplars.best[1]},
                                                                     {"{Best-3}", exemplars.best[2]},
                                                                     {"{Worst-1}", exemplars.worst[0]},
                                                                     {"{Worst-2}", exemplars.worst[1]},
                                                                     {"{Worst-3}", exemplars.worst[2]},
                                                                     {"[PARAGRAPHS]", context},
                                                                     {"[CAPTION]", caption},
                                                                 }));
}

JudgeRequest build_question_prompt(const FigureRecord& figure, const std::string& context, QuestionStyle style,
                                   int max_questions) {
    if (max_questions < 1)
        throw Error(ErrorCode::InvalidConfig, "max_questions must be >= 1");
    const std::string count = number_word(max_questions);
    std::string prompt = render_template(question_template(style), {
                                                                       {"{figure-index}", figure.figure_index_label},
                                                                       {"{max-questions}", count},
                                                                       {"{domain}", domain_prompt_name(figure.domain)},
                                                                   });
    prompt += "\n\nParagraphs: ";
    prompt += context;
    return single_user_request(std::move(prompt));
}

JudgeRequest build_answer_prompt(const FigureRecord& figure, const CaptionCandidate& caption,
                                 const QuestionSet& questions) {
    if (caption.text.empty())
        throw Error(ErrorCode::EmptyCaption, "cannot rate an empty caption");
    std::string prompt = render_template(kAnswerTemplate, {{"{figure-index}", figure.figure_index_label}});
    prompt += "\n\nCaption: ";
    prompt += caption.text;
    prompt += "\n\nQuestions:";
    for (std::size_t i = 0; i < questions.questions.size(); ++i) {
        prompt += "\n";
        prompt += std::to_string(i + 1);
        prompt += ". ";
        prompt += questions.questions[i];
    }
    return single_user_request(std::move(prompt));
}

std::vector<std::string> parse_questions(std::string_view raw_text, int max_questions) {
    std::vector<std::string> questions;
    std::size_t pos = 0;
    while (pos <= raw_text.size() && static_cast<int>(questions.size()) < max_questions) {
        std::size_t end = raw_text.find('\n', pos);
        if (end == std::string_view::npos)
            end = raw_text.size();
        std::string_view line = raw_text.substr(pos, end - pos);
        pos = end + 1;

        // trim
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
            line.remove_prefix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.remove_suffix(1);
        if (line.empty())
            continue;

        bool marked = false;
        std::string_view body = line;
        if (std::isdigit(static_cast<unsigned char>(line.front()))) {
            std::size_t i = 0;
            while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
                ++i;
            if (i < line.size() && (line[i] == '.' || line[i] == ')' || line[i] == ':')) {
                body = line.substr(i + 1);
                marked = true;
            }
        } else if (line.front() == '-' || line.front() == '*' ||
                   line.compare(0, 3, "\xe2\x80\xa2") == 0 /* bullet */) {
            body = line.substr(line.front() == '-' || line.front() == '*' ? 1 : 3);
            marked = true;
        }

        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front())))
            body.remove_prefix(1);
        while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
            body.remove_suffix(1);

        if (body.empty())
            continue;
        if (marked || body.back() == '?')
            questions.emplace_back(body);

        if (pos > raw_text.size())
            break;
    }
    return questions;
}

// ---------------------------------------------------------------------------
// CoT phases
// ---------------------------------------------------------------------------

namespace {

std::string_view cot_strategy_id(QuestionStyle style) {
    return style == QuestionStyle::Open ? "cot-qa" : "cot-yn";
}

} // namespace

QuestionSet generate_questions(const FigureRecord& figure, const std::string& context, QuestionStyle style,
                               int max_questions, JudgeClient& client) {
    JudgeRequest req = build_question_prompt(figure, context, style, max_questions);
    req.tag = make_request_tag(figure.figure_id, cot_strategy_id(style), "q");
    const JudgeResponse resp = client.submit(req);

    QuestionSet set;
    set.caption_or_figure_id = figure.figure_id;
    set.style = style;
    set.questions = parse_questions(resp.raw_text, max_questions);
    if (set.questions.empty())
        throw Error(ErrorCode::NoQuestionsParsed,
                    "no questions parsed from response for figure '" + figure.figure_id + "'");
    return set;
}

JudgeScore answer_questions(const FigureRecord& figure, const CaptionCandidate& caption, const QuestionSet& questions,
                            JudgeClient& client) {
    JudgeRequest req = build_answer_prompt(figure, caption, questions);
    req.tag = make_request_tag(caption.caption_id, cot_strategy_id(questions.style), "a");
    const JudgeResponse resp = client.submit(req);

    const YesNoParse parsed = parse_yesno(resp.raw_text, static_cast<int>(questions.questions.size()));
    int yes = 0;
    for (bool v : parsed.verdicts)
        yes += v ? 1 : 0;
    const double fraction = static_cast<double>(yes) / static_cast<double>(questions.questions.size());

    JudgeScore score;
    score.caption_id = caption.caption_id;
    score.strategy_id = std::string(cot_strategy_id(questions.style));
    score.backend_id = client.backend_id();
    score.fraction = fraction;
    score.score = 1.0 + 5.0 * fraction;
    // zero explicit verdicts leaves every answer No, so the band is exactly 1
    score.parse_status = parsed.matched > 0 ? ParseStatus::Parsed : ParseStatus::Fallback;
    score.raw = resp;
    return score;
}

JudgeScore run_cot(const FigureRecord& figure, const CaptionCandidate& caption, JudgeClient& client,
                   QuestionStyle style, const ContextMode& context, int max_questions) {
    const ContextResult ctx = assemble_context(figure, context);
    const QuestionSet questions = generate_questions(figure, ctx.text, style, max_questions, client);
    return answer_questions(figure, caption, questions, client);
}

// ---------------------------------------------------------------------------
// run_strategy
// ---------------------------------------------------------------------------

namespace {

// Lazily computes one value per figure; concurrent callers of the same figure
// share a single computation.
template <typename T>
class PerFigureMemo {
  public:
    template <typename Fn>
    T get(const std::string& figure_id, Fn&& compute) {
        std::shared_future<T> future;
        bool owner = false;
        {
            std::lock_guard lock(mutex_);
            auto it = futures_.find(figure_id);
            if (it == futures_.end()) {
                std::promise<T> promise;
                future = promise.get_future().share();
                futures_.emplace(figure_id, future);
                promises_.emplace(figure_id, std::move(promise));
                owner = true;
            } else {
                future = it->second;
            }
        }
        if (owner) {
            std::promise<T> promise;
            {
                std::lock_guard lock(mutex_);
                promise = std::move(promises_.at(figure_id));
                promises_.erase(figure_id);
            }
            try {
                promise.set_value(compute());
            } catch (...) {
                promise.set_exception(std::current_exception());
            }
        }
        return future.get();
    }

  private:
    std::mutex mutex_;
    std::map<std::string, std::shared_future<T>> futures_;
    std::map<std::string, std::promise<T>> promises_;
};

} // namespace

RunResult run_strategy(const ValidatedCorpus& corpus, const StrategySpec& spec, JudgeClient& client,
                       int parallelism) {
    const auto started = std::chrono::steady_clock::now();
    const std::int64_t calls_before = client.backend_calls();
    const std::int64_t hits_before = client.cache_hits();

    const std::vector<const CaptionCandidate*> captions = corpus.valid_captions();
    const std::string sid(strategy_id(spec.kind));

    PerFigureMemo<QuestionSet> question_memo;
    PerFigureMemo<ExemplarSet> exemplar_memo;

    struct Slot {
        std::optional<JudgeScore> score;
        std::optional<std::string> error;
        ErrorCode code = ErrorCode::BackendRefused;
    };
    std::vector<Slot> slots(captions.size());

    auto evaluate = [&](std::size_t i) {
        const CaptionCandidate& cap = *captions[i];
        const FigureRecord& figure = *corpus.figure_of_caption(cap.caption_id);
        Slot& slot = slots[i];
        try {
            const ContextResult ctx = assemble_context(figure, spec.context);
            switch (spec.kind) {
            case StrategyKind::ZeroShot: {
                JudgeRequest req = build_zero_shot(ctx.text, cap.text);
                req.tag = make_request_tag(cap.caption_id, sid, "rate");
                const JudgeResponse resp = client.submit(req);
                const ScoreParse parsed = parse_score(resp.raw_text);
                slot.score = JudgeScore{cap.caption_id, sid,    client.backend_id(),
                                        static_cast<double>(parsed.score), parsed.status, std::nullopt, resp};
                break;
            }
            case StrategyKind::FewShot: {
                const ExemplarSet exemplars = exemplar_memo.get(figure.figure_id, [&] {
                    return select_exemplars(corpus, figure.domain, figure.figure_id, spec.exemplar_seed);
                });
                JudgeRequest req = build_few_shot(ctx.text, cap.text, exemplars);
                req.tag = make_request_tag(cap.caption_id, sid, "rate");
                const JudgeResponse resp = client.submit(req);
                const ScoreParse parsed = parse_score(resp.raw_text);
                slot.score = JudgeScore{cap.caption_id, sid,    client.backend_id(),
                                        static_cast<double>(parsed.score), parsed.status, std::nullopt, resp};
                break;
            }
            case StrategyKind::CoTQA:
            case StrategyKind::CoTQAYN: {
                const QuestionStyle style =
                    spec.kind == StrategyKind::CoTQA ? QuestionStyle::Open : QuestionStyle::YesNo;
                const QuestionSet questions = question_memo.get(figure.figure_id, [&] {
                    return generate_questions(figure, ctx.text, style, spec.max_questions, client);
                });
                slot.score = answer_questions(figure, cap, questions, client);
                break;
            }
            }
        } catch (const Error& e) {
            slot.error = e.what();
            slot.code = e.code();
            if (e.code() == ErrorCode::NoQuestionsParsed) {
                // parse failure: lowest score, run keeps its cardinality
                JudgeScore fallback;
                fallback.caption_id = cap.caption_id;
                fallback.strategy_id = sid;
                fallback.backend_id = client.backend_id();
                fallback.score = 1.0;
                fallback.parse_status = ParseStatus::Fallback;
                fallback.raw.backend_id = client.backend_id();
                slot.score = fallback;
            }
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
    };

    if (parallelism <= 1) {
        for (std::size_t i = 0; i < captions.size(); ++i)
            evaluate(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        const int n_workers = std::min<int>(parallelism, static_cast<int>(captions.size()));
        workers.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= captions.size())
                        return;
                    evaluate(i);
                }
            });
        }
        for (auto& t : workers)
            t.join();
    }

    RunResult result;
    result.manifest.spec = spec;
    result.manifest.backend_id = client.backend_id();
    result.manifest.corpus_hash = corpus.content_hash();

    // one NoMentions flag per figure, canonical order
    if (spec.context.kind != ContextMode::Kind::CaptionOnly) {
        for (const auto& fig : corpus.figures()) {
            if (!fig.mentions.empty())
                continue;
            const bool has_valid = std::any_of(fig.captions.begin(), fig.captions.end(), [&](const auto& c) {
                return corpus.is_valid(c.caption_id);
            });
            if (has_valid)
                result.manifest.no_mentions_figures.push_back(fig.figure_id);
        }
    }

    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].error)
            result.manifest.failures.push_back({captions[i]->caption_id, *slots[i].error, slots[i].code});
        if (slots[i].score)
            result.scores.push_back(std::move(*slots[i].score));
    }
    result.manifest.n_scores = static_cast<int>(result.scores.size());
    result.manifest.timestamp = iso8601_utc_now();
    result.manifest.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();
    result.manifest.backend_calls = client.backend_calls() - calls_before;
    result.manifest.cache_hits = client.cache_hits() - hits_before;
    return result;
}

// ---------------------------------------------------------------------------
// Scores file
// ---------------------------------------------------------------------------

namespace {

ordered_json stable_manifest_json(const RunManifest& m) {
    ordered_json j;
    j["kind"] = "manifest";
    j["format"] = "figjudge-scores-v1";
    j["strategy"] = std::string(strategy_id(m.spec.kind));
    j["context"] = std::string(m.spec.context.id());
    j["context_seed"] = m.spec.context.seed;
    j["exemplar_seed"] = m.spec.exemplar_seed;
    j["max_questions"] = m.spec.max_questions;
    j["backend_id"] = m.backend_id;
    j["corpus_hash"] = m.corpus_hash;
    j["n_scores"] = m.n_scores;
    j["no_mentions_figures"] = m.no_mentions_figures;
    ordered_json failures = ordered_json::array();
    for (const auto& f : m.failures)
        failures.push_back({{"caption_id", f.caption_id}, {"error", f.error}});
    j["failures"] = std::move(failures);
    return j;
}

} // namespace

std::string render_scores_jsonl(const RunResult& result) {
    std::string out = stable_manifest_json(result.manifest).dump();
    out += '\n';
    for (const auto& s : result.scores) {
        ordered_json j;
        j["kind"] = "score";
        j["caption_id"] = s.caption_id;
        j["strategy_id"] = s.strategy_id;
        j["backend_id"] = s.backend_id;
        j["score"] = s.score;
        j["parse_status"] = std::string(to_string(s.parse_status));
        if (s.fraction)
            j["fraction"] = *s.fraction;
        j["raw_text"] = s.raw.raw_text;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string render_run_json(const RunResult& result) {
    ordered_json j = stable_manifest_json(result.manifest);
    j["kind"] = "run";
    j["timestamp"] = result.manifest.timestamp;
    j["wall_ms"] = result.manifest.wall_ms;
    j["backend_calls"] = result.manifest.backend_calls;
    j["cache_hits"] = result.manifest.cache_hits;
    return j.dump(2) + "\n";
}

std::pair<ScoresHeader, std::vector<JudgeScore>> load_scores_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MalformedRecord, "cannot open scores file '" + path.string() + "'");

    ScoresHeader header;
    std::vector<JudgeScore> scores;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(ErrorCode::MalformedRecord,
                        "scores line " + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
        }
        const std::string kind = j.value("kind", "");
        if (kind == "manifest") {
            header.strategy_id = j.value("strategy", "");
            header.context_id = j.value("context", "");
            header.backend_id = j.value("backend_id", "");
            header.corpus_hash = j.value("corpus_hash", "");
            header.n_scores = j.value("n_scores", 0);
        } else if (kind == "score") {
            JudgeScore s;
            s.caption_id = j.value("caption_id", "");
            s.strategy_id = j.value("strategy_id", "");
            s.backend_id = j.value("backend_id", "");
            s.score = j.value("score", 1.0);
            s.parse_status = j.value("parse_status", "fallback") == "parsed" ? ParseStatus::Parsed
                                                                             : ParseStatus::Fallback;
            if (j.contains("fraction"))
                s.fraction = j["fraction"].get<double>();
            s.raw.raw_text = j.value("raw_text", "");
            s.raw.backend_id = s.backend_id;
            scores.push_back(std::move(s));
        } else {
            throw Error(ErrorCode::MalformedRecord,
                        "scores line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");
        }
    }
    return {header, std::move(scores)};
}

} // namespace figjudge
