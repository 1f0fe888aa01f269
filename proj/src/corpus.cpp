#include "figjudge/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "figjudge/digest.hpp"
#include "figjudge/rng.hpp"

namespace figjudge {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Domain d) {
    switch (d) {
    case Domain::CV: return "CV";
    case Domain::CL: return "CL";
    case Domain::HC: return "HC";
    }
    return "CV";
}

std::string_view to_string(CaptionSource s) {
    switch (s) {
    case CaptionSource::Author: return "author";
    case CaptionSource::PegasusP: return "pegasus_p";
    case CaptionSource::PegasusPO: return "pegasus_po";
    case CaptionSource::PegasusO: return "pegasus_o";
    case CaptionSource::TrOCR: return "trocr";
    case CaptionSource::Template: return "template";
    }
    return "author";
}

std::string_view to_string(Helpfulness h) {
    switch (h) {
    case Helpfulness::Yes: return "yes";
    case Helpfulness::No: return "no";
    case Helpfulness::Unsure: return "unsure";
    }
    return "unsure";
}

std::string_view domain_prompt_name(Domain d) {
    switch (d) {
    case Domain::CV: return "Computer Vision";
    case Domain::CL: return "Natural Language Processing";
    case Domain::HC: return "Human-Computer Interaction";
    }
    return "Computer Vision";
}

Domain domain_from_string(std::string_view s) {
    for (Domain d : kAllDomains)
        if (s == to_string(d))
            return d;
    throw Error(ErrorCode::MalformedRecord, "unknown domain '" + std::string(s) + "'");
}

CaptionSource caption_source_from_string(std::string_view s) {
    for (CaptionSource src : kAllCaptionSources)
        if (s == to_string(src))
            return src;
    throw Error(ErrorCode::MalformedRecord, "unknown caption source '" + std::string(s) + "'");
}

Helpfulness helpfulness_from_string(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "yes")
        return Helpfulness::Yes;
    if (lower == "no")
        return Helpfulness::No;
    if (lower == "unsure")
        return Helpfulness::Unsure;
    throw Error(ErrorCode::MalformedRecord, "unknown helpfulness value '" + std::string(s) + "'");
}

const CaptionCandidate& FigureRecord::caption(CaptionSource s) const {
    for (const auto& c : captions)
        if (c.source == s)
            return c;
    throw Error(ErrorCode::MissingCaptionSource,
                "figure '" + figure_id + "' has no caption from source '" + std::string(to_string(s)) + "'");
}

int PhdRanking::rank_of(CaptionSource s) const {
    auto it = ranking.find(s);
    if (it == ranking.end())
        throw Error(ErrorCode::MissingCaptionSource,
                    "ranking for figure '" + figure_id + "' lacks source '" + std::string(to_string(s)) + "'");
    return it->second;
}

// ---------------------------------------------------------------------------
// ValidatedCorpus
// ---------------------------------------------------------------------------

ValidatedCorpus ValidatedCorpus::build(std::vector<FigureRecord> figures, std::vector<PhdRanking> rankings,
                                       std::vector<UndergradRating> ratings, std::vector<std::string> warnings) {
    ValidatedCorpus c;
    c.figures_ = std::move(figures);
    c.rankings_ = std::move(rankings);
    c.ratings_ = std::move(ratings);
    c.warnings_ = std::move(warnings);

    std::sort(c.figures_.begin(), c.figures_.end(),
              [](const FigureRecord& a, const FigureRecord& b) { return a.figure_id < b.figure_id; });
    std::sort(c.rankings_.begin(), c.rankings_.end(), [](const PhdRanking& a, const PhdRanking& b) {
        return std::tie(a.figure_id, a.annotator_id) < std::tie(b.figure_id, b.annotator_id);
    });
    std::sort(c.ratings_.begin(), c.ratings_.end(), [](const UndergradRating& a, const UndergradRating& b) {
        return std::tie(a.caption_id, a.annotator_id) < std::tie(b.caption_id, b.annotator_id);
    });

    for (std::size_t fi = 0; fi < c.figures_.size(); ++fi) {
        FigureRecord& fig = c.figures_[fi];
        if (fig.figure_id.empty())
            throw Error(ErrorCode::MalformedRecord, "figure with empty figure_id");
        if (!c.figure_index_.emplace(fig.figure_id, fi).second)
            throw Error(ErrorCode::DuplicateId, "duplicate figure_id '" + fig.figure_id + "'");

        if (fig.captions.size() != kCaptionsPerFigure)
            throw Error(ErrorCode::MissingCaptionSource,
                        "figure '" + fig.figure_id + "' has " + std::to_string(fig.captions.size()) +
                            " captions, expected 6");
        std::sort(fig.captions.begin(), fig.captions.end(),
                  [](const CaptionCandidate& a, const CaptionCandidate& b) {
                      return static_cast<int>(a.source) < static_cast<int>(b.source);
                  });
        for (std::size_t ci = 0; ci < fig.captions.size(); ++ci) {
            CaptionCandidate& cap = fig.captions[ci];
            if (cap.figure_id.empty())
                cap.figure_id = fig.figure_id;
            if (cap.figure_id != fig.figure_id)
                throw Error(ErrorCode::MalformedRecord, "caption '" + cap.caption_id +
                                                            "' declares figure_id '" + cap.figure_id +
                                                            "' inside figure '" + fig.figure_id + "'");
            if (cap.source != kAllCaptionSources[ci]) // after sort: a hole implies a duplicate elsewhere
                throw Error(ErrorCode::DuplicateId, "figure '" + fig.figure_id + "' has duplicate caption source '" +
                                                        std::string(to_string(cap.source)) + "'");
            if (cap.caption_id.empty())
                throw Error(ErrorCode::MalformedRecord, "caption with empty caption_id in figure '" + fig.figure_id + "'");
            if (cap.text.empty())
                throw Error(ErrorCode::MalformedRecord, "caption '" + cap.caption_id + "' has empty text");
            if (!c.captions_by_id_.emplace(cap.caption_id, std::make_pair(fi, ci)).second)
                throw Error(ErrorCode::DuplicateId, "duplicate caption_id '" + cap.caption_id + "'");
        }
    }

    std::set<std::pair<std::string, std::string>> ranking_keys;
    for (std::size_t ri = 0; ri < c.rankings_.size(); ++ri) {
        const PhdRanking& r = c.rankings_[ri];
        if (!c.figure_index_.count(r.figure_id))
            throw Error(ErrorCode::MalformedRecord, "ranking references unknown figure '" + r.figure_id + "'");
        if (!ranking_keys.emplace(r.figure_id, r.annotator_id).second)
            throw Error(ErrorCode::DuplicateId,
                        "duplicate ranking for figure '" + r.figure_id + "' by annotator '" + r.annotator_id + "'");

        // bijection onto {1..6}: six sources, six distinct in-range ranks
        std::array<bool, kRankCount> seen{};
        if (r.ranking.size() != kAllCaptionSources.size())
            throw Error(ErrorCode::InvalidRankPermutation,
                        "ranking for figure '" + r.figure_id + "' covers " + std::to_string(r.ranking.size()) +
                            " sources, expected 6");
        for (const auto& [src, rank] : r.ranking) {
            if (rank < 1 || rank > kRankCount)
                throw Error(ErrorCode::InvalidRankPermutation, "ranking for figure '" + r.figure_id + "' has rank " +
                                                                   std::to_string(rank) + " outside [1,6]");
            if (seen[rank - 1])
                throw Error(ErrorCode::InvalidRankPermutation, "ranking for figure '" + r.figure_id +
                                                                   "' repeats rank " + std::to_string(rank));
            seen[rank - 1] = true;
        }
        c.primary_ranking_index_.emplace(r.figure_id, ri); // first in canonical order wins
    }

    std::set<std::pair<std::string, std::string>> rating_keys;
    for (std::size_t ui = 0; ui < c.ratings_.size(); ++ui) {
        const UndergradRating& u = c.ratings_[ui];
        if (!c.captions_by_id_.count(u.caption_id))
            throw Error(ErrorCode::MalformedRecord, "rating references unknown caption '" + u.caption_id + "'");
        if (!rating_keys.emplace(u.caption_id, u.annotator_id).second)
            throw Error(ErrorCode::DuplicateId,
                        "duplicate rating for caption '" + u.caption_id + "' by annotator '" + u.annotator_id + "'");
        c.primary_rating_index_.emplace(u.caption_id, ui);
    }

    for (const auto& [caption_id, idx] : c.captions_by_id_) {
        (void)idx;
        c.valid_caption_ids_.insert(caption_id);
    }
    for (const UndergradRating& u : c.ratings_)
        if (u.errors.any())
            c.valid_caption_ids_.erase(u.caption_id);

    c.content_hash_ = sha256_hex(c.serialize_jsonl());
    return c;
}

const FigureRecord* ValidatedCorpus::find_figure(const std::string& figure_id) const {
    auto it = figure_index_.find(figure_id);
    return it == figure_index_.end() ? nullptr : &figures_[it->second];
}

const CaptionCandidate* ValidatedCorpus::find_caption(const std::string& caption_id) const {
    auto it = captions_by_id_.find(caption_id);
    return it == captions_by_id_.end() ? nullptr : &figures_[it->second.first].captions[it->second.second];
}

const FigureRecord* ValidatedCorpus::figure_of_caption(const std::string& caption_id) const {
    auto it = captions_by_id_.find(caption_id);
    return it == captions_by_id_.end() ? nullptr : &figures_[it->second.first];
}

const PhdRanking* ValidatedCorpus::primary_ranking(const std::string& figure_id) const {
    auto it = primary_ranking_index_.find(figure_id);
    return it == primary_ranking_index_.end() ? nullptr : &rankings_[it->second];
}

const UndergradRating* ValidatedCorpus::primary_rating(const std::string& caption_id) const {
    auto it = primary_rating_index_.find(caption_id);
    return it == primary_rating_index_.end() ? nullptr : &ratings_[it->second];
}

std::vector<const PhdRanking*> ValidatedCorpus::all_rankings_of(const std::string& figure_id) const {
    std::vector<const PhdRanking*> out;
    for (const auto& r : rankings_)
        if (r.figure_id == figure_id)
            out.push_back(&r);
    return out;
}

std::optional<int> ValidatedCorpus::phd_rank(const std::string& caption_id) const {
    const CaptionCandidate* cap = find_caption(caption_id);
    if (!cap)
        return std::nullopt;
    const PhdRanking* r = primary_ranking(cap->figure_id);
    if (!r)
        return std::nullopt;
    return r->rank_of(cap->source);
}

std::optional<int> ValidatedCorpus::reversed_rank(const std::string& caption_id) const {
    auto k = phd_rank(caption_id);
    if (!k)
        return std::nullopt;
    return 7 - *k;
}

std::vector<const CaptionCandidate*> ValidatedCorpus::valid_captions() const {
    std::vector<const CaptionCandidate*> out;
    out.reserve(valid_caption_ids_.size());
    for (const auto& fig : figures_)
        for (const auto& cap : fig.captions)
            if (is_valid(cap.caption_id))
                out.push_back(&cap);
    return out;
}

std::string ValidatedCorpus::serialize_jsonl() const {
    std::string out;
    for (const auto& fig : figures_) {
        ordered_json j;
        j["kind"] = "figure";
        j["figure_id"] = fig.figure_id;
        j["domain"] = to_string(fig.domain);
        j["figure_index_label"] = fig.figure_index_label;
        j["mentions"] = fig.mentions;
        ordered_json caps = ordered_json::array();
        for (const auto& cap : fig.captions) {
            ordered_json cj;
            cj["caption_id"] = cap.caption_id;
            cj["source"] = to_string(cap.source);
            cj["text"] = cap.text;
            caps.push_back(std::move(cj));
        }
        j["captions"] = std::move(caps);
        out += j.dump();
        out += '\n';
    }
    for (const auto& r : rankings_) {
        ordered_json j;
        j["kind"] = "phd_ranking";
        j["figure_id"] = r.figure_id;
        j["annotator_id"] = r.annotator_id;
        ordered_json rj;
        for (CaptionSource s : kAllCaptionSources)
            rj[std::string(to_string(s))] = r.ranking.at(s);
        j["ranking"] = std::move(rj);
        out += j.dump();
        out += '\n';
    }
    for (const auto& u : ratings_) {
        ordered_json j;
        j["kind"] = "undergrad_rating";
        j["caption_id"] = u.caption_id;
        j["annotator_id"] = u.annotator_id;
        j["helpfulness"] = to_string(u.helpfulness);
        j["features"] = {{"ocr", u.features.ocr},
                         {"visual", u.features.visual},
                         {"stats", u.features.stats},
                         {"relation", u.features.relation},
                         {"takeaway", u.features.takeaway}};
        j["errors"] = {{"image_extraction", u.errors.image_extraction},
                       {"text_extraction", u.errors.text_extraction},
                       {"not_line_chart", u.errors.not_line_chart},
                       {"compound_figure", u.errors.compound_figure}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

bool ValidatedCorpus::operator==(const ValidatedCorpus& other) const {
    return figures_ == other.figures_ && rankings_ == other.rankings_ && ratings_ == other.ratings_;
}

// ---------------------------------------------------------------------------
// JSONL parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& reason) {
    throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line) + ": " + reason);
}

const json& require_field(const json& j, const char* name, std::size_t line) {
    auto it = j.find(name);
    if (it == j.end())
        malformed(line, std::string("missing field '") + name + "'");
    return *it;
}

std::string require_string(const json& j, const char* name, std::size_t line) {
    const json& f = require_field(j, name, line);
    if (!f.is_string())
        malformed(line, std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
}

bool require_bool(const json& j, const char* name, std::size_t line) {
    const json& f = require_field(j, name, line);
    if (!f.is_boolean())
        malformed(line, std::string("field '") + name + "' must be a boolean");
    return f.get<bool>();
}

void warn_unknown_fields(const json& j, std::initializer_list<const char*> known, std::size_t line,
                         const char* kind, std::vector<std::string>& warnings) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool found = false;
        for (const char* k : known)
            if (it.key() == k)
                found = true;
        if (!found)
            warnings.push_back("line " + std::to_string(line) + ": ignoring unknown field '" + it.key() + "' in " +
                               kind + " record");
    }
}

FigureRecord parse_figure(const json& j, std::size_t line, std::vector<std::string>& warnings) {
    warn_unknown_fields(j, {"kind", "figure_id", "domain", "figure_index_label", "mentions", "captions"}, line,
                        "figure", warnings);
    FigureRecord fig;
    fig.figure_id = require_string(j, "figure_id", line);
    try {
        fig.domain = domain_from_string(require_string(j, "domain", line));
    } catch (const Error& e) {
        malformed(line, e.what());
    }
    fig.figure_index_label = require_string(j, "figure_index_label", line);

    const json& mentions = require_field(j, "mentions", line);
    if (!mentions.is_array())
        malformed(line, "field 'mentions' must be an array");
    for (const auto& m : mentions) {
        if (!m.is_string())
            malformed(line, "mentions must contain strings");
        fig.mentions.push_back(m.get<std::string>());
    }

    const json& captions = require_field(j, "captions", line);
    if (!captions.is_array())
        malformed(line, "field 'captions' must be an array");
    for (const auto& cj : captions) {
        if (!cj.is_object())
            malformed(line, "captions must contain objects");
        warn_unknown_fields(cj, {"caption_id", "figure_id", "source", "text"}, line, "caption", warnings);
        CaptionCandidate cap;
        cap.caption_id = require_string(cj, "caption_id", line);
        cap.figure_id = cj.contains("figure_id") ? require_string(cj, "figure_id", line) : fig.figure_id;
        try {
            cap.source = caption_source_from_string(require_string(cj, "source", line));
        } catch (const Error& e) {
            malformed(line, e.what());
        }
        cap.text = require_string(cj, "text", line);
        fig.captions.push_back(std::move(cap));
    }
    return fig;
}

PhdRanking parse_ranking(const json& j, std::size_t line, std::vector<std::string>& warnings) {
    warn_unknown_fields(j, {"kind", "figure_id", "annotator_id", "ranking"}, line, "phd_ranking", warnings);
    PhdRanking r;
    r.figure_id = require_string(j, "figure_id", line);
    r.annotator_id = require_string(j, "annotator_id", line);
    const json& rj = require_field(j, "ranking", line);
    if (!rj.is_object())
        malformed(line, "field 'ranking' must be an object");
    for (auto it = rj.begin(); it != rj.end(); ++it) {
        CaptionSource src;
        try {
            src = caption_source_from_string(it.key());
        } catch (const Error& e) {
            malformed(line, e.what());
        }
        if (!it.value().is_number_integer())
            malformed(line, "rank for '" + it.key() + "' must be an integer");
        r.ranking[src] = it.value().get<int>();
    }
    return r;
}

UndergradRating parse_rating(const json& j, std::size_t line, std::vector<std::string>& warnings) {
    warn_unknown_fields(j, {"kind", "caption_id", "annotator_id", "helpfulness", "features", "errors"}, line,
                        "undergrad_rating", warnings);
    UndergradRating u;
    u.caption_id = require_string(j, "caption_id", line);
    u.annotator_id = require_string(j, "annotator_id", line);
    try {
        u.helpfulness = helpfulness_from_string(require_string(j, "helpfulness", line));
    } catch (const Error& e) {
        malformed(line, e.what());
    }

    const json& fj = require_field(j, "features", line);
    if (!fj.is_object())
        malformed(line, "field 'features' must be an object");
    warn_unknown_fields(fj, {"ocr", "visual", "stats", "relation", "takeaway"}, line, "features", warnings);
    u.features.ocr = require_bool(fj, "ocr", line);
    u.features.visual = require_bool(fj, "visual", line);
    u.features.stats = require_bool(fj, "stats", line);
    u.features.relation = require_bool(fj, "relation", line);
    u.features.takeaway = require_bool(fj, "takeaway", line);

    const json& ej = require_field(j, "errors", line);
    if (!ej.is_object())
        malformed(line, "field 'errors' must be an object");
    warn_unknown_fields(ej, {"image_extraction", "text_extraction", "not_line_chart", "compound_figure"}, line,
                        "errors", warnings);
    u.errors.image_extraction = require_bool(ej, "image_extraction", line);
    u.errors.text_extraction = require_bool(ej, "text_extraction", line);
    u.errors.not_line_chart = require_bool(ej, "not_line_chart", line);
    u.errors.compound_figure = require_bool(ej, "compound_figure", line);
    return u;
}

} // namespace

ValidatedCorpus parse_corpus_jsonl(std::string_view text) {
    std::vector<FigureRecord> figures;
    std::vector<PhdRanking> rankings;
    std::vector<UndergradRating> ratings;
    std::vector<std::string> warnings;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;

        const auto ws = line.find_first_not_of(" \t\r");
        if (ws == std::string_view::npos)
            continue; // blank line
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            malformed(line_no, std::string("invalid JSON (") + e.what() + ")");
        }
        if (!j.is_object())
            malformed(line_no, "record must be a JSON object");
        const std::string kind = require_string(j, "kind", line_no);
        if (kind == "figure")
            figures.push_back(parse_figure(j, line_no, warnings));
        else if (kind == "phd_ranking")
            rankings.push_back(parse_ranking(j, line_no, warnings));
        else if (kind == "undergrad_rating")
            ratings.push_back(parse_rating(j, line_no, warnings));
        else
            malformed(line_no, "unknown kind '" + kind + "'");
        if (pos > text.size())
            break;
    }

    return ValidatedCorpus::build(std::move(figures), std::move(rankings), std::move(ratings), std::move(warnings));
}

ValidatedCorpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::MalformedRecord, "cannot open corpus file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus_jsonl(buf.str());
}

// ---------------------------------------------------------------------------
// Census, labels, splits
// ---------------------------------------------------------------------------

ErrorCensus error_census(const ValidatedCorpus& corpus) {
    std::set<std::string> image, txt, nlc, compound, any;
    for (const auto& u : corpus.undergrad_ratings()) {
        if (u.errors.image_extraction)
            image.insert(u.caption_id);
        if (u.errors.text_extraction)
            txt.insert(u.caption_id);
        if (u.errors.not_line_chart)
            nlc.insert(u.caption_id);
        if (u.errors.compound_figure)
            compound.insert(u.caption_id);
        if (u.errors.any())
            any.insert(u.caption_id);
    }
    ErrorCensus c;
    c.image_extraction = static_cast<int>(image.size());
    c.text_extraction = static_cast<int>(txt.size());
    c.not_line_chart = static_cast<int>(nlc.size());
    c.compound_figure = static_cast<int>(compound.size());
    c.any_error = static_cast<int>(any.size());
    return c;
}

std::vector<CaptionLabel> derive_labels(const ValidatedCorpus& corpus, LabelSource source) {
    std::vector<CaptionLabel> labels;
    for (const CaptionCandidate* cap : corpus.valid_captions()) {
        if (source == LabelSource::PhdRankings) {
            auto rank = corpus.phd_rank(cap->caption_id);
            if (!rank)
                throw Error(ErrorCode::MissingAnnotation,
                            "valid caption '" + cap->caption_id + "' has no PhD ranking");
            labels.push_back({cap->caption_id, *rank <= 3});
        } else {
            const UndergradRating* rating = corpus.primary_rating(cap->caption_id);
            if (!rating)
                throw Error(ErrorCode::MissingAnnotation,
                            "valid caption '" + cap->caption_id + "' has no undergrad rating");
            labels.push_back({cap->caption_id, rating->helpfulness == Helpfulness::Yes});
        }
    }
    return labels;
}

std::array<std::vector<CaptionLabel>, 3> split_labels(const ValidatedCorpus& corpus,
                                                      const std::vector<CaptionLabel>& labels, SplitRatios ratios,
                                                      std::uint64_t seed) {
    if (labels.empty())
        throw Error(ErrorCode::EmptyLabelSet, "no labels to split");

    // distinct figure groups in first-appearance order
    std::vector<std::string> group_ids;
    std::map<std::string, int> group_of_figure;
    for (const auto& label : labels) {
        const FigureRecord* fig = corpus.figure_of_caption(label.caption_id);
        if (!fig)
            throw Error(ErrorCode::MalformedRecord, "label references unknown caption '" + label.caption_id + "'");
        if (group_of_figure.emplace(fig->figure_id, 0).second)
            group_ids.push_back(fig->figure_id);
    }

    SplitMix64 rng(seed);
    seeded_shuffle(group_ids, rng);

    const auto n = static_cast<double>(group_ids.size());
    const auto train_end = static_cast<std::size_t>(std::llround(ratios.train * n));
    const auto val_end = static_cast<std::size_t>(std::llround((ratios.train + ratios.validation) * n));
    for (std::size_t i = 0; i < group_ids.size(); ++i)
        group_of_figure[group_ids[i]] = i < train_end ? 0 : (i < val_end ? 1 : 2);

    std::array<std::vector<CaptionLabel>, 3> out;
    for (const auto& label : labels) {
        const FigureRecord* fig = corpus.figure_of_caption(label.caption_id);
        out[group_of_figure[fig->figure_id]].push_back(label);
    }
    return out;
}

SplitFiles export_split(const ValidatedCorpus& corpus, const std::vector<CaptionLabel>& labels,
                        const std::filesystem::path& out_dir, SplitRatios ratios, std::uint64_t seed) {
    const auto splits = split_labels(corpus, labels, ratios, seed);
    std::filesystem::create_directories(out_dir);

    SplitFiles files{out_dir / "train.csv", out_dir / "validation.csv", out_dir / "test.csv"};
    const std::filesystem::path* paths[3] = {&files.train, &files.validation, &files.test};
    for (int i = 0; i < 3; ++i) {
        std::ofstream out(*paths[i], std::ios::binary);
        out << "caption_id,label\n";
        for (const auto& label : splits[i])
            out << label.caption_id << ',' << (label.helpful ? "Yes" : "No") << '\n';
    }
    return files;
}

} // namespace figjudge
