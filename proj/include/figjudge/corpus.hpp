#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "figjudge/error.hpp"

namespace figjudge {

enum class Domain { CV, CL, HC };

inline constexpr std::array<Domain, 3> kAllDomains = {Domain::CV, Domain::CL, Domain::HC};

enum class CaptionSource { Author, PegasusP, PegasusPO, PegasusO, TrOCR, Template };

inline constexpr std::array<CaptionSource, 6> kAllCaptionSources = {
    CaptionSource::Author,   CaptionSource::PegasusP, CaptionSource::PegasusPO,
    CaptionSource::PegasusO, CaptionSource::TrOCR,    CaptionSource::Template,
};

inline constexpr int kCaptionsPerFigure = 6;
inline constexpr int kRankCount = 6;

std::string_view to_string(Domain d);
std::string_view to_string(CaptionSource s);
Domain domain_from_string(std::string_view s);
CaptionSource caption_source_from_string(std::string_view s);

// Long-form domain name used inside prompts ("researchers in {domain} and AI").
std::string_view domain_prompt_name(Domain d);

struct CaptionCandidate {
    std::string caption_id;
    std::string figure_id;
    CaptionSource source = CaptionSource::Author;
    std::string text;

    bool operator==(const CaptionCandidate&) const = default;
};

struct FigureRecord {
    std::string figure_id;
    Domain domain = Domain::CV;
    std::string figure_index_label;         // in-paper name, e.g. "Figure 4"
    std::vector<std::string> mentions;      // document order; empty is valid data
    std::vector<CaptionCandidate> captions; // exactly 6, held in source order

    const CaptionCandidate& caption(CaptionSource s) const;

    bool operator==(const FigureRecord&) const = default;
};

enum class Helpfulness { Yes, No, Unsure };

std::string_view to_string(Helpfulness h);
Helpfulness helpfulness_from_string(std::string_view s);

struct FeatureFlags {
    bool ocr = false;
    bool visual = false;
    bool stats = false;
    bool relation = false;
    bool takeaway = false;

    bool operator==(const FeatureFlags&) const = default;
};

struct ErrorFlags {
    bool image_extraction = false;
    bool text_extraction = false;
    bool not_line_chart = false;
    bool compound_figure = false;

    bool any() const { return image_extraction || text_extraction || not_line_chart || compound_figure; }
    bool operator==(const ErrorFlags&) const = default;
};

struct PhdRanking {
    std::string figure_id;
    std::string annotator_id;
    std::map<CaptionSource, int> ranking; // bijection onto {1..6}, 1 = best

    int rank_of(CaptionSource s) const;

    bool operator==(const PhdRanking&) const = default;
};

struct UndergradRating {
    std::string caption_id;
    std::string annotator_id;
    Helpfulness helpfulness = Helpfulness::Unsure;
    FeatureFlags features;
    ErrorFlags errors;

    bool operator==(const UndergradRating&) const = default;
};

// Immutable after construction; safe to share read-only across threads.
// Records are held in canonical order (figures by id, captions by source,
// rankings by (figure, annotator), ratings by (caption, annotator)), which
// makes loading order-independent and serialization deterministic.
class ValidatedCorpus {
  public:
    ValidatedCorpus() = default;

    static ValidatedCorpus build(std::vector<FigureRecord> figures,
                                 std::vector<PhdRanking> rankings,
                                 std::vector<UndergradRating> ratings,
                                 std::vector<std::string> warnings = {});

    const std::vector<FigureRecord>& figures() const { return figures_; }
    const std::vector<PhdRanking>& phd_rankings() const { return rankings_; }
    const std::vector<UndergradRating>& undergrad_ratings() const { return ratings_; }
    const std::set<std::string>& valid_caption_ids() const { return valid_caption_ids_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    std::size_t caption_count() const { return captions_by_id_.size(); }
    bool is_valid(const std::string& caption_id) const { return valid_caption_ids_.count(caption_id) > 0; }

    const FigureRecord* find_figure(const std::string& figure_id) const;
    const CaptionCandidate* find_caption(const std::string& caption_id) const;
    const FigureRecord* figure_of_caption(const std::string& caption_id) const;

    // First ranking / rating in canonical (annotator) order; extra rankings of
    // the same figure are reachable via all_rankings_of and serve agreement().
    const PhdRanking* primary_ranking(const std::string& figure_id) const;
    const UndergradRating* primary_rating(const std::string& caption_id) const;
    std::vector<const PhdRanking*> all_rankings_of(const std::string& figure_id) const;

    // PhD rank of a caption (1 = best) from the primary ranking, if ranked.
    std::optional<int> phd_rank(const std::string& caption_id) const;
    // Reversed rank 7 - k, so larger means better.
    std::optional<int> reversed_rank(const std::string& caption_id) const;

    // Valid captions in canonical order.
    std::vector<const CaptionCandidate*> valid_captions() const;

    std::string serialize_jsonl() const;
    // SHA-256 of the canonical serialization; content-addressed and stable
    // under record reordering in the source file.
    const std::string& content_hash() const { return content_hash_; }

    bool operator==(const ValidatedCorpus& other) const;

  private:
    std::vector<FigureRecord> figures_;
    std::vector<PhdRanking> rankings_;
    std::vector<UndergradRating> ratings_;
    std::set<std::string> valid_caption_ids_;
    std::vector<std::string> warnings_;

    std::unordered_map<std::string, std::size_t> figure_index_;
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> captions_by_id_; // figure idx, caption idx
    std::unordered_map<std::string, std::size_t> primary_ranking_index_;
    std::unordered_map<std::string, std::size_t> primary_rating_index_;
    std::string content_hash_;
};

// Loads and validates a JSONL corpus: one object per line, `kind` field in
// {figure, phd_ranking, undergrad_rating}. Unknown fields are ignored with a
// warning recorded on the corpus.
ValidatedCorpus load_corpus(const std::filesystem::path& path);
ValidatedCorpus parse_corpus_jsonl(std::string_view text);

struct ErrorCensus {
    int image_extraction = 0;
    int text_extraction = 0;
    int not_line_chart = 0;
    int compound_figure = 0;
    int any_error = 0; // captions with >= 1 flag (union, not sum)
};

// Counts each error flag independently; a caption may contribute to several
// kinds but only once to any_error.
ErrorCensus error_census(const ValidatedCorpus& corpus);

enum class LabelSource { PhdRankings, UndergradRatings };

struct CaptionLabel {
    std::string caption_id;
    bool helpful = false; // Yes / No

    bool operator==(const CaptionLabel&) const = default;
};

// PhD mode: ranks 1-3 -> Yes, 4-6 -> No. Undergrad mode: Yes -> Yes, No and
// Unsure -> No. Covers exactly the valid captions; a valid caption lacking the
// requested annotation raises MissingAnnotation.
std::vector<CaptionLabel> derive_labels(const ValidatedCorpus& corpus, LabelSource source);

struct SplitRatios {
    double train = 0.8;
    double validation = 0.1;
    double test = 0.1;
};

// Deterministic, group-wise by figure: all captions of one figure land in the
// same split so near-identical contexts cannot leak across splits.
std::array<std::vector<CaptionLabel>, 3> split_labels(const ValidatedCorpus& corpus,
                                                      const std::vector<CaptionLabel>& labels,
                                                      SplitRatios ratios, std::uint64_t seed);

struct SplitFiles {
    std::filesystem::path train;
    std::filesystem::path validation;
    std::filesystem::path test;
};

// Writes train.csv / validation.csv / test.csv ("caption_id,label" header).
SplitFiles export_split(const ValidatedCorpus& corpus, const std::vector<CaptionLabel>& labels,
                        const std::filesystem::path& out_dir, SplitRatios ratios, std::uint64_t seed);

} // namespace figjudge
