#include "figjudge/fixture.hpp"

#include <cstdio>

#include "figjudge/rng.hpp"

namespace figjudge {

namespace {

constexpr const char* kMetrics[] = {"validation loss", "accuracy",   "F1 score",   "latency",
                                    "throughput",      "perplexity", "error rate", "recall"};
constexpr const char* kSubjects[] = {"the proposed model", "the baseline",   "both systems",
                                     "the ablated variant", "the full model", "each configuration"};
constexpr const char* kTrends[] = {"decreases steadily", "plateaus after convergence", "improves with more data",
                                   "fluctuates early on", "saturates quickly",          "degrades under noise"};
constexpr const char* kAxes[] = {"training epochs", "dataset size", "beam width", "sequence length", "batch size"};

std::string domain_slug(Domain d) {
    switch (d) {
    case Domain::CV: return "cv";
    case Domain::CL: return "cl";
    case Domain::HC: return "hc";
    }
    return "cv";
}

std::string pick(SplitMix64& rng, const char* const* bank, std::size_t n) {
    return bank[rng.bounded(n)];
}

std::string caption_text(CaptionSource source, const std::string& figure_label, const std::string& metric,
                         const std::string& subject, const std::string& trend, const std::string& axis,
                         SplitMix64& rng) {
    switch (source) {
    case CaptionSource::Author:
        return "The " + metric + " of " + subject + " " + trend + "; " + figure_label +
               " summarizes the effect across " + axis + ".";
    case CaptionSource::PegasusP:
        return "We observe that the " + metric + " " + trend + " as " + axis + " grows, matching the discussion of " +
               figure_label + ".";
    case CaptionSource::PegasusPO:
        return "The " + metric + " (y-axis) " + trend + " over " + axis + " (x-axis) for " + subject + ".";
    case CaptionSource::PegasusO:
        return metric + " versus " + axis + "." + (rng.bounded(2) ? " Legend lists the compared systems." : "");
    case CaptionSource::TrOCR:
        return "A plot of " + metric + " against " + axis + " with " + std::to_string(2 + rng.bounded(4)) +
               " curves.";
    case CaptionSource::Template:
        return "This figure shows " + metric + " with respect to " + axis + ".";
    }
    return metric + ".";
}

} // namespace

ValidatedCorpus make_reference_fixture(const FixtureSpec& spec) {
    std::vector<FigureRecord> figures;
    std::vector<PhdRanking> rankings;
    std::vector<UndergradRating> ratings;
    std::vector<std::string> caption_ids; // generation order, for the error layout

    int figure_ordinal = 0;
    int caption_ordinal = 0;

    for (Domain domain : kAllDomains) {
        for (int i = 0; i < spec.figures_per_domain; ++i, ++figure_ordinal) {
            char idbuf[32];
            std::snprintf(idbuf, sizeof idbuf, "fig-%s-%04d", domain_slug(domain).c_str(), i);
            FigureRecord fig;
            fig.figure_id = idbuf;
            fig.domain = domain;
            fig.figure_index_label = "Figure " + std::to_string(1 + (i % 11));

            SplitMix64 rng(mix_seed(spec.seed, fig.figure_id));
            const std::string metric = pick(rng, kMetrics, std::size(kMetrics));
            const std::string subject = pick(rng, kSubjects, std::size(kSubjects));
            const std::string trend = pick(rng, kTrends, std::size(kTrends));
            const std::string axis = pick(rng, kAxes, std::size(kAxes));

            if (rng.unit() >= spec.empty_mention_fraction) {
                const std::size_t n_mentions = 1 + rng.bounded(3);
                for (std::size_t p = 0; p < n_mentions; ++p) {
                    fig.mentions.push_back("As shown in " + fig.figure_index_label + ", the " + metric + " of " +
                                           subject + " " + trend + " as we vary " + axis +
                                           ". This supports the analysis in Section " +
                                           std::to_string(2 + rng.bounded(5)) + " (" + fig.figure_id + ", paragraph " +
                                           std::to_string(p + 1) + ").");
                }
            }

            // seeded 1..6 permutation: rank per source
            std::vector<int> ranks = {1, 2, 3, 4, 5, 6};
            seeded_shuffle(ranks, rng);
            PhdRanking ranking;
            ranking.figure_id = fig.figure_id;
            char annot[16];
            std::snprintf(annot, sizeof annot, "phd-%02d", figure_ordinal / 40);
            ranking.annotator_id = annot;

            for (std::size_t s = 0; s < kAllCaptionSources.size(); ++s) {
                const CaptionSource source = kAllCaptionSources[s];
                CaptionCandidate cap;
                cap.caption_id = std::string(idbuf) + "-" + std::string(to_string(source));
                cap.figure_id = fig.figure_id;
                cap.source = source;
                cap.text = caption_text(source, fig.figure_index_label, metric, subject, trend, axis, rng);
                fig.captions.push_back(cap);
                ranking.ranking[source] = ranks[s];

                UndergradRating rating;
                rating.caption_id = cap.caption_id;
                char ug[16];
                std::snprintf(ug, sizeof ug, "ug-%02d", caption_ordinal / 180);
                rating.annotator_id = ug;
                // helpfulness loosely tracks the PhD rank
                const double r = rng.unit();
                if (ranks[s] <= 3)
                    rating.helpfulness = r < 0.70 ? Helpfulness::Yes
                                                  : (r < 0.85 ? Helpfulness::Unsure : Helpfulness::No);
                else
                    rating.helpfulness = r < 0.60 ? Helpfulness::No
                                                  : (r < 0.80 ? Helpfulness::Unsure : Helpfulness::Yes);
                rating.features.ocr = rng.unit() < 0.5;
                rating.features.visual = rng.unit() < 0.3;
                rating.features.stats = rng.unit() < 0.3;
                rating.features.relation = rng.unit() < 0.35;
                rating.features.takeaway = rng.unit() < (ranks[s] <= 2 ? 0.6 : 0.25);
                ratings.push_back(std::move(rating));

                caption_ids.push_back(cap.caption_id);
                ++caption_ordinal;
            }

            figures.push_back(std::move(fig));
            rankings.push_back(std::move(ranking));

            if (spec.with_agreement_batch && figure_ordinal < 10) {
                // same ranking with the middle pair (ranks 3 and 4) swapped:
                // one adjacent transposition per figure
                PhdRanking dup = rankings.back();
                dup.annotator_id = "phd-agr";
                for (auto& [src, rank] : dup.ranking) {
                    if (rank == 3)
                        rank = 4;
                    else if (rank == 4)
                        rank = 3;
                }
                rankings.push_back(std::move(dup));
            }
        }
    }

    // error flags on the undergrad ratings (ratings are parallel to caption_ids)
    const std::size_t total = caption_ids.size();
    if (spec.exact_error_layout && total == 3600) {
        // 441 flagged captions spread by stride 7 (coprime with 3600):
        // image 0..101, text 102..343, not-line-chart 344..440 plus 0..3,
        // compound 4..26 - per-kind 102/242/101/23, union 441.
        for (int i = 0; i <= 440; ++i) {
            UndergradRating& rating = ratings[(static_cast<std::size_t>(i) * 7) % total];
            if (i < 102)
                rating.errors.image_extraction = true;
            if (i >= 102 && i < 344)
                rating.errors.text_extraction = true;
            if (i >= 344 || i < 4)
                rating.errors.not_line_chart = true;
            if (i >= 4 && i < 27)
                rating.errors.compound_figure = true;
        }
    } else if (spec.error_rate > 0.0) {
        for (std::size_t c = 0; c < total; ++c) {
            SplitMix64 rng(mix_seed(spec.seed ^ 0x5eedULL, caption_ids[c]));
            if (rng.unit() >= spec.error_rate)
                continue;
            UndergradRating& rating = ratings[c];
            switch (rng.bounded(4)) {
            case 0: rating.errors.image_extraction = true; break;
            case 1: rating.errors.text_extraction = true; break;
            case 2: rating.errors.not_line_chart = true; break;
            default: rating.errors.compound_figure = true; break;
            }
        }
    }

    return ValidatedCorpus::build(std::move(figures), std::move(rankings), std::move(ratings));
}

} // namespace figjudge
