#pragma once

// Small hand-built corpora for unit tests.

#include <array>
#include <string>
#include <vector>

#include "figjudge/corpus.hpp"

namespace figjudge::testing {

inline FigureRecord test_figure(const std::string& id, Domain domain = Domain::CL, int n_mentions = 2) {
    FigureRecord fig;
    fig.figure_id = id;
    fig.domain = domain;
    fig.figure_index_label = "Figure 4";
    for (int i = 0; i < n_mentions; ++i)
        fig.mentions.push_back("As shown in Figure 4, series " + std::to_string(i + 1) + " of " + id +
                               " dominates after convergence.");
    for (CaptionSource src : kAllCaptionSources) {
        CaptionCandidate cap;
        cap.caption_id = id + "-" + std::string(to_string(src));
        cap.figure_id = id;
        cap.source = src;
        cap.text = "Caption by " + std::string(to_string(src)) + " for " + id + ".";
        fig.captions.push_back(std::move(cap));
    }
    return fig;
}

// ranks given in kAllCaptionSources order
inline PhdRanking test_ranking(const std::string& figure_id, std::array<int, 6> ranks,
                               const std::string& annotator = "phd-a") {
    PhdRanking r;
    r.figure_id = figure_id;
    r.annotator_id = annotator;
    for (std::size_t i = 0; i < kAllCaptionSources.size(); ++i)
        r.ranking[kAllCaptionSources[i]] = ranks[i];
    return r;
}

inline UndergradRating test_rating(const std::string& caption_id, Helpfulness h, ErrorFlags errors = {},
                                   FeatureFlags features = {}, const std::string& annotator = "ug-a") {
    UndergradRating u;
    u.caption_id = caption_id;
    u.annotator_id = annotator;
    u.helpfulness = h;
    u.features = features;
    u.errors = errors;
    return u;
}

// Two fully annotated figures, identity and reversed rankings, no errors.
inline ValidatedCorpus two_figure_corpus() {
    std::vector<FigureRecord> figures = {test_figure("fig-a", Domain::CL), test_figure("fig-b", Domain::CL)};
    std::vector<PhdRanking> rankings = {test_ranking("fig-a", {1, 2, 3, 4, 5, 6}),
                                        test_ranking("fig-b", {6, 5, 4, 3, 2, 1})};
    std::vector<UndergradRating> ratings;
    for (const auto& fig : figures)
        for (const auto& cap : fig.captions)
            ratings.push_back(test_rating(cap.caption_id, Helpfulness::Yes));
    return ValidatedCorpus::build(std::move(figures), std::move(rankings), std::move(ratings));
}

} // namespace figjudge::testing
