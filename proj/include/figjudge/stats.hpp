#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "figjudge/corpus.hpp"

namespace figjudge {

struct JudgeScore; // judge.hpp

// Two measurements of the same captions. Pairing happens by caption id at
// construction (join_by_id); positions are only trusted once ids are aligned.
struct PairedSeries {
    std::vector<std::string> ids;
    std::vector<double> x;
    std::vector<double> y;

    std::size_t n() const { return x.size(); }

    static PairedSeries from_vectors(std::vector<double> x, std::vector<double> y);
    // Joins x measurements against y values keyed by id; every x id must be
    // present in y_by_id (UnmatchedCaptions otherwise).
    static PairedSeries join_by_id(const std::vector<std::pair<std::string, double>>& xs,
                                   const std::map<std::string, double>& y_by_id);
};

enum class RankConversion { Reversed, Reciprocal, ReversedReciprocal };

std::string_view to_string(RankConversion c);

// Reversed: k -> 7-k. Reciprocal: k -> 1/k. ReversedReciprocal: k -> 1/(7-k).
double convert_rank(int rank, RankConversion conversion);

// Sample Pearson product-moment coefficient. Throws DegenerateSeries when
// either side has zero variance.
double pearson(const PairedSeries& s);

// Kendall tau-b (tie-corrected), O(n log n) via merge-count of discordant
// pairs. Scores 1-6 against ranks 1-6 tie heavily, so the correction is load-
// bearing. Throws DegenerateSeries when either side is fully tied.
double kendall_tau_b(const PairedSeries& s);

// Spearman rank correlation: Pearson on fractional (mean-of-tied) ranks.
double spearman(const PairedSeries& s);

// Fractional 1-based ranks, ties receive the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    // All differences equal: nonzero -> p pinned to 0 (< machine-min) and
    // flagged; all zero -> t = 0, p = 1, also flagged.
    bool zero_variance = false;
};

// Two-sided paired t-test on a - b with n - 1 degrees of freedom.
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

// Building blocks exposed for the quadrature cross-checks in the test suite.
double regularized_incomplete_beta(double a, double b, double x);
double student_t_two_sided_p(double t, int df);

// Mean per-figure Kendall tau between two annotators' 6-way rankings. Both
// lists must cover the same figure set (FigureMismatch otherwise).
double agreement(const std::vector<PhdRanking>& rankings_a, const std::vector<PhdRanking>& rankings_b);

enum class HelpfulnessJudge { Phd, Undergrad };
enum class CaptionFeature { Ocr, Visual, Stats, Relation, Takeaway };

inline constexpr std::array<CaptionFeature, 5> kAllCaptionFeatures = {
    CaptionFeature::Ocr, CaptionFeature::Visual, CaptionFeature::Stats,
    CaptionFeature::Relation, CaptionFeature::Takeaway,
};

std::string_view to_string(CaptionFeature f);

struct FeatureCorrelation {
    CaptionFeature feature = CaptionFeature::Ocr;
    std::optional<double> rho; // empty when the series degenerated
    std::string note;          // degeneracy reason, if any
    int n = 0;
};

// Pearson of each 0/1 feature flag against helpfulness over valid captions:
// PhD helpfulness = reversed rank (1-6), Undergrad = 1 for Yes else 0.
// A degenerate feature is reported as such; the others are still computed.
std::vector<FeatureCorrelation> feature_helpfulness_correlation(const ValidatedCorpus& corpus,
                                                                HelpfulnessJudge judge);

struct CorrelationReport {
    double rho = 0.0;
    double tau = 0.0;
    double r_s = 0.0;
    int n = 0;
    RankConversion conversion = RankConversion::Reversed;
    std::string strategy_id;
    std::string backend_id;
};

// PhD rank (1 = best) per caption id, from each figure's primary ranking.
std::map<std::string, int> build_rank_index(const ValidatedCorpus& corpus);

// The full grid: rho/tau/r_s for each rank conversion, paired by caption id.
// Every scored caption must be ranked (UnmatchedCaptions otherwise).
std::vector<CorrelationReport> correlation_battery(const std::vector<JudgeScore>& scores,
                                                   const ValidatedCorpus& corpus);
std::vector<CorrelationReport> correlation_battery(const std::vector<JudgeScore>& scores,
                                                   const std::map<std::string, int>& rank_by_caption);

} // namespace figjudge
