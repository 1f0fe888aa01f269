#include "figjudge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "figjudge/judge.hpp"

namespace figjudge {

PairedSeries PairedSeries::from_vectors(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::UnmatchedCaptions, "series lengths differ (" + std::to_string(x.size()) + " vs " +
                                                      std::to_string(y.size()) + ")");
    PairedSeries s;
    s.ids.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        s.ids.push_back(std::to_string(i));
    s.x = std::move(x);
    s.y = std::move(y);
    return s;
}

PairedSeries PairedSeries::join_by_id(const std::vector<std::pair<std::string, double>>& xs,
                                      const std::map<std::string, double>& y_by_id) {
    PairedSeries s;
    std::vector<std::string> missing;
    for (const auto& [id, x] : xs) {
        auto it = y_by_id.find(id);
        if (it == y_by_id.end()) {
            if (missing.size() < 5)
                missing.push_back(id);
            continue;
        }
        s.ids.push_back(id);
        s.x.push_back(x);
        s.y.push_back(it->second);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& id : missing)
            list += (list.empty() ? "" : ", ") + id;
        throw Error(ErrorCode::UnmatchedCaptions, "no counterpart for caption(s): " + list);
    }
    return s;
}

std::string_view to_string(RankConversion c) {
    switch (c) {
    case RankConversion::Reversed: return "reversed";
    case RankConversion::Reciprocal: return "reciprocal";
    case RankConversion::ReversedReciprocal: return "reversed_reciprocal";
    }
    return "reversed";
}

double convert_rank(int rank, RankConversion conversion) {
    if (rank < 1 || rank > kRankCount)
        throw Error(ErrorCode::OutOfRangeRank, "rank " + std::to_string(rank) + " outside [1,6]");
    switch (conversion) {
    case RankConversion::Reversed: return static_cast<double>(7 - rank);
    case RankConversion::Reciprocal: return 1.0 / static_cast<double>(rank);
    case RankConversion::ReversedReciprocal: return 1.0 / static_cast<double>(7 - rank);
    }
    return 0.0;
}

namespace {

void require_n(const PairedSeries& s, const char* op) {
    if (s.n() < 2)
        throw Error(ErrorCode::DegenerateSeries, std::string(op) + " needs at least 2 paired observations, got " +
                                                     std::to_string(s.n()));
    if (s.x.size() != s.y.size() || s.ids.size() != s.x.size())
        throw Error(ErrorCode::UnmatchedCaptions, "paired series lengths disagree");
}

} // namespace

double pearson(const PairedSeries& s) {
    require_n(s, "pearson");
    const auto n = static_cast<double>(s.n());
    const double mx = std::accumulate(s.x.begin(), s.x.end(), 0.0) / n;
    const double my = std::accumulate(s.y.begin(), s.y.end(), 0.0) / n;

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double dx = s.x[i] - mx;
        const double dy = s.y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error(ErrorCode::DegenerateSeries,
                    std::string("zero variance in ") + (sxx == 0.0 ? "x" : "y") + " series");
    return sxy / std::sqrt(sxx * syy);
}

namespace {

// Number of tied pairs sum t*(t-1)/2 per tie group of `key` (pre-sorted).
std::int64_t tied_pairs(const std::vector<double>& sorted_key) {
    std::int64_t total = 0;
    std::size_t i = 0;
    while (i < sorted_key.size()) {
        std::size_t j = i + 1;
        while (j < sorted_key.size() && sorted_key[j] == sorted_key[i])
            ++j;
        const auto t = static_cast<std::int64_t>(j - i);
        total += t * (t - 1) / 2;
        i = j;
    }
    return total;
}

// Strict inversions (i < j, v[i] > v[j]) counted by merge sort.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t count = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);

    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (v[b] < v[a]) { // strictly smaller element jumps over mid - a leftovers
            count += static_cast<std::int64_t>(mid - a);
            scratch[out++] = v[b++];
        } else {
            scratch[out++] = v[a++];
        }
    }
    while (a < mid)
        scratch[out++] = v[a++];
    while (b < hi)
        scratch[out++] = v[b++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

} // namespace

double kendall_tau_b(const PairedSeries& s) {
    require_n(s, "kendall_tau_b");
    const std::size_t n = s.n();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (s.x[a] != s.x[b])
            return s.x[a] < s.x[b];
        return s.y[a] < s.y[b];
    });

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = s.x[order[i]];
        ys[i] = s.y[order[i]];
    }

    const std::int64_t n0 = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
    const std::int64_t ties_x = tied_pairs(xs);

    // joint ties: groups equal in both coordinates (xs/ys sorted lexicographically)
    std::int64_t ties_xy = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i + 1;
            while (j < n && xs[j] == xs[i] && ys[j] == ys[i])
                ++j;
            const auto t = static_cast<std::int64_t>(j - i);
            ties_xy += t * (t - 1) / 2;
            i = j;
        }
    }

    std::vector<double> scratch(n);
    std::vector<double> y_seq = ys;
    const std::int64_t discordant = count_inversions(y_seq, scratch, 0, n); // y_seq ends up sorted

    const std::int64_t ties_y = tied_pairs(y_seq);

    if (ties_x == n0 || ties_y == n0)
        throw Error(ErrorCode::DegenerateSeries,
                    std::string("fully tied ") + (ties_x == n0 ? "x" : "y") + " series");

    const std::int64_t concordant_minus_discordant = n0 - ties_x - ties_y + ties_xy - 2 * discordant;
    const double denom = std::sqrt(static_cast<double>(n0 - ties_x)) * std::sqrt(static_cast<double>(n0 - ties_y));
    return static_cast<double>(concordant_minus_discordant) / denom;
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]])
            ++j;
        const double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0; // 1-based
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = mean_rank;
        i = j;
    }
    return ranks;
}

double spearman(const PairedSeries& s) {
    require_n(s, "spearman");
    PairedSeries ranked;
    ranked.ids = s.ids;
    ranked.x = average_ranks(s.x);
    ranked.y = average_ranks(s.y);
    return pearson(ranked);
}

// ---------------------------------------------------------------------------
// t-test
// ---------------------------------------------------------------------------

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny)
        d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny)
            d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps)
            break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int df) {
    if (df < 1)
        throw Error(ErrorCode::DegenerateSeries, "t-distribution needs df >= 1");
    if (std::isinf(t))
        return 0.0;
    const double nu = static_cast<double>(df);
    return regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::UnmatchedCaptions, "paired t-test requires equal-length series");
    if (a.size() < 2)
        throw Error(ErrorCode::DegenerateSeries, "paired t-test needs at least 2 pairs");

    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i)
        d[i] = a[i] - b[i];

    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : d)
        ss += (v - mean) * (v - mean);

    if (ss == 0.0) {
        if (mean == 0.0)
            return {0.0, 1.0, true};
        // constant nonzero differences: unbounded t, p below any representable value
        return {std::copysign(std::numeric_limits<double>::infinity(), mean), 0.0, true};
    }

    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double t = mean / (sd / std::sqrt(static_cast<double>(n)));
    return {t, student_t_two_sided_p(t, static_cast<int>(n - 1)), false};
}

// ---------------------------------------------------------------------------
// agreement / features / battery
// ---------------------------------------------------------------------------

double agreement(const std::vector<PhdRanking>& rankings_a, const std::vector<PhdRanking>& rankings_b) {
    std::map<std::string, const PhdRanking*> by_figure_a, by_figure_b;
    for (const auto& r : rankings_a)
        by_figure_a[r.figure_id] = &r;
    for (const auto& r : rankings_b)
        by_figure_b[r.figure_id] = &r;

    if (by_figure_a.size() != by_figure_b.size() || by_figure_a.empty())
        throw Error(ErrorCode::FigureMismatch, "annotators cover different figure sets (" +
                                                   std::to_string(by_figure_a.size()) + " vs " +
                                                   std::to_string(by_figure_b.size()) + " figures)");
    for (const auto& [figure_id, r] : by_figure_a) {
        (void)r;
        if (!by_figure_b.count(figure_id))
            throw Error(ErrorCode::FigureMismatch, "figure '" + figure_id + "' ranked by one annotator only");
    }

    double total = 0.0;
    for (const auto& [figure_id, ra] : by_figure_a) {
        const PhdRanking* rb = by_figure_b.at(figure_id);
        PairedSeries s;
        for (CaptionSource src : kAllCaptionSources) {
            s.ids.push_back(std::string(to_string(src)));
            s.x.push_back(ra->rank_of(src));
            s.y.push_back(rb->rank_of(src));
        }
        total += kendall_tau_b(s); // permutations: tau-b equals plain tau
    }
    return total / static_cast<double>(by_figure_a.size());
}

std::string_view to_string(CaptionFeature f) {
    switch (f) {
    case CaptionFeature::Ocr: return "ocr";
    case CaptionFeature::Visual: return "visual";
    case CaptionFeature::Stats: return "stats";
    case CaptionFeature::Relation: return "relation";
    case CaptionFeature::Takeaway: return "takeaway";
    }
    return "ocr";
}

namespace {

bool feature_flag(const FeatureFlags& flags, CaptionFeature f) {
    switch (f) {
    case CaptionFeature::Ocr: return flags.ocr;
    case CaptionFeature::Visual: return flags.visual;
    case CaptionFeature::Stats: return flags.stats;
    case CaptionFeature::Relation: return flags.relation;
    case CaptionFeature::Takeaway: return flags.takeaway;
    }
    return false;
}

} // namespace

std::vector<FeatureCorrelation> feature_helpfulness_correlation(const ValidatedCorpus& corpus,
                                                                HelpfulnessJudge judge) {
    std::vector<double> helpfulness;
    std::vector<FeatureFlags> flags;
    for (const CaptionCandidate* cap : corpus.valid_captions()) {
        const UndergradRating* rating = corpus.primary_rating(cap->caption_id);
        if (!rating)
            throw Error(ErrorCode::MissingAnnotation, "valid caption '" + cap->caption_id + "' has no feature flags");
        if (judge == HelpfulnessJudge::Phd) {
            auto rr = corpus.reversed_rank(cap->caption_id);
            if (!rr)
                throw Error(ErrorCode::MissingAnnotation,
                            "valid caption '" + cap->caption_id + "' has no PhD ranking");
            helpfulness.push_back(static_cast<double>(*rr));
        } else {
            helpfulness.push_back(rating->helpfulness == Helpfulness::Yes ? 1.0 : 0.0);
        }
        flags.push_back(rating->features);
    }

    std::vector<FeatureCorrelation> out;
    for (CaptionFeature f : kAllCaptionFeatures) {
        FeatureCorrelation fc;
        fc.feature = f;
        fc.n = static_cast<int>(helpfulness.size());
        std::vector<double> x;
        x.reserve(flags.size());
        for (const auto& fl : flags)
            x.push_back(feature_flag(fl, f) ? 1.0 : 0.0);
        try {
            fc.rho = pearson(PairedSeries::from_vectors(std::move(x), helpfulness));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateSeries)
                throw;
            fc.note = e.what();
        }
        out.push_back(std::move(fc));
    }
    return out;
}

std::map<std::string, int> build_rank_index(const ValidatedCorpus& corpus) {
    std::map<std::string, int> index;
    for (const auto& fig : corpus.figures()) {
        const PhdRanking* r = corpus.primary_ranking(fig.figure_id);
        if (!r)
            continue;
        for (const auto& cap : fig.captions)
            index[cap.caption_id] = r->rank_of(cap.source);
    }
    return index;
}

std::vector<CorrelationReport> correlation_battery(const std::vector<JudgeScore>& scores,
                                                   const ValidatedCorpus& corpus) {
    return correlation_battery(scores, build_rank_index(corpus));
}

std::vector<CorrelationReport> correlation_battery(const std::vector<JudgeScore>& scores,
                                                   const std::map<std::string, int>& rank_by_caption) {
    if (scores.size() < 2)
        throw Error(ErrorCode::DegenerateSeries, "correlation battery needs at least 2 scores");

    std::vector<std::pair<std::string, double>> xs;
    xs.reserve(scores.size());
    for (const auto& s : scores)
        xs.emplace_back(s.caption_id, s.score);

    std::vector<CorrelationReport> out;
    for (RankConversion conv :
         {RankConversion::Reversed, RankConversion::Reciprocal, RankConversion::ReversedReciprocal}) {
        std::map<std::string, double> y_by_id;
        for (const auto& [caption_id, rank] : rank_by_caption)
            y_by_id[caption_id] = convert_rank(rank, conv);
        const PairedSeries series = PairedSeries::join_by_id(xs, y_by_id);

        CorrelationReport r;
        r.conversion = conv;
        r.n = static_cast<int>(series.n());
        r.rho = pearson(series);
        r.tau = kendall_tau_b(series);
        r.r_s = spearman(series);
        r.strategy_id = scores.front().strategy_id;
        r.backend_id = scores.front().backend_id;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace figjudge
