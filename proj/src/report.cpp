#include "figjudge/report.hpp"

#include <cmath>
#include <cstdio>

namespace figjudge {

std::string format_fixed(double value, int precision) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    return buf;
}

namespace {

const CorrelationReport* find_conversion(const std::vector<CorrelationReport>& reports, RankConversion c) {
    for (const auto& r : reports)
        if (r.conversion == c)
            return &r;
    return nullptr;
}

std::string cell(const std::vector<CorrelationReport>& reports, RankConversion c, double CorrelationReport::*field) {
    const CorrelationReport* r = find_conversion(reports, c);
    return r ? format_fixed(r->*field, 3) : "-";
}

std::string p_cell(const std::optional<TTestResult>& t) {
    if (!t)
        return "-";
    if (t->p < 0.001)
        return "<0.001";
    return format_fixed(t->p, 3);
}

} // namespace

std::string render_battery_csv(const std::vector<BatteryRow>& rows) {
    std::string out = "backend,strategy,context,conversion,rho,tau,r_s,n\n";
    for (const auto& row : rows) {
        for (const auto& r : row.reports) {
            out += row.backend_id + ',' + row.strategy_id + ',' + row.context_id + ',';
            out += std::string(to_string(r.conversion)) + ',';
            out += format_fixed(r.rho, 6) + ',' + format_fixed(r.tau, 6) + ',' + format_fixed(r.r_s, 6) + ',';
            out += std::to_string(r.n) + '\n';
        }
    }
    return out;
}

std::string render_battery_markdown(const std::vector<BatteryRow>& rows) {
    std::string out;
    out += "| Backend | Strategy | Context | (a) rho | (a) tau | (a) r_s | (b) rho | (c) rho | N |\n";
    out += "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        const CorrelationReport* reversed = find_conversion(row.reports, RankConversion::Reversed);
        out += "| " + row.backend_id + " | " + row.strategy_id + " | " + row.context_id + " | ";
        out += cell(row.reports, RankConversion::Reversed, &CorrelationReport::rho) + " | ";
        out += cell(row.reports, RankConversion::Reversed, &CorrelationReport::tau) + " | ";
        out += cell(row.reports, RankConversion::Reversed, &CorrelationReport::r_s) + " | ";
        out += cell(row.reports, RankConversion::Reciprocal, &CorrelationReport::rho) + " | ";
        out += cell(row.reports, RankConversion::ReversedReciprocal, &CorrelationReport::rho) + " | ";
        out += (reversed ? std::to_string(reversed->n) : "-") + " |\n";
    }
    out += "\n(a) reversed rank; (b) reciprocal rank, original order; (c) reciprocal rank, reversed order.\n";
    return out;
}

std::string render_ablation_csv(const std::vector<AblationRow>& rows) {
    std::string out = "context,conversion,rho,tau,r_s,n,t,p,no_mentions_figures\n";
    for (const auto& row : rows) {
        for (const auto& r : row.reports) {
            out += row.context_id + ',' + std::string(to_string(r.conversion)) + ',';
            out += format_fixed(r.rho, 6) + ',' + format_fixed(r.tau, 6) + ',' + format_fixed(r.r_s, 6) + ',';
            out += std::to_string(r.n) + ',';
            if (row.t_vs_caption) {
                out += format_fixed(row.t_vs_caption->t, 6) + ',';
                out += format_fixed(row.t_vs_caption->p, 9) + ',';
            } else {
                out += ",,";
            }
            out += std::to_string(row.no_mentions_figures) + '\n';
        }
    }
    return out;
}

std::string render_ablation_markdown(const std::vector<AblationRow>& rows) {
    std::string out;
    out += "| Context | (a) rho | (a) tau | (a) r_s | (b) rho | (c) rho | T-Test |\n";
    out += "|---|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        out += "| " + row.context_id + " | ";
        out += cell(row.reports, RankConversion::Reversed, &CorrelationReport::rho) + " | ";
        out += cell(row.reports, RankConversion::Reversed, &CorrelationReport::tau) + " | ";
        out += cell(row.reports, RankConversion::Reversed, &CorrelationReport::r_s) + " | ";
        out += cell(row.reports, RankConversion::Reciprocal, &CorrelationReport::rho) + " | ";
        out += cell(row.reports, RankConversion::ReversedReciprocal, &CorrelationReport::rho) + " | ";
        out += p_cell(row.t_vs_caption) + " |\n";
    }
    out += "\nT-Test: two-sided paired test of each context's scores against the caption-only scores.\n";
    bool any_missing = false;
    for (const auto& row : rows)
        any_missing = any_missing || row.no_mentions_figures > 0;
    if (any_missing) {
        out += "Figures without mentions (evaluated with empty context):";
        for (const auto& row : rows) {
            out += " " + row.context_id + "=" + std::to_string(row.no_mentions_figures);
        }
        out += "\n";
    }
    return out;
}

std::string render_census(const ErrorCensus& census, std::size_t total_captions, std::size_t valid_captions) {
    std::string out;
    out += "error census\n";
    out += "  image_extraction : " + std::to_string(census.image_extraction) + "\n";
    out += "  text_extraction  : " + std::to_string(census.text_extraction) + "\n";
    out += "  not_line_chart   : " + std::to_string(census.not_line_chart) + "\n";
    out += "  compound_figure  : " + std::to_string(census.compound_figure) + "\n";
    out += "  any error        : " + std::to_string(census.any_error) + "\n";
    out += "captions: " + std::to_string(total_captions) + " total, " + std::to_string(valid_captions) + " valid\n";
    return out;
}

std::string render_features_csv(const std::vector<FeatureReportRow>& rows) {
    std::string out = "judge,feature,rho,n,note\n";
    for (const auto& row : rows) {
        for (const auto& fc : row.correlations) {
            out += row.label + ',' + std::string(to_string(fc.feature)) + ',';
            out += (fc.rho ? format_fixed(*fc.rho, 6) : "") + ',';
            out += std::to_string(fc.n) + ',';
            out += fc.note + '\n';
        }
    }
    return out;
}

std::string render_features_markdown(const std::vector<FeatureReportRow>& rows) {
    std::string out;
    out += "| Judge | OCR | Visual | Stats | Relation | Takeaway |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
        out += "| " + row.label + " |";
        for (CaptionFeature f : kAllCaptionFeatures) {
            std::string value = "-";
            for (const auto& fc : row.correlations)
                if (fc.feature == f)
                    value = fc.rho ? format_fixed(*fc.rho, 3) : "degenerate";
            out += " " + value + " |";
        }
        out += "\n";
    }
    return out;
}

} // namespace figjudge
