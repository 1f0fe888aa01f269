#pragma once

#include <optional>
#include <string>
#include <vector>

#include "figjudge/corpus.hpp"
#include "figjudge/stats.hpp"

namespace figjudge {

struct BatteryRow {
    std::string backend_id;
    std::string strategy_id;
    std::string context_id;
    std::vector<CorrelationReport> reports; // one per rank conversion
};

// CSV: one row per strategy x backend x conversion with rho, tau, r_s, n.
std::string render_battery_csv(const std::vector<BatteryRow>& rows);
// Markdown grid: reversed-rank rho/tau/r_s plus the two reciprocal-rank rho
// columns per row.
std::string render_battery_markdown(const std::vector<BatteryRow>& rows);

struct AblationRow {
    std::string context_id;
    std::vector<CorrelationReport> reports;
    std::optional<TTestResult> t_vs_caption; // absent on the caption-only row
    int no_mentions_figures = 0;
};

std::string render_ablation_csv(const std::vector<AblationRow>& rows);
std::string render_ablation_markdown(const std::vector<AblationRow>& rows);

std::string render_census(const ErrorCensus& census, std::size_t total_captions, std::size_t valid_captions);

struct FeatureReportRow {
    std::string label; // e.g. "PhD", "Undergrad"
    std::vector<FeatureCorrelation> correlations;
};

std::string render_features_csv(const std::vector<FeatureReportRow>& rows);
std::string render_features_markdown(const std::vector<FeatureReportRow>& rows);

// "0.501" style fixed formatting used across reports (deterministic output).
std::string format_fixed(double value, int precision);

} // namespace figjudge
