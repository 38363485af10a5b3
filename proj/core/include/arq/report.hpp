#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arq/log_io.hpp"
#include "arq/metrics.hpp"
#include "arq/stats.hpp"

namespace arq {

struct BootstrapOptions {
    double level = 0.95;
    std::int64_t n_resamples = 2000;
    std::uint64_t seed = 0;
};

struct ReportOptions {
    Rational threshold = Rational::make(1, 2);
    AggregationMode aggregation = AggregationMode::Macro;
    TestKind test = TestKind::Welch;
    std::optional<BootstrapOptions> bootstrap;  // adds percentile CIs to macro aggregates
};

struct ConditionComparison {
    Metric metric = Metric::Rair;
    std::string condition_a;
    std::string condition_b;
    TTestResult test;  // t > 0 means condition_a's mean is larger
};

struct SkippedComparison {
    Metric metric = Metric::Rair;
    std::string condition_a;
    std::string condition_b;
    std::string reason;
};

struct ConditionReport {
    std::string condition;
    std::int64_t n_participants = 0;
    std::int64_t n_trials = 0;
    OutcomeCounts counts;
    RelianceScores pooled;  // exact pooled-count scores
    std::vector<AggregateResult> aggregates;
    RelianceDiagnosis diagnosis;  // from the pooled scores
};

// Everything in a report is recomputable from the input log and the options.
struct AnalysisReport {
    std::string tool_version;
    std::string input_digest;
    ReportOptions options;
    std::vector<Label> label_set;
    std::int64_t n_trials = 0;
    std::int64_t n_participants = 0;
    std::vector<ConditionReport> conditions;  // sorted by condition id
    std::vector<ConditionComparison> comparisons;
    std::vector<SkippedComparison> skipped_comparisons;
    std::vector<std::string> warnings;
};

AnalysisReport build_report(const TrialLog& log, const ReportOptions& options,
                            std::string input_digest = {});

// JSON schema "ar-report/1". Byte-identical output for identical input.
std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const std::string& json_text);

std::string report_to_text(const AnalysisReport& report);

}  // namespace arq
