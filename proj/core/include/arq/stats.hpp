#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arq/metrics.hpp"
#include "arq/simulator.hpp"
#include "arq/trial.hpp"

namespace arq {

enum class Metric {
    Rair,
    Rsr,
    AdviceUtilization,
    InitialAccuracy,
    FinalAccuracy,
    AiAccuracy,
};

const char* to_string(Metric m);
Metric metric_from_string(const std::string& name);  // throws ArgumentError

enum class AggregationMode {
    Macro,  // mean of per-participant values; the default presentation
    Micro,  // single metric over pooled counts, no standard error
};

struct AggregateResult {
    Metric metric = Metric::Rair;
    AggregationMode mode = AggregationMode::Macro;
    std::int64_t n_units = 0;         // participants contributing a defined value
    double mean = 0.0;                // NaN when no unit has a defined value
    std::optional<double> std_error;  // macro only; sample std / sqrt(n), 0 for n_units == 1
    MetricValue pooled;               // micro: the pooled exact ratio
    std::vector<std::pair<std::string, double>> per_unit_values;  // sorted by participant
    std::vector<std::string> excluded_units;  // participants whose metric is undefined
    std::optional<std::pair<double, double>> bootstrap_ci;  // filled by report building

    bool defined() const;
};

// Per-participant aggregation of one metric over a (single-condition) trial
// span. Participants with an undefined metric are excluded and listed.
AggregateResult aggregate(std::span<const Trial> trials, const LabelSet& labels, Metric metric,
                          AggregationMode mode);

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;  // two-sided
    std::pair<double, double> group_means{0.0, 0.0};
    std::pair<std::int64_t, std::int64_t> group_ns{0, 0};
};

// Welch's unequal-variance two-sample t-test. Requires >= 2 values per side
// and positive variance in at least one sample unless the means coincide
// (then t = 0, p = 1). Degenerate zero-variance samples with different means
// throw PreconditionError instead of producing infinities.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

// Classic pooled-variance Student t-test, same preconditions.
TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b);

enum class TestKind { Welch, Pooled };
const char* to_string(TestKind k);

TTestResult two_sample_test(std::span<const double> a, std::span<const double> b, TestKind kind);

// Percentile bootstrap interval of the resampled mean. Deterministic for a
// fixed seed: resample r draws through its own counter-based stream, so the
// result does not depend on evaluation order.
std::pair<double, double> bootstrap_ci(std::span<const double> values, double level,
                                       std::int64_t n_resamples, std::uint64_t seed);

struct PowerEstimate {
    Metric metric = Metric::Rair;
    SimConfig null_config;
    SimConfig alt_config;
    double alpha = 0.05;
    double power = 0.0;  // fraction of replications with p < alpha
    std::int64_t n_replications = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo power of the two-condition design: per replication, simulates
// one study from each config (with per-replication derived seeds), compares
// per-participant metric values with Welch's test, and counts rejections.
// Configs must share n_participants, n_trials and k_labels.
PowerEstimate power_estimate(const SimConfig& null_cfg, const SimConfig& alt_cfg, double alpha,
                             std::int64_t n_replications, std::uint64_t seed,
                             Metric metric = Metric::Rair);

// Per-participant metric values, sorted by participant id. Undefined values
// are included; callers decide how to treat them.
std::vector<std::pair<std::string, MetricValue>> per_participant_metric(
    std::span<const Trial> trials, const LabelSet& labels, Metric metric);

}  // namespace arq
