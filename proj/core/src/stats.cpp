#include "arq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "arq/dist.hpp"
#include "arq/errors.hpp"
#include "arq/rng.hpp"

namespace arq {

namespace {

struct UnitTallies {
    OutcomeCounts counts;
    std::int64_t n = 0;
    std::int64_t initial_correct = 0;
    std::int64_t final_correct = 0;
    std::int64_t advice_correct = 0;
};

MetricValue metric_from_tallies(const UnitTallies& u, Metric metric) {
    switch (metric) {
        case Metric::Rair: return rair(u.counts);
        case Metric::Rsr: return rsr(u.counts);
        case Metric::AdviceUtilization: return advice_utilization(u.counts);
        case Metric::InitialAccuracy: return MetricValue{u.initial_correct, u.n};
        case Metric::FinalAccuracy: return MetricValue{u.final_correct, u.n};
        case Metric::AiAccuracy: return MetricValue{u.advice_correct, u.n};
    }
    return MetricValue{};
}

double sample_mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

TTestResult degenerate_or_throw(double ma, double mb, std::int64_t na, std::int64_t nb) {
    if (ma != mb)
        throw PreconditionError(
            "two-sample test needs positive variance in at least one sample when means differ");
    TTestResult r;
    r.t_statistic = 0.0;
    r.degrees_of_freedom = static_cast<double>(na + nb - 2);
    r.p_value = 1.0;
    r.group_means = {ma, mb};
    r.group_ns = {na, nb};
    return r;
}

}  // namespace

const char* to_string(Metric m) {
    switch (m) {
        case Metric::Rair: return "rair";
        case Metric::Rsr: return "rsr";
        case Metric::AdviceUtilization: return "advice_utilization";
        case Metric::InitialAccuracy: return "initial_accuracy";
        case Metric::FinalAccuracy: return "final_accuracy";
        case Metric::AiAccuracy: return "ai_accuracy";
    }
    return "?";
}

Metric metric_from_string(const std::string& name) {
    for (Metric m : {Metric::Rair, Metric::Rsr, Metric::AdviceUtilization,
                     Metric::InitialAccuracy, Metric::FinalAccuracy, Metric::AiAccuracy}) {
        if (name == to_string(m)) return m;
    }
    throw ArgumentError("unknown metric '" + name + "'");
}

const char* to_string(TestKind k) {
    switch (k) {
        case TestKind::Welch: return "welch";
        case TestKind::Pooled: return "pooled";
    }
    return "?";
}

std::vector<std::pair<std::string, MetricValue>> per_participant_metric(
    std::span<const Trial> trials, const LabelSet& labels, Metric metric) {
    std::map<std::string, UnitTallies> units;
    for (const Trial& t : trials) {
        UnitTallies& u = units[t.participant_id];
        const Trial* one = &t;
        const OutcomeCounts c = count_outcomes(std::span<const Trial>(one, 1), labels);
        u.counts.n_pos_ai_reliance += c.n_pos_ai_reliance;
        u.counts.n_neg_self_reliance += c.n_neg_self_reliance;
        u.counts.n_pos_self_reliance += c.n_pos_self_reliance;
        u.counts.n_neg_ai_reliance += c.n_neg_ai_reliance;
        u.counts.n_confirmation_correct += c.n_confirmation_correct;
        u.counts.n_confirmation_incorrect += c.n_confirmation_incorrect;
        u.counts.n_neutral_contradiction += c.n_neutral_contradiction;
        u.counts.n_total += c.n_total;
        u.counts.n_pa_final_neither += c.n_pa_final_neither;
        u.counts.n_na_final_neither += c.n_na_final_neither;
        ++u.n;
        if (t.initial_decision == t.ground_truth) ++u.initial_correct;
        if (t.final_decision == t.ground_truth) ++u.final_correct;
        if (t.advice == t.ground_truth) ++u.advice_correct;
    }
    std::vector<std::pair<std::string, MetricValue>> out;
    out.reserve(units.size());
    for (const auto& [id, tallies] : units) out.emplace_back(id, metric_from_tallies(tallies, metric));
    return out;
}

bool AggregateResult::defined() const {
    return mode == AggregationMode::Micro ? pooled.defined() : n_units > 0;
}

AggregateResult aggregate(std::span<const Trial> trials, const LabelSet& labels, Metric metric,
                          AggregationMode mode) {
    AggregateResult r;
    r.metric = metric;
    r.mode = mode;

    const auto per_unit = per_participant_metric(trials, labels, metric);
    std::vector<double> defined_values;
    for (const auto& [id, value] : per_unit) {
        if (value.defined()) {
            r.per_unit_values.emplace_back(id, value.value());
            defined_values.push_back(value.value());
        } else {
            r.excluded_units.push_back(id);
        }
    }
    r.n_units = static_cast<std::int64_t>(defined_values.size());

    if (mode == AggregationMode::Micro) {
        UnitTallies pooled_tallies;
        pooled_tallies.counts = count_outcomes(trials, labels);
        pooled_tallies.n = static_cast<std::int64_t>(trials.size());
        for (const Trial& t : trials) {
            if (t.initial_decision == t.ground_truth) ++pooled_tallies.initial_correct;
            if (t.final_decision == t.ground_truth) ++pooled_tallies.final_correct;
            if (t.advice == t.ground_truth) ++pooled_tallies.advice_correct;
        }
        r.pooled = metric_from_tallies(pooled_tallies, metric);
        r.mean = r.pooled.value();  // NaN when undefined
        r.std_error = std::nullopt;
        return r;
    }

    if (r.n_units == 0) {
        r.mean = std::numeric_limits<double>::quiet_NaN();
        r.std_error = std::nullopt;
        return r;
    }
    r.mean = sample_mean(defined_values);
    r.std_error = r.n_units < 2 ? 0.0
                                : std::sqrt(sample_variance(defined_values, r.mean) /
                                            static_cast<double>(r.n_units));
    return r;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    const auto na = static_cast<std::int64_t>(a.size());
    const auto nb = static_cast<std::int64_t>(b.size());
    if (na < 2 || nb < 2)
        throw PreconditionError("two-sample test needs >= 2 values per sample, got " +
                                std::to_string(na) + " and " + std::to_string(nb));
    const double ma = sample_mean(a);
    const double mb = sample_mean(b);
    const double va = sample_variance(a, ma);
    const double vb = sample_variance(b, mb);
    if (va == 0.0 && vb == 0.0) return degenerate_or_throw(ma, mb, na, nb);

    const double ga = va / static_cast<double>(na);
    const double gb = vb / static_cast<double>(nb);
    TTestResult r;
    r.t_statistic = (ma - mb) / std::sqrt(ga + gb);
    r.degrees_of_freedom = (ga + gb) * (ga + gb) /
                           (ga * ga / static_cast<double>(na - 1) +
                            gb * gb / static_cast<double>(nb - 1));
    r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
    r.group_means = {ma, mb};
    r.group_ns = {na, nb};
    return r;
}

TTestResult pooled_t_test(std::span<const double> a, std::span<const double> b) {
    const auto na = static_cast<std::int64_t>(a.size());
    const auto nb = static_cast<std::int64_t>(b.size());
    if (na < 2 || nb < 2)
        throw PreconditionError("two-sample test needs >= 2 values per sample, got " +
                                std::to_string(na) + " and " + std::to_string(nb));
    const double ma = sample_mean(a);
    const double mb = sample_mean(b);
    const double va = sample_variance(a, ma);
    const double vb = sample_variance(b, mb);
    if (va == 0.0 && vb == 0.0) return degenerate_or_throw(ma, mb, na, nb);

    const double df = static_cast<double>(na + nb - 2);
    const double pooled_var =
        (static_cast<double>(na - 1) * va + static_cast<double>(nb - 1) * vb) / df;
    TTestResult r;
    r.t_statistic = (ma - mb) / std::sqrt(pooled_var * (1.0 / static_cast<double>(na) +
                                                        1.0 / static_cast<double>(nb)));
    r.degrees_of_freedom = df;
    r.p_value = student_t_two_sided_p(r.t_statistic, df);
    r.group_means = {ma, mb};
    r.group_ns = {na, nb};
    return r;
}

TTestResult two_sample_test(std::span<const double> a, std::span<const double> b, TestKind kind) {
    return kind == TestKind::Welch ? welch_t_test(a, b) : pooled_t_test(a, b);
}

std::pair<double, double> bootstrap_ci(std::span<const double> values, double level,
                                       std::int64_t n_resamples, std::uint64_t seed) {
    const auto n = static_cast<std::uint32_t>(values.size());
    if (values.size() < 2) throw ArgumentError("bootstrap_ci needs >= 2 values");
    if (!(level > 0.0 && level < 1.0))
        throw ArgumentError("bootstrap_ci level must lie in (0, 1)");
    if (n_resamples < 100) throw ArgumentError("bootstrap_ci needs >= 100 resamples");

    std::vector<double> means;
    means.reserve(static_cast<std::size_t>(n_resamples));
    for (std::int64_t r = 0; r < n_resamples; ++r) {
        const PhiloxStream rng(seed, RngDomain::Bootstrap,
                               static_cast<std::uint32_t>(r >> 32),
                               static_cast<std::uint32_t>(r));
        double sum = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) sum += values[rng.below(i, n)];
        means.push_back(sum / static_cast<double>(n));
    }
    std::sort(means.begin(), means.end());

    // Percentile endpoints: the smallest mean with at least a q share of the
    // resampled means at or below it.
    const auto quantile = [&](double q) {
        auto rank = static_cast<std::int64_t>(std::ceil(q * static_cast<double>(n_resamples)));
        rank = std::clamp<std::int64_t>(rank, 1, n_resamples);
        return means[static_cast<std::size_t>(rank - 1)];
    };
    return {quantile((1.0 - level) / 2.0), quantile((1.0 + level) / 2.0)};
}

PowerEstimate power_estimate(const SimConfig& null_cfg, const SimConfig& alt_cfg, double alpha,
                             std::int64_t n_replications, std::uint64_t seed, Metric metric) {
    validate(null_cfg);
    validate(alt_cfg);
    if (null_cfg.n_participants != alt_cfg.n_participants ||
        null_cfg.n_trials != alt_cfg.n_trials || null_cfg.k_labels != alt_cfg.k_labels)
        throw ArgumentError(
            "power_estimate configs must share n_participants, n_trials and k_labels");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
    if (n_replications < 100) throw ArgumentError("power_estimate needs >= 100 replications");

    std::int64_t rejections = 0;
    for (std::int64_t rep = 0; rep < n_replications; ++rep) {
        SimConfig cfg_null = null_cfg;
        SimConfig cfg_alt = alt_cfg;
        cfg_null.seed = derive_seed(seed, static_cast<std::uint32_t>(rep), 0);
        cfg_alt.seed = derive_seed(seed, static_cast<std::uint32_t>(rep), 1);

        const SimStudy study_null = simulate_study(cfg_null);
        const SimStudy study_alt = simulate_study(cfg_alt);
        const LabelSet labels_null(study_null.label_set);
        const LabelSet labels_alt(study_alt.label_set);

        std::vector<double> a, b;
        for (const auto& [id, v] : per_participant_metric(study_null.trials, labels_null, metric))
            if (v.defined()) a.push_back(v.value());
        for (const auto& [id, v] : per_participant_metric(study_alt.trials, labels_alt, metric))
            if (v.defined()) b.push_back(v.value());

        if (welch_t_test(a, b).p_value < alpha) ++rejections;
    }

    PowerEstimate e;
    e.metric = metric;
    e.null_config = null_cfg;
    e.alt_config = alt_cfg;
    e.alpha = alpha;
    e.power = static_cast<double>(rejections) / static_cast<double>(n_replications);
    e.n_replications = n_replications;
    e.seed = seed;
    return e;
}

}  // namespace arq
