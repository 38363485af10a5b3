#include "arq/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "arq/errors.hpp"
#include "arq/version.hpp"

namespace arq {

namespace {

using nlohmann::json;

constexpr Metric kAllMetrics[] = {Metric::Rair,          Metric::Rsr,
                                  Metric::AdviceUtilization, Metric::InitialAccuracy,
                                  Metric::FinalAccuracy, Metric::AiAccuracy};
constexpr Metric kComparedMetrics[] = {Metric::Rair, Metric::Rsr, Metric::AdviceUtilization};

std::string fmt_double(double v, int precision) {
    if (std::isnan(v)) return "undefined";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

json metric_value_json(const MetricValue& v) {
    json j;
    j["numerator"] = v.num;
    j["denominator"] = v.den;
    if (v.defined())
        j["value"] = v.value();
    else
        j["value"] = nullptr;
    return j;
}

MetricValue metric_value_from(const json& j) {
    return MetricValue{j.at("numerator").get<std::int64_t>(),
                       j.at("denominator").get<std::int64_t>()};
}

json rational_json(const Rational& r) { return json{{"numerator", r.num}, {"denominator", r.den}}; }

Rational rational_from(const json& j) {
    return Rational::make(j.at("numerator").get<std::int64_t>(),
                          j.at("denominator").get<std::int64_t>());
}

json scores_json(const RelianceScores& s) {
    json j;
    j["rair"] = metric_value_json(s.rair);
    j["rsr"] = metric_value_json(s.rsr);
    j["advice_utilization"] = metric_value_json(s.advice_utilization);
    j["initial_accuracy"] = metric_value_json(s.initial_accuracy);
    j["final_accuracy"] = metric_value_json(s.final_accuracy);
    j["ai_accuracy"] = metric_value_json(s.ai_accuracy);
    return j;
}

RelianceScores scores_from(const json& j) {
    RelianceScores s;
    s.rair = metric_value_from(j.at("rair"));
    s.rsr = metric_value_from(j.at("rsr"));
    s.advice_utilization = metric_value_from(j.at("advice_utilization"));
    s.initial_accuracy = metric_value_from(j.at("initial_accuracy"));
    s.final_accuracy = metric_value_from(j.at("final_accuracy"));
    s.ai_accuracy = metric_value_from(j.at("ai_accuracy"));
    return s;
}

json counts_json(const OutcomeCounts& c) {
    json j;
    j["n_pos_ai_reliance"] = c.n_pos_ai_reliance;
    j["n_neg_self_reliance"] = c.n_neg_self_reliance;
    j["n_pos_self_reliance"] = c.n_pos_self_reliance;
    j["n_neg_ai_reliance"] = c.n_neg_ai_reliance;
    j["n_confirmation_correct"] = c.n_confirmation_correct;
    j["n_confirmation_incorrect"] = c.n_confirmation_incorrect;
    j["n_neutral_contradiction"] = c.n_neutral_contradiction;
    j["n_total"] = c.n_total;
    j["n_pa_final_neither"] = c.n_pa_final_neither;
    j["n_na_final_neither"] = c.n_na_final_neither;
    return j;
}

OutcomeCounts counts_from(const json& j) {
    OutcomeCounts c;
    c.n_pos_ai_reliance = j.at("n_pos_ai_reliance").get<std::int64_t>();
    c.n_neg_self_reliance = j.at("n_neg_self_reliance").get<std::int64_t>();
    c.n_pos_self_reliance = j.at("n_pos_self_reliance").get<std::int64_t>();
    c.n_neg_ai_reliance = j.at("n_neg_ai_reliance").get<std::int64_t>();
    c.n_confirmation_correct = j.at("n_confirmation_correct").get<std::int64_t>();
    c.n_confirmation_incorrect = j.at("n_confirmation_incorrect").get<std::int64_t>();
    c.n_neutral_contradiction = j.at("n_neutral_contradiction").get<std::int64_t>();
    c.n_total = j.at("n_total").get<std::int64_t>();
    c.n_pa_final_neither = j.at("n_pa_final_neither").get<std::int64_t>();
    c.n_na_final_neither = j.at("n_na_final_neither").get<std::int64_t>();
    return c;
}

json aggregate_json(const AggregateResult& a) {
    json j;
    j["metric"] = to_string(a.metric);
    j["mode"] = a.mode == AggregationMode::Macro ? "macro" : "micro";
    j["n_units"] = a.n_units;
    j["mean"] = std::isnan(a.mean) ? json(nullptr) : json(a.mean);
    j["std_error"] = a.std_error ? json(*a.std_error) : json(nullptr);
    if (a.mode == AggregationMode::Micro) j["pooled"] = metric_value_json(a.pooled);
    json per_unit = json::array();
    for (const auto& [id, v] : a.per_unit_values) per_unit.push_back(json::array({id, v}));
    j["per_unit"] = std::move(per_unit);
    j["excluded"] = a.excluded_units;
    if (a.bootstrap_ci)
        j["bootstrap_ci"] = json::array({a.bootstrap_ci->first, a.bootstrap_ci->second});
    return j;
}

AggregateResult aggregate_from(const json& j) {
    AggregateResult a;
    a.metric = metric_from_string(j.at("metric").get<std::string>());
    a.mode = j.at("mode").get<std::string>() == "micro" ? AggregationMode::Micro
                                                        : AggregationMode::Macro;
    a.n_units = j.at("n_units").get<std::int64_t>();
    a.mean = j.at("mean").is_null() ? std::nan("") : j.at("mean").get<double>();
    if (!j.at("std_error").is_null()) a.std_error = j.at("std_error").get<double>();
    if (j.contains("pooled")) a.pooled = metric_value_from(j.at("pooled"));
    for (const auto& pair : j.at("per_unit"))
        a.per_unit_values.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<double>());
    for (const auto& id : j.at("excluded")) a.excluded_units.push_back(id.get<std::string>());
    if (j.contains("bootstrap_ci"))
        a.bootstrap_ci = {j.at("bootstrap_ci").at(0).get<double>(),
                          j.at("bootstrap_ci").at(1).get<double>()};
    return a;
}

json diagnosis_json(const RelianceDiagnosis& d) {
    json j;
    j["threshold"] = rational_json(d.threshold);
    j["rair_status"] = to_string(d.rair_status);
    j["rsr_status"] = to_string(d.rsr_status);
    switch (d.appropriate) {
        case Tristate::True: j["appropriate"] = true; break;
        case Tristate::False: j["appropriate"] = false; break;
        case Tristate::Undefined: j["appropriate"] = nullptr; break;
    }
    return j;
}

RelianceDiagnosis diagnosis_from(const json& j) {
    RelianceDiagnosis d;
    d.threshold = rational_from(j.at("threshold"));
    const std::string rair_s = j.at("rair_status").get<std::string>();
    d.rair_status = rair_s == "under_reliance" ? RairStatus::UnderReliance
                    : rair_s == "above_baseline" ? RairStatus::AboveBaseline
                                                 : RairStatus::Undefined;
    const std::string rsr_s = j.at("rsr_status").get<std::string>();
    d.rsr_status = rsr_s == "over_reliance" ? RsrStatus::OverReliance
                   : rsr_s == "above_baseline" ? RsrStatus::AboveBaseline
                                               : RsrStatus::Undefined;
    const auto& ap = j.at("appropriate");
    d.appropriate = ap.is_null() ? Tristate::Undefined
                                 : (ap.get<bool>() ? Tristate::True : Tristate::False);
    return d;
}

std::vector<double> defined_values(const AggregateResult& a) {
    std::vector<double> out;
    out.reserve(a.per_unit_values.size());
    for (const auto& [id, v] : a.per_unit_values) out.push_back(v);
    return out;
}

}  // namespace

AnalysisReport build_report(const TrialLog& log, const ReportOptions& options,
                            std::string input_digest) {
    AnalysisReport report;
    report.tool_version = kVersion;
    report.input_digest = std::move(input_digest);
    report.options = options;
    report.label_set = log.labels.labels();
    report.n_trials = static_cast<std::int64_t>(log.trials.size());

    std::map<std::string, std::vector<Trial>> by_condition;
    std::map<std::string, bool> participants_seen;
    for (const Trial& t : log.trials) {
        by_condition[t.condition_id].push_back(t);
        participants_seen[t.participant_id] = true;
    }
    report.n_participants = static_cast<std::int64_t>(participants_seen.size());

    const OutcomeCounts overall = count_outcomes(log.trials, log.labels);
    const std::int64_t overall_contradictions =
        overall.n_pos_ai_reliance + overall.n_neg_self_reliance + overall.n_pos_self_reliance +
        overall.n_neg_ai_reliance + overall.n_neutral_contradiction;
    if (report.n_trials > 0 && overall_contradictions == 0)
        report.warnings.push_back(
            "no contradiction trials anywhere in the log: every reliance metric is undefined");
    if (overall.n_pa_final_neither + overall.n_na_final_neither > 0)
        report.warnings.push_back(
            "contradiction trials whose final decision matches neither the initial decision nor "
            "the advice: " +
            std::to_string(overall.n_pa_final_neither + overall.n_na_final_neither) +
            " (counted by correctness; see per-condition counts)");

    for (const auto& [condition, trials] : by_condition) {
        ConditionReport cr;
        cr.condition = condition;
        cr.n_trials = static_cast<std::int64_t>(trials.size());
        std::map<std::string, bool> unit_seen;
        for (const Trial& t : trials) unit_seen[t.participant_id] = true;
        cr.n_participants = static_cast<std::int64_t>(unit_seen.size());
        cr.counts = count_outcomes(trials, log.labels);
        cr.pooled = compute_scores(trials, log.labels);
        cr.diagnosis = diagnose(cr.pooled, options.threshold);
        for (const Metric m : kAllMetrics) {
            AggregateResult a = aggregate(trials, log.labels, m, options.aggregation);
            if (options.bootstrap && a.n_units >= 2) {
                a.bootstrap_ci =
                    bootstrap_ci(defined_values(a), options.bootstrap->level,
                                 options.bootstrap->n_resamples, options.bootstrap->seed);
            }
            cr.aggregates.push_back(std::move(a));
        }
        report.conditions.push_back(std::move(cr));
    }

    // Pairwise condition comparisons over per-participant values.
    for (std::size_t i = 0; i < report.conditions.size(); ++i) {
        for (std::size_t j = i + 1; j < report.conditions.size(); ++j) {
            const ConditionReport& a = report.conditions[i];
            const ConditionReport& b = report.conditions[j];
            for (const Metric m : kComparedMetrics) {
                const auto metric_index = static_cast<std::size_t>(m);
                const AggregateResult& agg_a = a.aggregates[metric_index];
                const AggregateResult& agg_b = b.aggregates[metric_index];
                if (agg_a.n_units < 2 || agg_b.n_units < 2) {
                    const std::string& offender =
                        agg_a.n_units < 2 ? a.condition : b.condition;
                    report.skipped_comparisons.push_back(
                        {m, a.condition, b.condition,
                         "condition '" + offender +
                             "' has fewer than 2 participants with a defined value"});
                    continue;
                }
                try {
                    ConditionComparison cc;
                    cc.metric = m;
                    cc.condition_a = a.condition;
                    cc.condition_b = b.condition;
                    cc.test = two_sample_test(defined_values(agg_a), defined_values(agg_b),
                                              options.test);
                    report.comparisons.push_back(std::move(cc));
                } catch (const PreconditionError& e) {
                    report.skipped_comparisons.push_back({m, a.condition, b.condition, e.what()});
                }
            }
        }
    }
    return report;
}

std::string report_to_json(const AnalysisReport& report) {
    json j;
    j["schema"] = "ar-report/1";
    j["tool_version"] = report.tool_version;
    j["input_digest"] = report.input_digest;

    json opts;
    opts["threshold"] = rational_json(report.options.threshold);
    opts["aggregation"] =
        report.options.aggregation == AggregationMode::Macro ? "macro" : "micro";
    opts["test"] = to_string(report.options.test);
    if (report.options.bootstrap) {
        opts["bootstrap"] = json{{"level", report.options.bootstrap->level},
                                 {"n_resamples", report.options.bootstrap->n_resamples},
                                 {"seed", report.options.bootstrap->seed}};
    } else {
        opts["bootstrap"] = nullptr;
    }
    j["options"] = std::move(opts);

    j["label_set"] = report.label_set;
    j["n_trials"] = report.n_trials;
    j["n_participants"] = report.n_participants;

    json conditions = json::array();
    for (const ConditionReport& cr : report.conditions) {
        json c;
        c["condition"] = cr.condition;
        c["n_participants"] = cr.n_participants;
        c["n_trials"] = cr.n_trials;
        c["counts"] = counts_json(cr.counts);
        c["pooled"] = scores_json(cr.pooled);
        json aggs = json::array();
        for (const AggregateResult& a : cr.aggregates) aggs.push_back(aggregate_json(a));
        c["aggregates"] = std::move(aggs);
        c["diagnosis"] = diagnosis_json(cr.diagnosis);
        conditions.push_back(std::move(c));
    }
    j["conditions"] = std::move(conditions);

    json comparisons = json::array();
    for (const ConditionComparison& cc : report.comparisons) {
        json c;
        c["metric"] = to_string(cc.metric);
        c["condition_a"] = cc.condition_a;
        c["condition_b"] = cc.condition_b;
        c["t_statistic"] = cc.test.t_statistic;
        c["degrees_of_freedom"] = cc.test.degrees_of_freedom;
        c["p_value"] = cc.test.p_value;
        c["mean_a"] = cc.test.group_means.first;
        c["mean_b"] = cc.test.group_means.second;
        c["n_a"] = cc.test.group_ns.first;
        c["n_b"] = cc.test.group_ns.second;
        comparisons.push_back(std::move(c));
    }
    j["comparisons"] = std::move(comparisons);

    json skipped = json::array();
    for (const SkippedComparison& sc : report.skipped_comparisons) {
        skipped.push_back(json{{"metric", to_string(sc.metric)},
                               {"condition_a", sc.condition_a},
                               {"condition_b", sc.condition_b},
                               {"reason", sc.reason}});
    }
    j["skipped_comparisons"] = std::move(skipped);
    j["warnings"] = report.warnings;

    return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(SchemaErrorKind::BadRow, std::string("invalid report JSON: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != "ar-report/1")
            throw SchemaError(SchemaErrorKind::BadRow,
                              "unsupported report schema '" +
                                  j.at("schema").get<std::string>() + "'");
        AnalysisReport report;
        report.tool_version = j.at("tool_version").get<std::string>();
        report.input_digest = j.at("input_digest").get<std::string>();
        const json& opts = j.at("options");
        report.options.threshold = rational_from(opts.at("threshold"));
        report.options.aggregation = opts.at("aggregation").get<std::string>() == "micro"
                                         ? AggregationMode::Micro
                                         : AggregationMode::Macro;
        report.options.test = opts.at("test").get<std::string>() == "pooled" ? TestKind::Pooled
                                                                             : TestKind::Welch;
        if (!opts.at("bootstrap").is_null()) {
            BootstrapOptions b;
            b.level = opts.at("bootstrap").at("level").get<double>();
            b.n_resamples = opts.at("bootstrap").at("n_resamples").get<std::int64_t>();
            b.seed = opts.at("bootstrap").at("seed").get<std::uint64_t>();
            report.options.bootstrap = b;
        }
        for (const auto& l : j.at("label_set")) report.label_set.push_back(l.get<std::string>());
        report.n_trials = j.at("n_trials").get<std::int64_t>();
        report.n_participants = j.at("n_participants").get<std::int64_t>();
        for (const auto& c : j.at("conditions")) {
            ConditionReport cr;
            cr.condition = c.at("condition").get<std::string>();
            cr.n_participants = c.at("n_participants").get<std::int64_t>();
            cr.n_trials = c.at("n_trials").get<std::int64_t>();
            cr.counts = counts_from(c.at("counts"));
            cr.pooled = scores_from(c.at("pooled"));
            for (const auto& a : c.at("aggregates")) cr.aggregates.push_back(aggregate_from(a));
            cr.diagnosis = diagnosis_from(c.at("diagnosis"));
            report.conditions.push_back(std::move(cr));
        }
        for (const auto& c : j.at("comparisons")) {
            ConditionComparison cc;
            cc.metric = metric_from_string(c.at("metric").get<std::string>());
            cc.condition_a = c.at("condition_a").get<std::string>();
            cc.condition_b = c.at("condition_b").get<std::string>();
            cc.test.t_statistic = c.at("t_statistic").get<double>();
            cc.test.degrees_of_freedom = c.at("degrees_of_freedom").get<double>();
            cc.test.p_value = c.at("p_value").get<double>();
            cc.test.group_means = {c.at("mean_a").get<double>(), c.at("mean_b").get<double>()};
            cc.test.group_ns = {c.at("n_a").get<std::int64_t>(), c.at("n_b").get<std::int64_t>()};
            report.comparisons.push_back(std::move(cc));
        }
        for (const auto& s : j.at("skipped_comparisons")) {
            SkippedComparison sc;
            sc.metric = metric_from_string(s.at("metric").get<std::string>());
            sc.condition_a = s.at("condition_a").get<std::string>();
            sc.condition_b = s.at("condition_b").get<std::string>();
            sc.reason = s.at("reason").get<std::string>();
            report.skipped_comparisons.push_back(std::move(sc));
        }
        for (const auto& w : j.at("warnings")) report.warnings.push_back(w.get<std::string>());
        return report;
    } catch (const json::exception& e) {
        throw SchemaError(SchemaErrorKind::BadRow,
                          std::string("report JSON misses required fields: ") + e.what());
    }
}

std::string report_to_text(const AnalysisReport& report) {
    std::ostringstream out;
    out << "appropriate-reliance report (ar-report/1)\n";
    out << "tool " << report.tool_version << "   input " << report.input_digest << "\n";
    out << "labels:";
    for (const auto& l : report.label_set) out << " " << l;
    out << "\n";
    out << "trials " << report.n_trials << ", participants " << report.n_participants << "\n";
    out << "options: threshold=" << report.options.threshold.str() << " aggregation="
        << (report.options.aggregation == AggregationMode::Macro ? "macro" : "micro")
        << " test=" << to_string(report.options.test) << "\n";
    for (const auto& w : report.warnings) out << "warning: " << w << "\n";

    for (const ConditionReport& cr : report.conditions) {
        out << "\ncondition \"" << cr.condition << "\" (" << cr.n_participants
            << " participants, " << cr.n_trials << " trials)\n";
        const OutcomeCounts& c = cr.counts;
        out << "  counts: pos_ai=" << c.n_pos_ai_reliance << " neg_self=" << c.n_neg_self_reliance
            << " pos_self=" << c.n_pos_self_reliance << " neg_ai=" << c.n_neg_ai_reliance
            << " conf_ok=" << c.n_confirmation_correct << " conf_bad="
            << c.n_confirmation_incorrect << " neutral=" << c.n_neutral_contradiction << "\n";
        for (const AggregateResult& a : cr.aggregates) {
            out << "  " << to_string(a.metric) << ": mean " << fmt_double(a.mean, 4);
            if (a.std_error) out << "  se " << fmt_double(*a.std_error, 4);
            out << "  n_units " << a.n_units;
            if (a.mode == AggregationMode::Micro)
                out << "  pooled " << a.pooled.num << "/" << a.pooled.den;
            if (a.bootstrap_ci)
                out << "  ci [" << fmt_double(a.bootstrap_ci->first, 4) << ", "
                    << fmt_double(a.bootstrap_ci->second, 4) << "]";
            if (!a.excluded_units.empty())
                out << "  excluded " << a.excluded_units.size() << " undefined";
            out << "\n";
        }
        out << "  diagnosis: rair " << to_string(cr.diagnosis.rair_status) << ", rsr "
            << to_string(cr.diagnosis.rsr_status)
            << " -> appropriate: " << to_string(cr.diagnosis.appropriate) << "\n";
    }

    if (!report.comparisons.empty()) {
        out << "\ncomparisons (" << to_string(report.options.test) << ", two-sided)\n";
        for (const ConditionComparison& cc : report.comparisons) {
            out << "  " << to_string(cc.metric) << "  " << cc.condition_a << " vs "
                << cc.condition_b << ": t=" << fmt_double(cc.test.t_statistic, 4)
                << " df=" << fmt_double(cc.test.degrees_of_freedom, 2)
                << " p=" << fmt_double(cc.test.p_value, 4) << " means "
                << fmt_double(cc.test.group_means.first, 4) << "/"
                << fmt_double(cc.test.group_means.second, 4) << " n " << cc.test.group_ns.first
                << "/" << cc.test.group_ns.second << "\n";
        }
    }
    for (const SkippedComparison& sc : report.skipped_comparisons) {
        out << "skipped " << to_string(sc.metric) << " " << sc.condition_a << " vs "
            << sc.condition_b << ": " << sc.reason << "\n";
    }
    return out.str();
}

}  // namespace arq
