#include "arq/metrics.hpp"

#include "arq/errors.hpp"

namespace arq {

MetricValue rair(const OutcomeCounts& c) {
    return MetricValue{c.n_pos_ai_reliance, c.n_pos_ai_reliance + c.n_neg_self_reliance};
}

MetricValue rsr(const OutcomeCounts& c) {
    return MetricValue{c.n_pos_self_reliance, c.n_pos_self_reliance + c.n_neg_ai_reliance};
}

MetricValue advice_utilization(const OutcomeCounts& c) {
    const std::int64_t contradictions = c.n_pos_ai_reliance + c.n_neg_self_reliance +
                                        c.n_pos_self_reliance + c.n_neg_ai_reliance;
    return MetricValue{c.n_pos_ai_reliance + c.n_neg_ai_reliance, contradictions};
}

Accuracies accuracies(std::span<const Trial> trials) {
    Accuracies a;
    const auto n = static_cast<std::int64_t>(trials.size());
    if (n == 0) return a;  // undefined triple
    std::int64_t initial = 0, final_d = 0, advice = 0;
    for (const Trial& t : trials) {
        if (t.initial_decision == t.ground_truth) ++initial;
        if (t.final_decision == t.ground_truth) ++final_d;
        if (t.advice == t.ground_truth) ++advice;
    }
    a.initial = MetricValue{initial, n};
    a.final_decision = MetricValue{final_d, n};
    a.advice = MetricValue{advice, n};
    return a;
}

Rational random_baseline(std::size_t k, BaselineModel model) {
    if (k < 2) throw DomainError("random baseline needs a label set of size >= 2");
    switch (model) {
        case BaselineModel::KeepSwitch:
            // A coin flip between keeping and switching. Both reliance
            // metrics condition on exactly one side being correct, so the
            // expectation is 1/2 regardless of k.
            return Rational::make(1, 2);
        case BaselineModel::UniformLabel:
            return Rational::make(1, static_cast<std::int64_t>(k));
    }
    return Rational::make(1, 2);  // unreachable
}

RelianceScores compute_scores(std::span<const Trial> trials, const LabelSet& labels) {
    const OutcomeCounts c = count_outcomes(trials, labels);
    const Accuracies acc = accuracies(trials);
    RelianceScores s;
    s.rair = rair(c);
    s.rsr = rsr(c);
    s.advice_utilization = advice_utilization(c);
    s.initial_accuracy = acc.initial;
    s.final_accuracy = acc.final_decision;
    s.ai_accuracy = acc.advice;
    return s;
}

RelianceDiagnosis diagnose(const RelianceScores& scores, const Rational& threshold) {
    if (threshold.num < 0 || compare(threshold, Rational{1, 1}) > 0)
        throw ArgumentError("threshold must lie in [0, 1], got " + threshold.str());
    RelianceDiagnosis d;
    d.threshold = threshold;
    if (scores.rair.defined()) {
        d.rair_status = scores.rair.exceeds(threshold) ? RairStatus::AboveBaseline
                                                       : RairStatus::UnderReliance;
    }
    if (scores.rsr.defined()) {
        d.rsr_status =
            scores.rsr.exceeds(threshold) ? RsrStatus::AboveBaseline : RsrStatus::OverReliance;
    }
    if (d.rair_status == RairStatus::Undefined || d.rsr_status == RsrStatus::Undefined) {
        d.appropriate = Tristate::Undefined;
    } else {
        d.appropriate = (d.rair_status == RairStatus::AboveBaseline &&
                         d.rsr_status == RsrStatus::AboveBaseline)
                            ? Tristate::True
                            : Tristate::False;
    }
    return d;
}

const char* to_string(RairStatus s) {
    switch (s) {
        case RairStatus::UnderReliance: return "under_reliance";
        case RairStatus::AboveBaseline: return "above_baseline";
        case RairStatus::Undefined: return "undefined";
    }
    return "?";
}

const char* to_string(RsrStatus s) {
    switch (s) {
        case RsrStatus::OverReliance: return "over_reliance";
        case RsrStatus::AboveBaseline: return "above_baseline";
        case RsrStatus::Undefined: return "undefined";
    }
    return "?";
}

const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::False: return "false";
        case Tristate::True: return "true";
        case Tristate::Undefined: return "undefined";
    }
    return "?";
}

}  // namespace arq
