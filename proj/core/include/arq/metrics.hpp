#pragma once

#include <span>

#include "arq/rational.hpp"
#include "arq/trial.hpp"

namespace arq {

// The per-unit metric set. All ratios are exact; any of them can be
// undefined when its denominator category is empty.
struct RelianceScores {
    MetricValue rair;                // pos_ai / (pos_ai + neg_self)
    MetricValue rsr;                 // pos_self / (pos_self + neg_ai)
    MetricValue advice_utilization;  // (pos_ai + neg_ai) / all four contradiction categories
    MetricValue initial_accuracy;
    MetricValue final_accuracy;
    MetricValue ai_accuracy;
};

enum class RairStatus { UnderReliance, AboveBaseline, Undefined };
enum class RsrStatus { OverReliance, AboveBaseline, Undefined };
enum class Tristate { False, True, Undefined };

// Verdict of both reliance metrics against a baseline threshold. Being at
// the threshold counts as under-/over-reliance: a judge must beat chance,
// not match it.
struct RelianceDiagnosis {
    Rational threshold;
    RairStatus rair_status = RairStatus::Undefined;
    RsrStatus rsr_status = RsrStatus::Undefined;
    Tristate appropriate = Tristate::Undefined;
};

// Of the trials where correct advice contradicted a wrong initial decision,
// the share ending correct.
MetricValue rair(const OutcomeCounts& c);

// Of the trials where wrong advice contradicted a correct initial decision,
// the share staying correct.
MetricValue rsr(const OutcomeCounts& c);

// Share of contradiction trials counted in the advice's favour.
MetricValue advice_utilization(const OutcomeCounts& c);

struct Accuracies {
    MetricValue initial;
    MetricValue final_decision;
    MetricValue advice;
};

// Fraction of trials where each decision equals ground truth. An empty list
// yields an undefined triple.
Accuracies accuracies(std::span<const Trial> trials);

// Baseline models for a judge deciding contradiction trials at random.
enum class BaselineModel {
    KeepSwitch,    // coin flip between keeping and switching: 1/2 for any k
    UniformLabel,  // uniform choice over all k labels: 1/k
};

// Expected metric value of the random judge. Throws DomainError for k < 2.
Rational random_baseline(std::size_t k, BaselineModel model = BaselineModel::KeepSwitch);

// Full score set for a trial list (counts + accuracies).
RelianceScores compute_scores(std::span<const Trial> trials, const LabelSet& labels);

// Compares both reliance metrics against the threshold, exactly. Undefined
// metrics propagate; `appropriate` is true only when both are defined and
// strictly above the threshold.
RelianceDiagnosis diagnose(const RelianceScores& scores, const Rational& threshold);

const char* to_string(RairStatus s);
const char* to_string(RsrStatus s);
const char* to_string(Tristate t);

}  // namespace arq
