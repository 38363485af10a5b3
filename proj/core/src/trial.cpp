#include "arq/trial.hpp"

#include "arq/errors.hpp"

namespace arq {

namespace {

void check_label(const Label& label, const char* field, const LabelSet& labels) {
    if (!labels.contains(label)) {
        throw SchemaError(SchemaErrorKind::UnknownLabel,
                          std::string("label '") + label + "' in field '" + field +
                              "' is outside the declared label set",
                          field);
    }
}

void check_trial(const Trial& t, const LabelSet& labels) {
    check_label(t.ground_truth, "ground_truth", labels);
    check_label(t.initial_decision, "initial_decision", labels);
    check_label(t.advice, "advice", labels);
    check_label(t.final_decision, "final_decision", labels);
}

}  // namespace

AdviceRelation advice_relation(const Trial& t, const LabelSet& labels) {
    check_trial(t, labels);
    if (t.advice == t.initial_decision) return AdviceRelation::Confirmation;
    const bool initial_correct = t.initial_decision == t.ground_truth;
    const bool advice_correct = t.advice == t.ground_truth;
    if (!initial_correct && advice_correct) return AdviceRelation::PositiveAdvice;
    if (initial_correct && !advice_correct) return AdviceRelation::NegativeAdvice;
    // Contradicting decisions that are both wrong; impossible for k == 2.
    return AdviceRelation::NeutralContradiction;
}

RelianceClass classify_trial(const Trial& t, const LabelSet& labels) {
    const AdviceRelation relation = advice_relation(t, labels);
    const bool final_correct = t.final_decision == t.ground_truth;
    switch (relation) {
        case AdviceRelation::PositiveAdvice:
            return final_correct ? RelianceClass::PositiveAIReliance
                                 : RelianceClass::NegativeSelfReliance;
        case AdviceRelation::NegativeAdvice:
            return final_correct ? RelianceClass::PositiveSelfReliance
                                 : RelianceClass::NegativeAIReliance;
        case AdviceRelation::Confirmation:
        case AdviceRelation::NeutralContradiction:
            return RelianceClass::NotApplicable;
    }
    return RelianceClass::NotApplicable;  // unreachable
}

OutcomeCounts count_outcomes(std::span<const Trial> trials, const LabelSet& labels) {
    OutcomeCounts c;
    for (const Trial& t : trials) {
        AdviceRelation relation;
        RelianceClass cls;
        try {
            relation = advice_relation(t, labels);
            cls = classify_trial(t, labels);
        } catch (const SchemaError& e) {
            throw SchemaError(e.kind(),
                              std::string(e.what()) + " (trial '" + t.trial_id +
                                  "' of participant '" + t.participant_id + "')",
                              e.field());
        }
        ++c.n_total;
        const bool final_neither =
            t.final_decision != t.initial_decision && t.final_decision != t.advice;
        switch (relation) {
            case AdviceRelation::Confirmation:
                if (t.initial_decision == t.ground_truth)
                    ++c.n_confirmation_correct;
                else
                    ++c.n_confirmation_incorrect;
                break;
            case AdviceRelation::NeutralContradiction:
                ++c.n_neutral_contradiction;
                break;
            case AdviceRelation::PositiveAdvice:
                if (cls == RelianceClass::PositiveAIReliance) {
                    ++c.n_pos_ai_reliance;
                } else {
                    ++c.n_neg_self_reliance;
                    if (final_neither) ++c.n_pa_final_neither;
                }
                break;
            case AdviceRelation::NegativeAdvice:
                if (cls == RelianceClass::PositiveSelfReliance) {
                    ++c.n_pos_self_reliance;
                } else {
                    ++c.n_neg_ai_reliance;
                    if (final_neither) ++c.n_na_final_neither;
                }
                break;
        }
    }
    return c;
}

const char* to_string(AdviceRelation relation) {
    switch (relation) {
        case AdviceRelation::Confirmation: return "confirmation";
        case AdviceRelation::PositiveAdvice: return "positive_advice";
        case AdviceRelation::NegativeAdvice: return "negative_advice";
        case AdviceRelation::NeutralContradiction: return "neutral_contradiction";
    }
    return "?";
}

const char* to_string(RelianceClass cls) {
    switch (cls) {
        case RelianceClass::PositiveAIReliance: return "positive_ai_reliance";
        case RelianceClass::NegativeSelfReliance: return "negative_self_reliance";
        case RelianceClass::PositiveSelfReliance: return "positive_self_reliance";
        case RelianceClass::NegativeAIReliance: return "negative_ai_reliance";
        case RelianceClass::NotApplicable: return "not_applicable";
    }
    return "?";
}

}  // namespace arq
