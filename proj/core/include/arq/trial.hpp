#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "arq/labels.hpp"

namespace arq {

// One sequential decision record: the participant first decides alone, then
// sees the advice and issues a final decision.
struct Trial {
    std::string participant_id;
    std::string condition_id;
    std::string trial_id;
    Label ground_truth;
    Label initial_decision;
    Label advice;
    Label final_decision;
};

// How the advice relates to the initial decision.
enum class AdviceRelation {
    Confirmation,          // advice equals the initial decision
    PositiveAdvice,        // initial wrong, advice correct
    NegativeAdvice,        // initial correct, advice wrong
    NeutralContradiction,  // advice differs but both are wrong (needs k > 2)
};

// Outcome category of a trial. Only contradiction trials where exactly one
// side is correct say anything about reliance; the rest are NotApplicable.
enum class RelianceClass {
    PositiveAIReliance,    // wrong start, correct advice, correct finish
    NegativeSelfReliance,  // wrong start, correct advice, wrong finish
    PositiveSelfReliance,  // correct start, wrong advice, correct finish
    NegativeAIReliance,    // correct start, wrong advice, wrong finish
    NotApplicable,
};

struct OutcomeCounts {
    std::int64_t n_pos_ai_reliance = 0;
    std::int64_t n_neg_self_reliance = 0;
    std::int64_t n_pos_self_reliance = 0;
    std::int64_t n_neg_ai_reliance = 0;
    std::int64_t n_confirmation_correct = 0;    // advice == initial, both correct
    std::int64_t n_confirmation_incorrect = 0;  // advice == initial, both wrong
    std::int64_t n_neutral_contradiction = 0;   // advice != initial, both wrong
    std::int64_t n_total = 0;

    // Contradiction trials whose final decision matches neither side
    // (possible only when k > 2). These stay inside the negative reliance
    // counts above; reports surface them separately when nonzero.
    std::int64_t n_pa_final_neither = 0;
    std::int64_t n_na_final_neither = 0;
};

// Classification depends only on correctness of the three decisions and on
// advice-vs-initial equality, never on label identities. Both throw
// SchemaError naming the offending field when a label falls outside `labels`.
AdviceRelation advice_relation(const Trial& t, const LabelSet& labels);
RelianceClass classify_trial(const Trial& t, const LabelSet& labels);

// Tallies the whole log; schema errors are rethrown with the trial_id of the
// offending record.
OutcomeCounts count_outcomes(std::span<const Trial> trials, const LabelSet& labels);

const char* to_string(AdviceRelation relation);
const char* to_string(RelianceClass cls);

}  // namespace arq
