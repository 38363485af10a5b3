#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arq/labels.hpp"
#include "arq/trial.hpp"

namespace arq {

// Generative parameters for a synthetic judge-advisor study.
//
// Each trial is judge-then-act: the participant decides alone, sees the
// advice, judges whether it is correct, and then follows it with probability
// `follow_when_judged_correct` or `follow_when_judged_incorrect`, otherwise
// keeping the initial decision. Advice errors are systematic (judged with
// `discrimination_neg`) or random (judged at chance 0.5 — patternless errors
// carry nothing to discriminate on).
struct SimConfig {
    std::string condition = "sim";
    std::int64_t n_participants = 1;
    std::int64_t n_trials = 1;  // per participant
    std::int64_t k_labels = 2;
    double ai_accuracy = 0.8;
    double human_accuracy = 0.7;
    double systematic_error_fraction = 1.0;  // share of advice errors with learnable structure
    double discrimination_pos = 0.5;         // P(judge correct advice as correct)
    double discrimination_neg = 0.5;         // P(judge systematic wrong advice as wrong)
    double follow_when_judged_correct = 1.0;
    double follow_when_judged_incorrect = 0.0;
    std::uint64_t seed = 0;
};

// Throws ArgumentError on out-of-range fields.
void validate(const SimConfig& cfg);

enum class AdviceErrorType { None, Systematic, Random };
enum class FinalAction { Confirmed, Kept, Adopted };

// Hidden generative state of one trial, for debugging and verification.
struct TrialProvenance {
    std::string participant_id;
    std::string trial_id;
    bool advice_correct = false;
    AdviceErrorType error_type = AdviceErrorType::None;
    std::optional<bool> judged_correct;  // empty on confirmation trials
    FinalAction action = FinalAction::Confirmed;
};

struct SimStudy {
    SimConfig config;
    std::vector<Label> label_set;
    std::vector<Trial> trials;          // n_participants * n_trials, fixed order
    std::vector<TrialProvenance> provenance;
};

// Deterministic: the same config always yields the same study, independent of
// how the work is scheduled. Every random draw is addressed by
// (seed, participant, trial, slot) through a counter-based stream.
SimStudy simulate_study(const SimConfig& cfg);

struct ExpectedMetrics {
    double rair = 0.0;
    double rsr = 0.0;
};

// Closed-form expectations of the generative model over contradiction trials:
//   E[RAIR] = d_pos * f + (1 - d_pos) * g
//   E[RSR]  = 1 - (d_eff * g + (1 - d_eff) * f),  d_eff = s * d_neg + (1 - s) / 2
ExpectedMetrics expected_metrics(const SimConfig& cfg);

const char* to_string(AdviceErrorType t);
const char* to_string(FinalAction a);

}  // namespace arq
