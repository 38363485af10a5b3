#include "arq/simulator.hpp"

#include <limits>

#include "arq/errors.hpp"
#include "arq/rng.hpp"

namespace arq {

namespace {

// Fixed draw slots per (participant, trial) stream. Slots are addressed, not
// consumed, so an untaken branch never shifts later draws.
enum Slot : std::uint32_t {
    kTruth = 0,
    kInitialCorrect = 1,
    kInitialWrongLabel = 2,
    kAdviceCorrect = 3,
    kAdviceWrongLabel = 4,
    kSystematic = 5,
    kJudgment = 6,
    kAction = 7,
};

void check_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ArgumentError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
}

std::string padded_index(std::int64_t i, std::int64_t max_value) {
    std::string digits = std::to_string(max_value);
    std::string s = std::to_string(i);
    return std::string(digits.size() - s.size(), '0') + s;
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.n_participants < 1)
        throw ArgumentError("n_participants must be >= 1, got " +
                            std::to_string(cfg.n_participants));
    if (cfg.n_trials < 1)
        throw ArgumentError("n_trials must be >= 1, got " + std::to_string(cfg.n_trials));
    if (cfg.k_labels < 2)
        throw ArgumentError("k_labels must be >= 2, got " + std::to_string(cfg.k_labels));
    if (cfg.n_participants > std::numeric_limits<std::uint32_t>::max() ||
        cfg.n_trials > std::numeric_limits<std::uint32_t>::max())
        throw ArgumentError("study size exceeds the supported range");
    if (cfg.condition.empty()) throw ArgumentError("condition name must be non-empty");
    check_probability(cfg.ai_accuracy, "ai_accuracy");
    check_probability(cfg.human_accuracy, "human_accuracy");
    check_probability(cfg.systematic_error_fraction, "systematic_error_fraction");
    check_probability(cfg.discrimination_pos, "discrimination_pos");
    check_probability(cfg.discrimination_neg, "discrimination_neg");
    check_probability(cfg.follow_when_judged_correct, "follow_when_judged_correct");
    check_probability(cfg.follow_when_judged_incorrect, "follow_when_judged_incorrect");
}

SimStudy simulate_study(const SimConfig& cfg) {
    validate(cfg);

    SimStudy study;
    study.config = cfg;
    study.label_set.reserve(static_cast<std::size_t>(cfg.k_labels));
    for (std::int64_t i = 0; i < cfg.k_labels; ++i)
        study.label_set.push_back("l" + std::to_string(i));

    const auto n_total = static_cast<std::size_t>(cfg.n_participants * cfg.n_trials);
    study.trials.reserve(n_total);
    study.provenance.reserve(n_total);

    const auto k = static_cast<std::uint32_t>(cfg.k_labels);
    for (std::int64_t p = 0; p < cfg.n_participants; ++p) {
        const std::string participant_id =
            cfg.condition + "-p" + padded_index(p, cfg.n_participants - 1);
        for (std::int64_t t = 0; t < cfg.n_trials; ++t) {
            const PhiloxStream rng(cfg.seed, RngDomain::Simulation,
                                   static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(t));

            const std::uint32_t truth = rng.below(kTruth, k);

            std::uint32_t initial = truth;
            if (!rng.bernoulli(kInitialCorrect, cfg.human_accuracy)) {
                const std::uint32_t w = rng.below(kInitialWrongLabel, k - 1);
                initial = w < truth ? w : w + 1;
            }

            std::uint32_t advice = truth;
            AdviceErrorType error_type = AdviceErrorType::None;
            if (!rng.bernoulli(kAdviceCorrect, cfg.ai_accuracy)) {
                const std::uint32_t w = rng.below(kAdviceWrongLabel, k - 1);
                advice = w < truth ? w : w + 1;
                error_type = rng.bernoulli(kSystematic, cfg.systematic_error_fraction)
                                 ? AdviceErrorType::Systematic
                                 : AdviceErrorType::Random;
            }

            std::uint32_t final_decision = initial;
            std::optional<bool> judged_correct;
            FinalAction action = FinalAction::Confirmed;
            if (advice != initial) {
                // Judge the advice, then act on the judgment.
                double p_judge_correct;
                if (advice == truth) {
                    p_judge_correct = cfg.discrimination_pos;
                } else if (error_type == AdviceErrorType::Systematic) {
                    p_judge_correct = 1.0 - cfg.discrimination_neg;
                } else {
                    p_judge_correct = 0.5;  // random errors carry no pattern
                }
                const bool judged = rng.bernoulli(kJudgment, p_judge_correct);
                judged_correct = judged;
                const double p_follow = judged ? cfg.follow_when_judged_correct
                                               : cfg.follow_when_judged_incorrect;
                if (rng.bernoulli(kAction, p_follow)) {
                    final_decision = advice;
                    action = FinalAction::Adopted;
                } else {
                    action = FinalAction::Kept;
                }
            }

            const std::string trial_id = "t" + padded_index(t, cfg.n_trials - 1);
            study.trials.push_back(Trial{participant_id, cfg.condition, trial_id,
                                         study.label_set[truth], study.label_set[initial],
                                         study.label_set[advice],
                                         study.label_set[final_decision]});
            study.provenance.push_back(TrialProvenance{participant_id, trial_id, advice == truth,
                                                       error_type, judged_correct, action});
        }
    }
    return study;
}

ExpectedMetrics expected_metrics(const SimConfig& cfg) {
    validate(cfg);
    const double f = cfg.follow_when_judged_correct;
    const double g = cfg.follow_when_judged_incorrect;
    const double d_eff = cfg.systematic_error_fraction * cfg.discrimination_neg +
                         (1.0 - cfg.systematic_error_fraction) * 0.5;
    ExpectedMetrics e;
    e.rair = cfg.discrimination_pos * f + (1.0 - cfg.discrimination_pos) * g;
    e.rsr = 1.0 - (d_eff * g + (1.0 - d_eff) * f);
    return e;
}

const char* to_string(AdviceErrorType t) {
    switch (t) {
        case AdviceErrorType::None: return "none";
        case AdviceErrorType::Systematic: return "systematic";
        case AdviceErrorType::Random: return "random";
    }
    return "?";
}

const char* to_string(FinalAction a) {
    switch (a) {
        case FinalAction::Confirmed: return "confirmed";
        case FinalAction::Kept: return "kept";
        case FinalAction::Adopted: return "adopted";
    }
    return "?";
}

}  // namespace arq
