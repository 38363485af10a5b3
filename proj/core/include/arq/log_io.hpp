#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "arq/labels.hpp"
#include "arq/trial.hpp"

namespace arq {

// A parsed trial log: the rows plus the label set they draw from.
struct TrialLog {
    LabelSet labels;
    std::vector<Trial> trials;
};

enum class LogFormat { Csv, Json };

// CSV canonical header (writers emit exactly this order; readers accept any
// column order as long as all seven names are present):
//   participant_id,condition,trial_id,ground_truth,initial_decision,advice,final_decision
// An optional leading directive line declares the label set:
//   # labels: fake,genuine
// Without a declaration the label set is inferred as the sorted union of the
// labels observed in the data.
inline constexpr std::string_view kCsvHeader =
    "participant_id,condition,trial_id,ground_truth,initial_decision,advice,final_decision";

// Parses and validates a whole log. Throws SchemaError with the first
// offending location for: missing columns, unknown labels, duplicate
// (participant, trial) keys, empty input, malformed rows.
TrialLog parse_log(std::string_view text, LogFormat format);
TrialLog load_log(const std::string& path, LogFormat format);
TrialLog load_log(const std::string& path);  // format from file extension

std::string write_log(const TrialLog& log, LogFormat format);
void save_log(const TrialLog& log, const std::string& path, LogFormat format);

// 64-bit FNV-1a over the raw input bytes, rendered as "fnv1a64:<hex>".
// Embedded in reports so results can be tied back to their exact input.
std::string content_digest(std::string_view bytes);

std::string read_file(const std::string& path);                      // throws IoError
void write_file(const std::string& path, std::string_view content);  // throws IoError

}  // namespace arq
