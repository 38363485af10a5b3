#include "arq/log_io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "arq/errors.hpp"

namespace arq {

namespace {

constexpr std::array<const char*, 7> kColumns = {
    "participant_id", "condition",      "trial_id", "ground_truth",
    "initial_decision", "advice", "final_decision",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_fields(const std::string& line, long line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes)
        throw SchemaError(SchemaErrorKind::BadRow,
                          "line " + std::to_string(line_no) + ": unterminated quoted field", {},
                          line_no);
    fields.push_back(std::move(cur));
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void check_duplicates(const std::vector<Trial>& trials, const std::vector<long>& locations,
                      const char* unit) {
    std::map<std::pair<std::string, std::string>, long> seen;
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const auto key = std::make_pair(trials[i].participant_id, trials[i].trial_id);
        const auto [it, inserted] = seen.emplace(key, locations[i]);
        if (!inserted) {
            throw SchemaError(SchemaErrorKind::DuplicateKey,
                              "duplicate (participant, trial) key ('" + key.first + "', '" +
                                  key.second + "') at " + unit + "s " +
                                  std::to_string(it->second) + " and " +
                                  std::to_string(locations[i]),
                              {}, locations[i]);
        }
    }
}

void check_against_declared(const std::vector<Trial>& trials, const std::vector<long>& locations,
                            const LabelSet& labels, const char* unit) {
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const Trial& t = trials[i];
        const std::pair<const Label*, const char*> fields[] = {
            {&t.ground_truth, "ground_truth"},
            {&t.initial_decision, "initial_decision"},
            {&t.advice, "advice"},
            {&t.final_decision, "final_decision"},
        };
        for (const auto& [label, field] : fields) {
            if (!labels.contains(*label))
                throw SchemaError(SchemaErrorKind::UnknownLabel,
                                  std::string(unit) + " " + std::to_string(locations[i]) +
                                      ", field '" + field + "': label '" + *label +
                                      "' is not in the declared label set",
                                  field, locations[i]);
        }
    }
}

LabelSet finish_label_set(const std::vector<Trial>& trials, const std::vector<long>& locations,
                          std::vector<Label> declared, const char* unit) {
    if (!declared.empty()) {
        LabelSet labels(std::move(declared));
        check_against_declared(trials, locations, labels, unit);
        return labels;
    }
    std::vector<Label> observed;
    observed.reserve(trials.size() * 4);
    for (const Trial& t : trials) {
        observed.push_back(t.ground_truth);
        observed.push_back(t.initial_decision);
        observed.push_back(t.advice);
        observed.push_back(t.final_decision);
    }
    return LabelSet::infer(observed);
}

TrialLog parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    long line_no = 0;

    std::vector<Label> declared;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("labels:", 0) == 0) {
                for (const auto& raw : split_csv_fields(body.substr(7), line_no)) {
                    const std::string label = trim(raw);
                    if (!label.empty()) declared.push_back(label);
                }
            }
            continue;
        }
        header = split_csv_fields(line, line_no);
        break;
    }
    if (header.empty())
        throw SchemaError(SchemaErrorKind::EmptyInput, "empty log: no header row found");

    std::map<std::string, std::size_t> column_of;
    for (std::size_t i = 0; i < header.size(); ++i) column_of.emplace(trim(header[i]), i);
    for (const char* col : kColumns) {
        if (!column_of.count(col))
            throw SchemaError(SchemaErrorKind::MissingColumn,
                              "missing required column '" + std::string(col) + "'", col, line_no);
    }

    std::vector<Trial> trials;
    std::vector<long> lines;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split_csv_fields(line, line_no);
        if (fields.size() != header.size())
            throw SchemaError(SchemaErrorKind::BadRow,
                              "line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()),
                              {}, line_no);
        const auto field = [&](const char* name) -> std::string& {
            return fields[column_of.at(name)];
        };
        trials.push_back(Trial{std::move(field("participant_id")), std::move(field("condition")),
                               std::move(field("trial_id")), std::move(field("ground_truth")),
                               std::move(field("initial_decision")), std::move(field("advice")),
                               std::move(field("final_decision"))});
        lines.push_back(line_no);
    }
    if (trials.empty() && declared.empty())
        throw SchemaError(SchemaErrorKind::EmptyInput,
                          "empty log: no trial rows and no '# labels:' declaration");

    check_duplicates(trials, lines, "line");
    TrialLog log{finish_label_set(trials, lines, std::move(declared), "line"),
                 std::move(trials)};
    return log;
}

TrialLog parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(SchemaErrorKind::BadRow, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("trials") || !doc["trials"].is_array())
        throw SchemaError(SchemaErrorKind::MissingColumn,
                          "JSON log must be an object with a 'trials' array", "trials");

    std::vector<Label> declared;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array())
            throw SchemaError(SchemaErrorKind::BadRow, "'labels' must be an array of strings");
        for (const auto& l : doc["labels"]) declared.push_back(l.get<std::string>());
    }

    std::vector<Trial> trials;
    std::vector<long> indices;
    long idx = 0;
    for (const auto& row : doc["trials"]) {
        ++idx;
        if (!row.is_object())
            throw SchemaError(SchemaErrorKind::BadRow,
                              "trial " + std::to_string(idx) + " is not an object", {}, idx);
        for (const char* col : kColumns) {
            if (!row.contains(col) || !row[col].is_string())
                throw SchemaError(SchemaErrorKind::MissingColumn,
                                  "trial " + std::to_string(idx) + ": missing string field '" +
                                      col + "'",
                                  col, idx);
        }
        trials.push_back(Trial{row["participant_id"].get<std::string>(),
                               row["condition"].get<std::string>(),
                               row["trial_id"].get<std::string>(),
                               row["ground_truth"].get<std::string>(),
                               row["initial_decision"].get<std::string>(),
                               row["advice"].get<std::string>(),
                               row["final_decision"].get<std::string>()});
        indices.push_back(idx);
    }
    if (trials.empty() && declared.empty())
        throw SchemaError(SchemaErrorKind::EmptyInput,
                          "empty log: no trials and no 'labels' declaration");

    check_duplicates(trials, indices, "trial");
    TrialLog log{finish_label_set(trials, indices, std::move(declared), "trial"),
                 std::move(trials)};
    return log;
}

}  // namespace

TrialLog parse_log(std::string_view text, LogFormat format) {
    return format == LogFormat::Csv ? parse_csv(text) : parse_json(text);
}

TrialLog load_log(const std::string& path, LogFormat format) {
    return parse_log(read_file(path), format);
}

TrialLog load_log(const std::string& path) {
    const LogFormat format =
        path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? LogFormat::Json
                                                                           : LogFormat::Csv;
    return load_log(path, format);
}

std::string write_log(const TrialLog& log, LogFormat format) {
    if (format == LogFormat::Csv) {
        std::string out = "# labels: ";
        for (std::size_t i = 0; i < log.labels.size(); ++i) {
            if (i > 0) out += ',';
            out += csv_escape(log.labels.labels()[i]);
        }
        out += '\n';
        out += kCsvHeader;
        out += '\n';
        for (const Trial& t : log.trials) {
            out += csv_escape(t.participant_id);
            out += ',';
            out += csv_escape(t.condition_id);
            out += ',';
            out += csv_escape(t.trial_id);
            out += ',';
            out += csv_escape(t.ground_truth);
            out += ',';
            out += csv_escape(t.initial_decision);
            out += ',';
            out += csv_escape(t.advice);
            out += ',';
            out += csv_escape(t.final_decision);
            out += '\n';
        }
        return out;
    }

    nlohmann::json doc;
    doc["schema"] = "ar-log/1";
    doc["labels"] = log.labels.labels();
    nlohmann::json rows = nlohmann::json::array();
    for (const Trial& t : log.trials) {
        rows.push_back({{"participant_id", t.participant_id},
                        {"condition", t.condition_id},
                        {"trial_id", t.trial_id},
                        {"ground_truth", t.ground_truth},
                        {"initial_decision", t.initial_decision},
                        {"advice", t.advice},
                        {"final_decision", t.final_decision}});
    }
    doc["trials"] = std::move(rows);
    return doc.dump(2) + "\n";
}

void save_log(const TrialLog& log, const std::string& path, LogFormat format) {
    write_file(path, write_log(log, format));
}

std::string content_digest(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xF];
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace arq
