#include "arq/labels.hpp"

#include <algorithm>

#include "arq/errors.hpp"

namespace arq {

LabelSet::LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2)
        throw DomainError("a label set needs at least 2 labels, got " +
                          std::to_string(labels_.size()));
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) throw ArgumentError("label sets may not contain empty labels");
        for (std::size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j])
                throw ArgumentError("duplicate label in label set: '" + labels_[i] + "'");
        }
    }
}

bool LabelSet::contains(const Label& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

LabelSet LabelSet::infer(const std::vector<Label>& observed) {
    std::vector<Label> unique = observed;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    return LabelSet(std::move(unique));
}

}  // namespace arq
