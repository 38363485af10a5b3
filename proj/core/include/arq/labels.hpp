#pragma once

#include <string>
#include <vector>

namespace arq {

// Decision labels are exact, case-sensitive tokens. Comparison is the only
// operation; any normalization is the ingester's job.
using Label = std::string;

// The task's closed set of k >= 2 labels. Order is preserved as declared.
class LabelSet {
public:
    explicit LabelSet(std::vector<Label> labels);

    std::size_t size() const { return labels_.size(); }
    bool contains(const Label& label) const;
    const std::vector<Label>& labels() const { return labels_; }

    // Sorted union of the labels observed in data, for logs that do not
    // declare their label set up front.
    static LabelSet infer(const std::vector<Label>& observed);

private:
    std::vector<Label> labels_;
};

}  // namespace arq
