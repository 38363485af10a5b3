#pragma once

#include <cstdint>
#include <string>

namespace arq {

// Exact non-negative ratio. Metrics and thresholds compare through these so
// that results are identical across platforms; doubles appear only at
// presentation time.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // always > 0

    double value() const;
    std::string str() const;  // "num/den"

    // Reduced form with a positive denominator.
    static Rational make(std::int64_t num, std::int64_t den);

    // Parses a plain decimal like "0.5" or "1" into an exact ratio.
    static Rational parse_decimal(const std::string& text);
};

// Sign of a - b, computed exactly.
int compare(const Rational& a, const Rational& b);

bool operator==(const Rational& a, const Rational& b);

// A ratio-valued metric. A zero denominator means no qualifying trials: the
// metric is undefined, which is distinct from a value of 0 and must never be
// folded into aggregates as one.
struct MetricValue {
    std::int64_t num = 0;
    std::int64_t den = 0;

    bool defined() const { return den != 0; }
    double value() const;  // quiet NaN when undefined

    // Exact value > threshold. Requires defined().
    bool exceeds(const Rational& threshold) const;
};

// Exact equality of the represented values; two undefined metrics are equal.
bool same_value(const MetricValue& a, const MetricValue& b);

}  // namespace arq
