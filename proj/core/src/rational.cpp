#include "arq/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>

#include "arq/errors.hpp"

namespace arq {

double Rational::value() const { return static_cast<double>(num) / static_cast<double>(den); }

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ArgumentError("rational denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

Rational Rational::parse_decimal(const std::string& text) {
    if (text.empty()) throw ArgumentError("empty decimal value");
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) throw ArgumentError("not a decimal number: '" + text + "'");
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ArgumentError("not a decimal number: '" + text + "'");
        if (num > (std::numeric_limits<std::int64_t>::max() - 9) / 10 ||
            (seen_point && den > std::numeric_limits<std::int64_t>::max() / 10))
            throw ArgumentError("decimal value out of range: '" + text + "'");
        num = num * 10 + (c - '0');
        if (seen_point) den *= 10;
        any_digit = true;
    }
    if (!any_digit) throw ArgumentError("not a decimal number: '" + text + "'");
    return make(negative ? -num : num, den);
}

int compare(const Rational& a, const Rational& b) {
    const auto lhs = static_cast<__int128>(a.num) * b.den;
    const auto rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }

double MetricValue::value() const {
    if (!defined()) return std::numeric_limits<double>::quiet_NaN();
    return static_cast<double>(num) / static_cast<double>(den);
}

bool MetricValue::exceeds(const Rational& threshold) const {
    return static_cast<__int128>(num) * threshold.den >
           static_cast<__int128>(threshold.num) * den;
}

bool same_value(const MetricValue& a, const MetricValue& b) {
    if (!a.defined() || !b.defined()) return a.defined() == b.defined();
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

}  // namespace arq
