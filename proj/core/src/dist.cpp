#include "arq/dist.hpp"

#include <cmath>

#include "arq/errors.hpp"

namespace arq {

namespace {

// Continued fraction for the incomplete beta, modified Lentz iteration.
double beta_cf(double a, double b, double x) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        const double m2 = 2.0 * m;
        double coeff = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw ArgumentError("incomplete_beta requires a > 0 and b > 0");
    if (std::isnan(x)) throw ArgumentError("incomplete_beta: x is NaN");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    // Evaluate on the side where the continued fraction converges fast.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw ArgumentError("student_t_two_sided_p requires df > 0");
    if (std::isnan(t)) throw ArgumentError("student_t_two_sided_p: t is NaN");
    if (std::isinf(t)) return 0.0;
    // P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2); exactly 1 at t = 0.
    return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

double student_t_cdf(double t, double df) {
    const double p = student_t_two_sided_p(t, df);
    return t >= 0.0 ? 1.0 - 0.5 * p : 0.5 * p;
}

}  // namespace arq
