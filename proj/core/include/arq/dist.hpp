#pragma once

namespace arq {

// Regularized incomplete beta I_x(a, b), evaluated with the modified Lentz
// continued fraction. Absolute error is well below 1e-10 over the parameter
// ranges used by the t-distribution.
double incomplete_beta(double a, double b, double x);

// CDF of Student's t distribution with (possibly fractional) df > 0.
double student_t_cdf(double t, double df);

// Two-sided tail probability of an observed t statistic.
double student_t_two_sided_p(double t, double df);

}  // namespace arq
