#pragma once

// Numerical substrate for the bound solver and the t-tests.

namespace covshift::special {

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

/// ln B(a, b). Switches to a Stirling-difference form when either argument is
/// large so that ln Gamma(a) - ln Gamma(a + b) does not cancel.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b), continued fraction with the usual
/// symmetry switch at x > (a + 1) / (a + b + 2).
double incomplete_beta(double a, double b, double x);

/// Student-t cumulative distribution with `df` degrees of freedom (df > 0).
double student_t_cdf(double t, double df);

/// Upper tail P(T > t) without the 1 - cdf cancellation.
double student_t_sf(double t, double df);

/// Binomial probability mass C(m, x) p^x (1-p)^(m-x), saddle-point form
/// (Stirling error terms plus deviance), accurate to a few ulps for any m.
double binomial_pmf(long long x, long long m, double p);

/// ln(n!) - ln(sqrt(2 pi n) (n/e)^n).
double stirling_error(double n);

namespace detail {
/// Evaluates I_x(a, b) given front = x^a (1-x)^b / B(a, b).
double incomplete_beta_from_front(double a, double b, double x, double front);
}  // namespace detail

}  // namespace covshift::special
