#pragma once

namespace circlelink {

/// log of the complete Beta function B(a, b); a, b > 0.
double log_beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b) for x in [0, 1], a, b > 0.
/// Continued-fraction (modified Lentz) evaluation.
double regularized_incomplete_beta(double x, double a, double b);

/// Quantile of Beta(a, b): smallest x with I_x(a, b) >= q, by bisection on
/// the regularized incomplete beta to 1e-9 (and beyond; the bracket is
/// bisected to ~1e-15).
double beta_quantile(double q, double a, double b);

/// Closed-form quantile of the arcsine distribution Beta(1/2, 1/2):
/// sin^2(pi * q / 2).  Used as an independent cross-check of beta_quantile.
double arcsine_quantile(double q);

}  // namespace circlelink
