#pragma once

// Gamma, Beta and binomial coefficients for the explicit constants.

namespace cvxsec {

double gamma_fn(double x);
double beta_fn(double x, double y);
/// Generalised binomial coefficient Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)); exact
/// for small non-negative integers.
double binom(double a, double b);

}  // namespace cvxsec
