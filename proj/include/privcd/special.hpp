#pragma once

namespace privcd {

// Small numeric toolbox for the statistics used across the project.
// Implementations follow the classic series / continued-fraction recipes;
// accuracies are adequate for p-values and exact binomial intervals.

// Regularized lower incomplete gamma P(a, x); gamma_q is its complement.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double beta_inc(double a, double b, double x);

// Inverse of beta_inc in x, solved by bisection to 1e-10.
double beta_inc_inv(double a, double b, double p);

// Standard normal CDF.
double norm_cdf(double z);

// Digamma function for positive arguments.
double digamma(double x);

}  // namespace privcd
