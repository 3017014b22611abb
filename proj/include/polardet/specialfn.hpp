#pragma once

namespace polardet {

struct SkewNormalParams {
  double location = 0.0;  // xi
  double scale = 1.0;     // omega, > 0
  double shape = 0.0;     // alpha
};

struct SnMoments {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
};

// Upper tail of the standard normal, Q(x) = P(Z > x).
double q_function(double x);

// Owen's T function, T(h,a) = (1/2pi) int_0^a exp(-h^2(1+x^2)/2)/(1+x^2) dx.
// Absolute error <= 1e-13.
double owen_t(double h, double a);

// Skew-normal CDF: 1 - Q(z) - 2 T(z, alpha) with z = (x - xi)/omega.
double sn_cdf(double x, const SkewNormalParams& p);

SnMoments sn_moments(const SkewNormalParams& p);

// Inverts the skew-normal skewness for delta = alpha/sqrt(1+alpha^2).
// |gamma1| is clamped to 0.995 (the family's supremum is ~0.99527).
double delta_from_skewness(double gamma1);

}
