#pragma once

#include <cstddef>

#include "polardet/channel.hpp"
#include "polardet/constellation.hpp"

namespace polardet {

// Coefficients of the pairwise metric-difference statistic for an ordered
// symbol pair (i transmitted, j competing), plus the matched skew-normal
// parameters. The statistic is eta = a0 w^2 + 2 a1 w + 2 a3 psi + a4 with
// w ~ N(0, V_i_a), psi ~ N(0, V_i_th); a2 is retained for reference but
// drops out at high SNR.
struct PairwiseStats {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double a4 = 0.0;
  double mu = 0.0;      // a0 V_i_a + a4
  double sigma = 0.0;   // sqrt(2 a0^2 V_i_a^2 + 4 a1^2 V_i_a + 4 a3^2 V_i_th)
  double gamma1 = 0.0;  // standardized third moment of eta
  double delta = 0.0;
  double omega = 0.0;
  double xi = 0.0;
  double alpha = 0.0;
  // Variances of the transmitted symbol's residuals, kept for simulation.
  double v_i_a = 0.0;
  double v_i_th = 0.0;
};

PairwiseStats pairwise_coeffs(const Constellation& c, std::size_t i,
                              std::size_t j, const ImpairmentParams& p);

// P(eta < 0) = Q(xi/omega) - 2 T(-xi/omega, alpha), clamped to [0,1].
double pairwise_pep(const PairwiseStats& stats);

// Union bound: (1/M) sum over ordered pairs, clamped to [0,1].
double sep_union(const Constellation& c, const ImpairmentParams& p);

// sep_union at sigma_n2 = 0. Both variances zero gives exactly 0.
double error_floor(const Constellation& c, double sigma_g2,
                   double sigma_phi2);

}
