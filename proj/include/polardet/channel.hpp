#pragma once

#include <complex>

#include "polardet/rng.hpp"

namespace polardet {

// Channel triple (sigma_n^2, sigma_g^2, sigma_phi^2). sigma_n2 is the
// total complex noise variance, sigma_n2/2 per real component.
struct ImpairmentParams {
  double sigma_n2 = 0.0;
  double sigma_g2 = 0.0;
  double sigma_phi2 = 0.0;
};

void check_impairments(const ImpairmentParams& p);

// sigma_n^2 = 10^(-snr_db/10) for unit-energy constellations.
double snr_to_sigma_n2(double snr_db);

// r = g |s| e^{j(phi + arg s)} + n with g ~ N(1, sigma_g2) kept positive by
// rejection, phi ~ N(0, sigma_phi2), n complex Gaussian. Draw order per
// trial: g (one normal per attempt), phi, Re n, Im n.
std::complex<double> sample_received(std::complex<double> s,
                                     const ImpairmentParams& p,
                                     RandomStream& rng);

}
