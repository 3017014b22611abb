#include "polardet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace polardet {

void check_impairments(const ImpairmentParams& p) {
  if (!(p.sigma_n2 >= 0.0) || !(p.sigma_g2 >= 0.0) || !(p.sigma_phi2 >= 0.0)) {
    throw std::invalid_argument("impairments: variances must be >= 0");
  }
  if (p.sigma_g2 > 0.25) {
    // Beyond this the negative-gain rejection stops being negligible.
    throw std::invalid_argument("impairments: sigma_g2 must be <= 0.25");
  }
}

double snr_to_sigma_n2(double snr_db) {
  return std::pow(10.0, -snr_db / 10.0);
}

std::complex<double> sample_received(std::complex<double> s,
                                     const ImpairmentParams& p,
                                     RandomStream& rng) {
  double g = 1.0;
  if (p.sigma_g2 > 0.0) {
    const double sd = std::sqrt(p.sigma_g2);
    do {
      g = 1.0 + sd * rng.normal();
    } while (g <= 0.0);
  }
  std::complex<double> r = s * g;
  if (p.sigma_phi2 > 0.0) {
    const double phi = std::sqrt(p.sigma_phi2) * rng.normal();
    r *= std::polar(1.0, phi);
  }
  if (p.sigma_n2 > 0.0) {
    const double sd = std::sqrt(0.5 * p.sigma_n2);
    const double nr = sd * rng.normal();
    const double ni = sd * rng.normal();
    r += std::complex<double>(nr, ni);
  }
  return r;
}

}
