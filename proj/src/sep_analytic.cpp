#include "polardet/sep_analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polardet/specialfn.hpp"

namespace polardet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline double wrap_phase(double d) {
  if (d > kPi) d -= 2.0 * kPi;
  else if (d <= -kPi) d += 2.0 * kPi;
  return d;
}

// A mismatch in a zero-variance coordinate is never confused: eta has an
// infinite positive mean. These stats make pairwise_pep return exactly 0
// without a dedicated branch there.
PairwiseStats never_confused(double v_i_a, double v_i_th) {
  PairwiseStats s;
  s.a4 = std::numeric_limits<double>::infinity();
  s.mu = s.xi = std::numeric_limits<double>::infinity();
  s.sigma = s.omega = 1.0;
  s.v_i_a = v_i_a;
  s.v_i_th = v_i_th;
  return s;
}

}  // namespace

PairwiseStats pairwise_coeffs(const Constellation& c, std::size_t i,
                              std::size_t j, const ImpairmentParams& p) {
  if (i == j || i >= c.order() || j >= c.order()) {
    throw std::invalid_argument("pairwise_coeffs: need distinct indices");
  }
  check_impairments(p);
  const double ri = std::abs(c.points[i]);
  const double rj = std::abs(c.points[j]);
  if (!(ri > 0.0) || !(rj > 0.0)) {
    throw std::invalid_argument("pairwise_coeffs: zero-amplitude symbol");
  }
  const double via = 0.5 * p.sigma_n2 + p.sigma_g2 * (ri * ri);
  const double vja = 0.5 * p.sigma_n2 + p.sigma_g2 * (rj * rj);
  const double vit = p.sigma_phi2 + p.sigma_n2 / (2.0 * ri * ri);
  const double vjt = p.sigma_phi2 + p.sigma_n2 / (2.0 * rj * rj);
  const double da = rj - ri;
  const double dth = wrap_phase(std::arg(c.points[j]) - std::arg(c.points[i]));

  // V^(a) vanishes only when sigma_n2 = sigma_g2 = 0 (then for every
  // symbol); same for V^(th) with sigma_n2 = sigma_phi2 = 0.
  if ((vja == 0.0 && da != 0.0) || (vjt == 0.0 && dth != 0.0)) {
    return never_confused(via, vit);
  }

  PairwiseStats s;
  s.v_i_a = via;
  s.v_i_th = vit;
  double log_ratio = 0.0;
  if (vja > 0.0) {
    s.a0 = 1.0 / vja - 1.0 / via;
    s.a1 = da / vja;
    s.a4 += da * da / vja;
    log_ratio += std::log(vja / via);
  }
  if (vjt > 0.0) {
    s.a2 = 1.0 / vjt - 1.0 / vit;
    s.a3 = dth / vjt;
    s.a4 += dth * dth / vjt;
    log_ratio += std::log(vjt / vit);
  }
  s.a4 += log_ratio;
  s.mu = s.a0 * via + s.a4;
  const double var = 2.0 * s.a0 * s.a0 * via * via + 4.0 * s.a1 * s.a1 * via +
                     4.0 * s.a3 * s.a3 * vit;
  s.sigma = std::sqrt(var);
  const double third = 8.0 * s.a0 * s.a0 * s.a0 * via * via * via +
                       24.0 * s.a0 * s.a1 * s.a1 * via * via;
  s.gamma1 = third / (var * s.sigma);
  s.delta = delta_from_skewness(s.gamma1);
  s.omega = s.sigma / std::sqrt(1.0 - 2.0 * s.delta * s.delta / kPi);
  s.xi = s.mu - s.omega * s.delta * std::sqrt(2.0 / kPi);
  s.alpha = s.delta / std::sqrt((1.0 - s.delta) * (1.0 + s.delta));
  return s;
}

double pairwise_pep(const PairwiseStats& stats) {
  const double z = stats.xi / stats.omega;
  const double raw = q_function(z) - 2.0 * owen_t(-z, stats.alpha);
  if (raw < 0.0) return 0.0;
  if (raw > 1.0) return 1.0;
  return raw;
}

double sep_union(const Constellation& c, const ImpairmentParams& p) {
  check_constellation(c);
  check_impairments(p);
  const std::size_t m = c.order();
  // Kahan compensation: the sum mixes pair probabilities spanning many
  // orders of magnitude.
  double sum = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double term = pairwise_pep(pairwise_coeffs(c, i, j, p));
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  const double sep = sum / static_cast<double>(m);
  if (sep < 0.0) return 0.0;
  if (sep > 1.0) return 1.0;
  return sep;
}

double error_floor(const Constellation& c, double sigma_g2,
                   double sigma_phi2) {
  if (sigma_g2 == 0.0 && sigma_phi2 == 0.0) return 0.0;
  return sep_union(c, ImpairmentParams{0.0, sigma_g2, sigma_phi2});
}

}
