#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "polardet/constellation.hpp"
#include "polardet/rng.hpp"
#include "polardet/sep_analytic.hpp"
#include "polardet/specialfn.hpp"

using namespace polardet;

namespace {

double rel_err(double v, double truth) {
  return std::abs(v - truth) / std::abs(truth);
}

Constellation rotated(const Constellation& c, double ang) {
  std::vector<cdouble> pts;
  const cdouble rot = std::polar(1.0, ang);
  for (const auto& p : c.points) pts.push_back(p * rot);
  return Constellation{pts, c.label + "_rot"};
}

}  // namespace

TEST_CASE("pairwise coefficients against high-precision references") {
  // 16-QAM, transmitted (1+1j)/sqrt(10) (index 10), competing
  // (1+3j)/sqrt(10) (index 11), sigma_n2=1e-4, sigma_g2=1e-3,
  // sigma_phi2=1e-4.
  const Constellation c = make_qam(16);
  REQUIRE(std::abs(c.points[10] - cdouble(1.0, 1.0) / std::sqrt(10.0)) <
          1e-15);
  REQUIRE(std::abs(c.points[11] - cdouble(1.0, 3.0) / std::sqrt(10.0)) <
          1e-15);
  const ImpairmentParams p{1e-4, 1e-3, 1e-4};
  const PairwiseStats s = pairwise_coeffs(c, 10, 11, p);

  CHECK(rel_err(s.v_i_a, 0.00025) < 1e-14);
  CHECK(rel_err(s.v_i_th, 0.00035) < 1e-14);
  CHECK(rel_err(s.a0, -3047.619047619047619047619047619) < 1e-13);
  CHECK(rel_err(s.a1, 526.4632423809924387792050154798) < 1e-13);
  CHECK(rel_err(s.a2, 3809.523809523809523809523809524) < 1e-13);
  CHECK(rel_err(s.a3, 3090.984060005374108095041543075) < 1e-13);
  CHECK(rel_err(s.a4, 1724.736878403221016542246444756) < 1e-13);
  CHECK(rel_err(s.mu, 1723.974973641316254637484539994) < 1e-13);
  CHECK(rel_err(s.sigma, 116.8511017757255146707096216515) < 1e-13);
  CHECK(rel_err(s.gamma1, -0.0007963440123339166908272996214) < 1e-11);
  CHECK(rel_err(s.delta, -0.1528567988953397441980288500304) < 1e-11);
  CHECK(rel_err(s.omega, 117.7299842883231032207284513541) < 1e-12);
  CHECK(rel_err(s.xi, 1738.333567386103458319538679322) < 1e-12);
  CHECK(rel_err(s.alpha, -0.1546744794171672529145249608888) < 1e-11);
  CHECK(rel_err(pairwise_pep(s), 2.420986267727345029747724573e-49) <
        1e-12);
}

TEST_CASE("pairwise coefficient validation") {
  const Constellation c = make_qam(16);
  const ImpairmentParams p{1e-3, 0.0, 0.0};
  CHECK_THROWS(pairwise_coeffs(c, 3, 3, p));
  CHECK_THROWS(pairwise_coeffs(c, 0, 16, p));
  CHECK_THROWS(pairwise_coeffs(c, 16, 0, p));
  CHECK_THROWS(pairwise_coeffs(c, 0, 1, ImpairmentParams{-1.0, 0.0, 0.0}));
}

TEST_CASE("equal amplitudes reduce the pair statistic to a Gaussian") {
  // a0 = 0 kills the quadratic term; the surrogate must then be exactly
  // Gaussian with PEP = Q(|dtheta| / (2 sqrt(V_theta))).
  const Constellation c = make_sapsk(SapskSpec{8, 1, 1.0});  // unit ring
  const ImpairmentParams p{1e-3, 1e-3, 1e-3};
  const PairwiseStats s = pairwise_coeffs(c, 0, 1, p);
  CHECK(s.a0 == 0.0);
  CHECK(s.a1 == 0.0);
  CHECK(s.gamma1 == 0.0);
  CHECK(s.delta == 0.0);
  CHECK(s.alpha == 0.0);
  CHECK(s.omega == s.sigma);
  CHECK(s.xi == s.mu);

  const double vt = p.sigma_phi2 + p.sigma_n2 / 2.0;
  const double dth = 2.0 * M_PI / 8.0;
  CHECK(rel_err(pairwise_pep(s), q_function(dth / (2.0 * std::sqrt(vt)))) <
        1e-12);
}

TEST_CASE("antipodal pair follows the same phase-difference rule") {
  // The surrogate treats the competing symbol through its polar residuals,
  // so for {+1,-1} the phase gap is pi and PEP = Q(pi / (2 sqrt(V_theta))).
  // (At 10 dB in pure AWGN this is far below the true Q(sqrt(2/sigma_n2));
  // the small-phase expansion is not meant for antipodal pairs.)
  const Constellation bpsk{{ {1.0, 0.0}, {-1.0, 0.0} }, "bpsk"};
  const ImpairmentParams p{0.1, 0.0, 0.0};
  const double vt = p.sigma_n2 / 2.0;
  const double want = q_function(M_PI / (2.0 * std::sqrt(vt)));
  CHECK(rel_err(sep_union(bpsk, p), want) < 1e-9);
}

TEST_CASE("union bound is rotation invariant") {
  const Constellation c = make_qam(16);
  const ImpairmentParams p{snr_to_sigma_n2(20.0), 1e-3, 1e-3};
  const double base = sep_union(c, p);
  for (double ang : {0.3, 1.1, -2.0}) {
    CHECK(rel_err(sep_union(rotated(c, ang), p), base) < 1e-10);
  }
}

TEST_CASE("union bound decreases with SNR down to the floor") {
  const Constellation c = make_qam(64);
  const double g2 = 1e-3, p2 = 1e-4;
  double prev = 2.0;
  for (double snr = 20.0; snr <= 60.0; snr += 10.0) {
    const double sep = sep_union(c, {snr_to_sigma_n2(snr), g2, p2});
    CHECK(sep < prev);
    prev = sep;
  }
  const double floor = error_floor(c, g2, p2);
  CHECK(prev >= floor * (1.0 - 1e-9));
  // Far beyond the floor-dominated region the bound settles on the floor.
  const double settled = sep_union(c, {snr_to_sigma_n2(200.0), g2, p2});
  CHECK(rel_err(settled, floor) < 1e-6);
}

TEST_CASE("error floor special cases") {
  const Constellation c = make_qam(16);
  CHECK(error_floor(c, 0.0, 0.0) == 0.0);
  CHECK(error_floor(c, 1e-3, 1e-3) > 0.0);
  CHECK(error_floor(c, 1e-3, 1e-3) ==
        sep_union(c, ImpairmentParams{0.0, 1e-3, 1e-3}));
}

TEST_CASE("zero-variance mismatches are never confused") {
  const Constellation c = make_qam(16);
  // Amplitude distortion only: symbols on a different ray are unreachable.
  const ImpairmentParams p{0.0, 1e-3, 0.0};
  // (1+1j) vs (1+3j): phases differ while V_theta = 0.
  CHECK(pairwise_pep(pairwise_coeffs(c, 10, 11, p)) == 0.0);
  // (1+1j) vs (3+3j): same ray, different amplitude; still confusable.
  CHECK(pairwise_pep(pairwise_coeffs(c, 10, 15, p)) > 0.0);

  // Phase noise only: the mirror case. (1+1j) vs (3+3j) sit at different
  // amplitudes, (1+1j) vs (-1+1j) (index 6) share one.
  const ImpairmentParams q{0.0, 0.0, 1e-3};
  CHECK(pairwise_pep(pairwise_coeffs(c, 10, 15, q)) == 0.0);
  CHECK(pairwise_pep(pairwise_coeffs(c, 10, 6, q)) > 0.0);
}

TEST_CASE("union bound clamps to one at very low SNR") {
  const Constellation c = make_qam(256);
  CHECK(sep_union(c, {snr_to_sigma_n2(0.0), 1e-3, 1e-3}) == 1.0);
}

TEST_CASE("surrogate moments match a simulation of the pair statistic") {
  // Simulate eta = a0 w^2 + 2 a1 w + 2 a3 psi + a4 directly and compare
  // the first three standardized moments (batch-means standard errors).
  const Constellation c = make_qam(16);
  const ImpairmentParams p{1e-4, 1e-3, 1e-4};
  const PairwiseStats s = pairwise_coeffs(c, 10, 11, p);

  RandomStream rs(12345, 0);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
  const double sa = std::sqrt(s.v_i_a), st = std::sqrt(s.v_i_th);
  std::vector<double> eta(n);
  for (int i = 0; i < n; ++i) {
    const double w = sa * rs.normal();
    const double psi = st * rs.normal();
    eta[i] = s.a0 * w * w + 2.0 * s.a1 * w + 2.0 * s.a3 * psi + s.a4;
    m1 += eta[i];
  }
  m1 /= n;
  for (int i = 0; i < n; ++i) {
    const double d = eta[i] - m1;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;

  CHECK(std::abs(m1 - s.mu) < 5.0 * s.sigma / std::sqrt(double(n)));
  CHECK(std::abs(m2 - s.sigma * s.sigma) <
        5.0 * s.sigma * s.sigma * std::sqrt(2.0 / n));
  const double skew = m3 / std::pow(m2, 1.5);
  CHECK(std::abs(skew - s.gamma1) < 5.0 * std::sqrt(6.0 / n));
}
