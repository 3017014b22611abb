#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>

#include "polardet/channel.hpp"
#include "polardet/constellation.hpp"
#include "polardet/detector.hpp"
#include "polardet/rng.hpp"

using namespace polardet;

TEST_CASE("detector names parse both ways") {
  CHECK(parse_detector("euc") == DetectorKind::EucD);
  CHECK(parse_detector("gap") == DetectorKind::GapD);
  CHECK(parse_detector("pad") == DetectorKind::PadD);
  CHECK(detector_name(DetectorKind::EucD) == "euc");
  CHECK(detector_name(DetectorKind::GapD) == "gap");
  CHECK(detector_name(DetectorKind::PadD) == "pad");
  CHECK_THROWS(parse_detector("ml"));
}

TEST_CASE("phase residual wraps into (-pi, pi]") {
  const auto near_pi = polar_residuals(std::polar(1.0, M_PI - 0.01),
                                       std::polar(1.0, -M_PI + 0.01));
  CHECK(near_pi.phase_residual == doctest::Approx(-0.02).epsilon(1e-12));
  const auto zero = polar_residuals({1.0, 0.0}, {1.0, 0.0});
  CHECK(zero.amp_residual == 0.0);
  CHECK(zero.phase_residual == 0.0);
  // arg() returns +pi for antipodal points, which is inside the interval.
  const auto anti = polar_residuals({-2.0, 0.0}, {1.0, 0.0});
  CHECK(anti.phase_residual == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(anti.amp_residual == 1.0);
}

TEST_CASE("euclidean metric") {
  CHECK(metric_euc({1.0, 1.0}, {1.0, 1.0}) == 0.0);
  CHECK(metric_euc({2.0, 0.0}, {0.0, 1.0}) ==
        doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("polar metrics against high-precision references") {
  // Pure phase offset of 0.1 rad on a unit symbol.
  const double gap = metric_gap(std::polar(1.0, 0.1), {1.0, 0.0},
                                1e-3, 1e-2);
  CHECK(gap == doctest::Approx(-3.603999069437706984018227552764611)
                   .epsilon(1e-13));

  // Amplitude 1.05, phase 0.02, both variance terms active.
  const ImpairmentParams p{1e-3, 1e-3, 1e-4};
  const double pad = metric_pad(std::polar(1.05, 0.02), {1.0, 0.0}, p);
  CHECK(pad == doctest::Approx(-11.58753774028876707200211637561216)
                   .epsilon(1e-13));
}

TEST_CASE("polar metric domain requirements") {
  CHECK_THROWS(metric_gap({1.0, 0.0}, {0.0, 0.0}, 1e-3, 1e-3));
  CHECK_THROWS(metric_gap({1.0, 0.0}, {1.0, 0.0}, 0.0, 0.0));
  CHECK_NOTHROW(metric_gap({1.0, 0.0}, {1.0, 0.0}, 0.0, 1e-3));
  CHECK_NOTHROW(metric_gap({1.0, 0.0}, {1.0, 0.0}, 1e-3, 0.0));

  const ImpairmentParams all_zero{0.0, 0.0, 0.0};
  CHECK_THROWS(metric_pad({1.0, 0.0}, {1.0, 0.0}, all_zero));
  CHECK_THROWS(metric_pad({1.0, 0.0}, {0.0, 0.0},
                          ImpairmentParams{1e-3, 0.0, 0.0}));
  CHECK_NOTHROW(metric_pad({1.0, 0.0}, {1.0, 0.0},
                           ImpairmentParams{0.0, 1e-3, 0.0}));
}

TEST_CASE("zero-variance metrics use the exact-match limit") {
  // sigma_n2 = 0 collapses the amplitude variance of GAP-D: candidates at
  // any other amplitude are excluded, exact matches fall back to the phase
  // term alone. No NaN may reach the argmin.
  const double inf = std::numeric_limits<double>::infinity();
  const cdouble s{1.0, 0.0};
  CHECK(metric_gap(s, s, 0.0, 1e-3) == std::log(1e-3));
  CHECK(metric_gap({0.0, 1.0}, s, 0.0, 1e-3) ==
        doctest::Approx(0.25 * M_PI * M_PI / 1e-3 + std::log(1e-3))
            .epsilon(1e-12));
  CHECK(metric_gap({2.0, 0.0}, s, 0.0, 1e-3) == inf);

  // Same rule, per coordinate, for PAD-D.
  const ImpairmentParams phase_only{0.0, 0.0, 1e-3};
  CHECK(metric_pad(s, s, phase_only) == std::log(1e-3));
  CHECK(metric_pad({2.0, 0.0}, s, phase_only) == inf);
  const ImpairmentParams gain_only{0.0, 1e-2, 0.0};
  CHECK(metric_pad({2.0, 0.0}, s, gain_only) ==
        doctest::Approx(1.0 / 1e-2 + std::log(1e-2)).epsilon(1e-15));
  CHECK(metric_pad({0.0, 1.0}, s, gain_only) == inf);

  // Unit-circle cross: all four amplitudes are exactly 1.0, so a noiseless
  // receive at a symbol must come back as that symbol via the phase term.
  const Constellation cross{
      {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}, "cross"};
  for (DetectorKind kind : {DetectorKind::GapD, DetectorKind::PadD}) {
    const Detector det(cross, kind, phase_only);
    for (std::size_t i = 0; i < cross.order(); ++i) {
      CHECK(det(cross.points[i]) == i);
    }
  }
}

TEST_CASE("at sigma_g2 = 0 the polar metrics differ by a constant") {
  // V_a collapses to sigma_n2/2 for every symbol, so the metrics are
  // shifted copies of each other and rank candidates identically.
  const ImpairmentParams p{1e-3, 0.0, 1e-2};
  const double shift = std::log(p.sigma_n2 / 2.0);
  RandomStream rs(17, 0);
  for (int i = 0; i < 1000; ++i) {
    const cdouble r{2.0 * rs.uniform() - 1.0, 2.0 * rs.uniform() - 1.0};
    const cdouble s{std::polar(0.5 + rs.uniform(),
                               2.0 * M_PI * rs.uniform())};
    const double gap = metric_gap(r, s, p.sigma_n2, p.sigma_phi2);
    const double pad = metric_pad(r, s, p);
    CHECK(std::abs(pad - (gap + shift)) < 1e-10 * (1.0 + std::abs(gap)));
  }
}

TEST_CASE("batched detector agrees bit-for-bit with the metrics") {
  const Constellation c = make_qam(16);
  const ImpairmentParams p{1e-2, 1e-3, 1e-3};
  RandomStream rs(23, 0);
  for (DetectorKind kind :
       {DetectorKind::EucD, DetectorKind::GapD, DetectorKind::PadD}) {
    const Detector det(c, kind, p);
    for (int i = 0; i < 2000; ++i) {
      const cdouble r{1.5 * (2.0 * rs.uniform() - 1.0),
                      1.5 * (2.0 * rs.uniform() - 1.0)};
      std::size_t best = 0;
      double best_m = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < c.order(); ++m) {
        double v = 0.0;
        switch (kind) {
          case DetectorKind::EucD: v = metric_euc(r, c.points[m]); break;
          case DetectorKind::GapD:
            v = metric_gap(r, c.points[m], p.sigma_n2, p.sigma_phi2);
            break;
          case DetectorKind::PadD: v = metric_pad(r, c.points[m], p); break;
        }
        if (v < best_m) {
          best_m = v;
          best = m;
        }
      }
      CHECK(det(r) == best);
      CHECK(detect(r, c, kind, p) == best);
    }
  }
}

TEST_CASE("gain-free channels make the two polar detectors coincide") {
  // 10^4 received samples on 64-QAM: identical decisions when sigma_g2 = 0.
  const Constellation c = make_qam(64);
  const ImpairmentParams p{snr_to_sigma_n2(18.0), 0.0, 1e-3};
  const Detector gap(c, DetectorKind::GapD, p);
  const Detector pad(c, DetectorKind::PadD, p);
  RandomStream rs(3, 0);
  for (int t = 0; t < 10000; ++t) {
    const cdouble s = c.points[t % c.order()];
    const cdouble r = sample_received(s, p, rs);
    CHECK(gap(r) == pad(r));
  }
}

TEST_CASE("ties resolve to the lowest index") {
  const Constellation c = make_qam(4);
  const ImpairmentParams p{1e-2, 0.0, 0.0};
  // The origin is equidistant from all four symbols.
  CHECK(detect({0.0, 0.0}, c, DetectorKind::EucD, p) == 0);
}

TEST_CASE("euclidean decisions are rotation equivariant") {
  const Constellation c = make_qam(16);
  const cdouble rot = std::polar(1.0, 0.7);
  std::vector<cdouble> rotated;
  for (const auto& s : c.points) rotated.push_back(s * rot);
  const Constellation cr{rotated, "rot"};
  const ImpairmentParams p{1e-2, 0.0, 0.0};
  RandomStream rs(41, 0);
  for (int i = 0; i < 500; ++i) {
    const cdouble r{2.0 * rs.uniform() - 1.0, 2.0 * rs.uniform() - 1.0};
    CHECK(detect(r, c, DetectorKind::EucD, p) ==
          detect(r * rot, cr, DetectorKind::EucD, p));
  }
}
