#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polardet/channel.hpp"
#include "polardet/constellation.hpp"

namespace polardet {

enum class DetectorKind { EucD, GapD, PadD };

std::string detector_name(DetectorKind kind);
DetectorKind parse_detector(const std::string& name);

// Residuals in polar coordinates; the phase residual is wrapped to (-pi, pi].
struct PolarResiduals {
  double amp_residual = 0.0;
  double phase_residual = 0.0;
};

PolarResiduals polar_residuals(cdouble r, cdouble s);

// |r - s|^2
double metric_euc(cdouble r, cdouble s);

// (|r|-|s|)^2/(sigma_n2/2) + dtheta^2/V + log V,  V = sigma_phi2 + sigma_n2/(2|s|^2)
double metric_gap(cdouble r, cdouble s, double sigma_n2, double sigma_phi2);

// Per-symbol variances V_a = sigma_n2/2 + sigma_g2 |s|^2 and
// V_th = sigma_phi2 + sigma_n2/(2|s|^2):
// (|r|-|s|)^2/V_a + dtheta^2/V_th + log(V_a V_th)
double metric_pad(cdouble r, cdouble s, const ImpairmentParams& p);

// Precomputed per-symbol tables for one (constellation, kind, impairments)
// combination. operator() returns the argmin index, ties to the lowest
// index. Metric values agree bit-for-bit with the metric_* functions.
class Detector {
 public:
  Detector(const Constellation& c, DetectorKind kind,
           const ImpairmentParams& p);

  std::size_t operator()(cdouble r) const;
  DetectorKind kind() const { return kind_; }

 private:
  DetectorKind kind_;
  std::vector<cdouble> points_;
  std::vector<double> amp_, phase_, va_, vt_, logv_;
};

// One-shot argmin over the constellation.
std::size_t detect(cdouble r, const Constellation& c, DetectorKind kind,
                   const ImpairmentParams& p);

}
