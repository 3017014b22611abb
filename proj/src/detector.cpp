#include "polardet/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polardet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// arg inputs are principal values, so one wrap pass suffices.
inline double wrap_phase(double d) {
  if (d > kPi) d -= 2.0 * kPi;
  else if (d <= -kPi) d += 2.0 * kPi;
  return d;
}

// Zero-variance limit: an exact residual match contributes nothing, any
// mismatch excludes the candidate. Matches the closed-form module's
// never-confused convention and keeps NaN out of the argmin.
inline double quad_term(double d, double v) {
  if (v > 0.0) return d * d / v;
  return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

// Shared by metric_gap/metric_pad and the Detector tables; both paths must
// produce identical doubles (argmin equality tests depend on it).
inline double polar_metric(double ar, double thr, double as, double ths,
                           double va, double vt, double logterm) {
  const double da = ar - as;
  const double dth = wrap_phase(thr - ths);
  return quad_term(da, va) + quad_term(dth, vt) + logterm;
}

// log(va) + log(vt) with zero variances dropped: a vanishing variance is
// shared by every symbol (it happens only when whole impairment terms are
// zero), so the omitted -inf is a common shift that cannot move the argmin.
inline double log_term(double va, double vt) {
  return (va > 0.0 ? std::log(va) : 0.0) + (vt > 0.0 ? std::log(vt) : 0.0);
}

inline void require_nonzero_symbol(double as, const char* who) {
  if (!(as > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": |s| must be positive");
  }
}

}  // namespace

std::string detector_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::EucD: return "euc";
    case DetectorKind::GapD: return "gap";
    case DetectorKind::PadD: return "pad";
  }
  throw std::logic_error("detector_name: bad kind");
}

DetectorKind parse_detector(const std::string& name) {
  if (name == "euc") return DetectorKind::EucD;
  if (name == "gap") return DetectorKind::GapD;
  if (name == "pad") return DetectorKind::PadD;
  throw std::invalid_argument("unknown detector '" + name +
                              "' (expected euc, gap, or pad)");
}

PolarResiduals polar_residuals(cdouble r, cdouble s) {
  PolarResiduals res;
  res.amp_residual = std::abs(r) - std::abs(s);
  res.phase_residual = wrap_phase(std::arg(r) - std::arg(s));
  return res;
}

double metric_euc(cdouble r, cdouble s) { return std::norm(r - s); }

double metric_gap(cdouble r, cdouble s, double sigma_n2, double sigma_phi2) {
  const double as = std::abs(s);
  require_nonzero_symbol(as, "metric_gap");
  if (!(sigma_n2 > 0.0) && !(sigma_phi2 > 0.0)) {
    throw std::invalid_argument(
        "metric_gap: need sigma_n2 > 0 or sigma_phi2 > 0");
  }
  const double va = 0.5 * sigma_n2;
  const double vt = sigma_phi2 + sigma_n2 / (2.0 * as * as);
  return polar_metric(std::abs(r), std::arg(r), as, std::arg(s), va, vt,
                      std::log(vt));
}

double metric_pad(cdouble r, cdouble s, const ImpairmentParams& p) {
  const double as = std::abs(s);
  require_nonzero_symbol(as, "metric_pad");
  if (!(p.sigma_n2 > 0.0) && !(p.sigma_g2 > 0.0) && !(p.sigma_phi2 > 0.0)) {
    throw std::invalid_argument("metric_pad: all variances are zero");
  }
  const double va = 0.5 * p.sigma_n2 + p.sigma_g2 * (as * as);
  const double vt = p.sigma_phi2 + p.sigma_n2 / (2.0 * as * as);
  return polar_metric(std::abs(r), std::arg(r), as, std::arg(s), va, vt,
                      log_term(va, vt));
}

Detector::Detector(const Constellation& c, DetectorKind kind,
                   const ImpairmentParams& p)
    : kind_(kind) {
  check_constellation(c);
  check_impairments(p);
  const std::size_t m = c.order();
  if (kind == DetectorKind::EucD) {
    points_ = c.points;
    return;
  }
  if (kind == DetectorKind::GapD && !(p.sigma_n2 > 0.0) &&
      !(p.sigma_phi2 > 0.0)) {
    throw std::invalid_argument(
        "detector: GAP-D needs sigma_n2 > 0 or sigma_phi2 > 0");
  }
  if (kind == DetectorKind::PadD && !(p.sigma_n2 > 0.0) &&
      !(p.sigma_g2 > 0.0) && !(p.sigma_phi2 > 0.0)) {
    throw std::invalid_argument("detector: PAD-D needs a positive variance");
  }
  amp_.resize(m);
  phase_.resize(m);
  va_.resize(m);
  vt_.resize(m);
  logv_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double as = std::abs(c.points[i]);
    amp_[i] = as;
    phase_[i] = std::arg(c.points[i]);
    vt_[i] = p.sigma_phi2 + p.sigma_n2 / (2.0 * as * as);
    if (kind == DetectorKind::GapD) {
      va_[i] = 0.5 * p.sigma_n2;
      logv_[i] = std::log(vt_[i]);
    } else {
      va_[i] = 0.5 * p.sigma_n2 + p.sigma_g2 * (as * as);
      logv_[i] = log_term(va_[i], vt_[i]);
    }
  }
}

std::size_t Detector::operator()(cdouble r) const {
  std::size_t best = 0;
  if (kind_ == DetectorKind::EucD) {
    double bm = std::norm(r - points_[0]);
    for (std::size_t i = 1; i < points_.size(); ++i) {
      const double v = std::norm(r - points_[i]);
      if (v < bm) {
        bm = v;
        best = i;
      }
    }
    return best;
  }
  const double ar = std::abs(r);
  const double thr = std::arg(r);
  double bm = polar_metric(ar, thr, amp_[0], phase_[0], va_[0], vt_[0],
                           logv_[0]);
  for (std::size_t i = 1; i < amp_.size(); ++i) {
    const double v =
        polar_metric(ar, thr, amp_[i], phase_[i], va_[i], vt_[i], logv_[i]);
    if (v < bm) {
      bm = v;
      best = i;
    }
  }
  return best;
}

std::size_t detect(cdouble r, const Constellation& c, DetectorKind kind,
                   const ImpairmentParams& p) {
  return Detector(c, kind, p)(r);
}

}
