#include "polardet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "polardet/rng.hpp"
#include "polardet/sep_analytic.hpp"

namespace polardet {

namespace {

constexpr double kMinAmplitude = 1e-3;
// Stream indices far above any Monte Carlo trial index (those stay below
// 2^40 per sweep point).
constexpr std::uint64_t kSaStream = 0xA11EA1ULL << 40;
constexpr std::uint64_t kStartStream = 0x5EEDULL << 40;
// Validation must not reuse the CRN training draws.
constexpr std::uint64_t kValidationSeedTweak = 0x9E3779B97F4A7C15ULL;

ImpairmentParams channel_of(const OptimizeConfig& cfg) {
  return ImpairmentParams{snr_to_sigma_n2(cfg.snr_db), cfg.sigma_g2,
                          cfg.sigma_phi2};
}

void check_config(const OptimizeConfig& cfg) {
  if (cfg.order < 2) {
    throw std::invalid_argument("optimizer: order must be >= 2");
  }
  if (!(cfg.cooling > 0.0) || !(cfg.cooling < 1.0)) {
    throw std::invalid_argument("optimizer: cooling must be in (0,1)");
  }
  if (!(cfg.h_fd > 0.0) || !(cfg.step0 > 0.0) || cfg.iters_per_temp < 1 ||
      !(cfg.tmin_frac > 0.0) || !(cfg.tmin_frac < 1.0)) {
    throw std::invalid_argument("optimizer: bad schedule parameter");
  }
}

bool feasible(const std::vector<cdouble>& pts) {
  cdouble centroid{0.0, 0.0};
  double energy = 0.0;
  double min_amp = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    centroid += p;
    energy += std::norm(p);
    min_amp = std::min(min_amp, std::abs(p));
  }
  centroid /= static_cast<double>(pts.size());
  energy /= static_cast<double>(pts.size());
  if (std::abs(centroid) > 1e-9 || std::abs(energy - 1.0) > 1e-9 ||
      min_amp < kMinAmplitude * (1.0 - 1e-9)) {
    return false;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(pts[i] - pts[j]) <= 1e-9) return false;
    }
  }
  return true;
}

// Objective wrapper that rejects infeasible candidates with +inf instead
// of throwing (SA proposals may collapse two points).
double try_objective(std::vector<cdouble> pts, const std::string& label,
                     const OptimizeConfig& cfg) {
  if (!feasible(pts)) return std::numeric_limits<double>::infinity();
  return objective(Constellation{std::move(pts), label}, cfg);
}

}  // namespace

std::vector<cdouble> project_constraints(std::vector<cdouble> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("project_constraints: need >= 2 points");
  }
  for (int round = 0; round < 10; ++round) {
    cdouble centroid{0.0, 0.0};
    for (const auto& p : points) centroid += p;
    centroid /= static_cast<double>(points.size());
    double energy = 0.0;
    for (auto& p : points) {
      p -= centroid;
      energy += std::norm(p);
    }
    energy /= static_cast<double>(points.size());
    if (!(energy > 0.0)) {
      throw std::invalid_argument("project_constraints: degenerate points");
    }
    const double scale = 1.0 / std::sqrt(energy);
    bool floored = false;
    for (auto& p : points) {
      p *= scale;
      const double a = std::abs(p);
      if (a < kMinAmplitude) {
        // Radially outward; a point exactly at the origin goes to +1e-3.
        p = a > 0.0 ? p * (kMinAmplitude / a) : cdouble(kMinAmplitude, 0.0);
        floored = true;
      }
    }
    if (!floored) return points;
  }
  return points;
}

double objective(const Constellation& c, const OptimizeConfig& cfg) {
  check_config(cfg);
  const ImpairmentParams p = channel_of(cfg);
  if (cfg.mode == ObjectiveMode::Analytic) return sep_union(c, p);
  if (cfg.n_eval < 10000) {
    throw std::invalid_argument(
        "objective: MonteCarloCRN needs n_eval >= 10^4");
  }
  return estimate_sep(c, cfg.kind, p, cfg.n_eval, cfg.seed, cfg.threads).sep;
}

Constellation anneal(const Constellation& start, const OptimizeConfig& cfg,
                     std::vector<std::pair<int, double>>* history,
                     int* iter_counter) {
  check_config(cfg);
  check_constellation(start);
  const std::size_t m = start.order();
  int local_iter = 0;
  int& iter = iter_counter ? *iter_counter : local_iter;

  std::vector<cdouble> cur = start.points;
  double f_cur = objective(start, cfg);
  std::vector<cdouble> best = cur;
  double f_best = f_cur;
  if (history) history->emplace_back(iter, f_cur);
  ++iter;

  const double t0 = cfg.t0 > 0.0 ? cfg.t0
                    : f_cur > 0.0 ? 10.0 * f_cur
                                  : 1e-12;
  const double t_min = cfg.tmin_frac * t0;
  RandomStream rng(cfg.seed, kSaStream);

  for (double t = t0; t > t_min; t *= cfg.cooling) {
    for (int k = 0; k < cfg.iters_per_temp; ++k) {
      std::size_t pick = static_cast<std::size_t>(rng.uniform() * m);
      if (pick >= m) pick = m - 1;
      const double scale = cfg.step0 * (t / t0);
      std::vector<cdouble> cand = cur;
      cand[pick] += cdouble(scale * rng.normal(), scale * rng.normal());
      cand = project_constraints(std::move(cand));
      const double f_cand = try_objective(cand, start.label, cfg);
      if (std::isfinite(f_cand)) {
        const double delta = f_cand - f_cur;
        if (delta <= 0.0 || rng.uniform() < std::exp(-delta / t)) {
          cur = std::move(cand);
          f_cur = f_cand;
          if (f_cur < f_best) {
            best = cur;
            f_best = f_cur;
          }
        }
      }
      if (history) history->emplace_back(iter, f_cur);
      ++iter;
    }
  }
  Constellation out{std::move(best), start.label};
  check_constellation(out);
  return out;
}

Constellation refine(const Constellation& c, const OptimizeConfig& cfg,
                     std::vector<std::pair<int, double>>* history,
                     int* iter_counter) {
  check_config(cfg);
  check_constellation(c);
  const std::size_t m = c.order();
  int local_iter = 0;
  int& iter = iter_counter ? *iter_counter : local_iter;

  std::vector<cdouble> x = c.points;
  double f = objective(c, cfg);
  if (history) history->emplace_back(iter, f);
  ++iter;

  for (int step = 0; step < cfg.refine_max_iters; ++step) {
    // Central differences of the projected objective in all 2M coordinates.
    std::vector<double> grad(2 * m, 0.0);
    for (std::size_t k = 0; k < 2 * m; ++k) {
      auto probe = [&](double sign) {
        std::vector<cdouble> y = x;
        const std::size_t idx = k / 2;
        if (k % 2 == 0) y[idx] += cdouble(sign * cfg.h_fd, 0.0);
        else y[idx] += cdouble(0.0, sign * cfg.h_fd);
        return try_objective(project_constraints(std::move(y)), c.label, cfg);
      };
      const double fp = probe(1.0);
      const double fm = probe(-1.0);
      grad[k] = (std::isfinite(fp) && std::isfinite(fm))
                    ? (fp - fm) / (2.0 * cfg.h_fd)
                    : 0.0;
    }
    double gnorm2 = 0.0;
    for (const double g : grad) gnorm2 += g * g;
    if (gnorm2 == 0.0) break;

    double t = 1.0;
    bool accepted = false;
    for (int half = 0; half <= 20; ++half) {
      std::vector<cdouble> y = x;
      for (std::size_t k = 0; k < 2 * m; ++k) {
        const std::size_t idx = k / 2;
        if (k % 2 == 0) y[idx] -= cdouble(t * grad[k], 0.0);
        else y[idx] -= cdouble(0.0, t * grad[k]);
      }
      y = project_constraints(std::move(y));
      const double fy = try_objective(y, c.label, cfg);
      if (fy <= f - 1e-4 * t * gnorm2) {
        const double rel = (f - fy) / std::max(f, 1e-300);
        x = std::move(y);
        f = fy;
        accepted = true;
        if (history) history->emplace_back(iter, f);
        ++iter;
        if (rel < cfg.refine_tol) step = cfg.refine_max_iters;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
  }
  Constellation out{std::move(x), c.label};
  check_constellation(out);
  return out;
}

OptimizeResult optimize(const OptimizeConfig& cfg) {
  check_config(cfg);
  Constellation start = [&] {
    switch (cfg.order) {
      case 4: case 16: case 32: case 64: case 128: case 256: case 1024:
        return make_qam(cfg.order);
      default: {
        // Best of 10 projected Gaussian clouds.
        RandomStream rng(cfg.seed, kStartStream);
        Constellation best{{}, ""};
        double f_best = std::numeric_limits<double>::infinity();
        for (int trial = 0; trial < 10; ++trial) {
          std::vector<cdouble> pts(cfg.order);
          for (auto& p : pts) p = cdouble(rng.normal(), rng.normal());
          pts = project_constraints(std::move(pts));
          if (!feasible(pts)) continue;
          Constellation cand{std::move(pts),
                             "rand" + std::to_string(cfg.order)};
          const double f = objective(cand, cfg);
          if (f < f_best) {
            f_best = f;
            best = std::move(cand);
          }
        }
        if (best.points.empty()) {
          throw std::runtime_error("optimize: no feasible random start");
        }
        return best;
      }
    }
  }();
  start.label = "opt" + std::to_string(cfg.order) + detector_name(cfg.kind);

  OptimizeResult res;
  int iter = 0;
  Constellation annealed = anneal(start, cfg, &res.objective_history, &iter);
  res.constellation = refine(annealed, cfg, &res.objective_history, &iter);

  const ImpairmentParams p = channel_of(cfg);
  res.final_sep_mc =
      estimate_sep(res.constellation, cfg.kind, p, cfg.n_validate,
                   cfg.seed ^ kValidationSeedTweak, cfg.threads);
  res.final_sep_analytic = sep_union(res.constellation, p);
  return res;
}

SapskSpec sapsk_spacing_search(int order, int levels, DetectorKind kind,
                               const ImpairmentParams& p, double snr_db,
                               const std::vector<double>& rho_grid,
                               std::uint64_t n_eval, std::uint64_t seed,
                               int threads) {
  if (rho_grid.empty()) {
    throw std::invalid_argument("sapsk_spacing_search: empty rho grid");
  }
  std::vector<double> grid = rho_grid;
  std::sort(grid.begin(), grid.end());
  if (!(grid.front() > 0.0)) {
    throw std::invalid_argument("sapsk_spacing_search: rho must be > 0");
  }
  ImpairmentParams ch = p;
  ch.sigma_n2 = snr_to_sigma_n2(snr_db);
  SapskSpec best{order, levels, grid.front()};
  double f_best = std::numeric_limits<double>::infinity();
  for (const double rho : grid) {
    const Constellation c = make_sapsk(SapskSpec{order, levels, rho});
    const double f = estimate_sep(c, kind, ch, n_eval, seed, threads).sep;
    if (f < f_best) {
      f_best = f;
      best.rho = rho;
    }
  }
  return best;
}

}
