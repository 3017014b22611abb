#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polardet/constellation.hpp"
#include "polardet/detector.hpp"
#include "polardet/mc_engine.hpp"

namespace polardet {

enum class ObjectiveMode { MonteCarloCRN, Analytic };

struct OptimizeConfig {
  int order = 64;
  DetectorKind kind = DetectorKind::PadD;
  double sigma_g2 = 0.0;
  double sigma_phi2 = 0.0;
  double snr_db = 30.0;
  std::uint64_t n_eval = 100000;    // CRN trials per objective evaluation
  std::uint64_t n_validate = 1000000;
  std::uint64_t seed = 1;
  // Simulated annealing schedule.
  double t0 = 0.0;                  // <= 0 selects 10 x initial objective
  double cooling = 0.95;
  int iters_per_temp = 50;
  double step0 = 0.1;
  double tmin_frac = 1e-6;          // T_min = tmin_frac * T0
  // Gradient refinement.
  double h_fd = 1e-3;
  int refine_max_iters = 50;
  double refine_tol = 1e-3;
  ObjectiveMode mode = ObjectiveMode::MonteCarloCRN;
  int threads = 0;
};

struct OptimizeResult {
  Constellation constellation;
  std::vector<std::pair<int, double>> objective_history;
  SepEstimate final_sep_mc;       // fresh validation seed
  double final_sep_analytic = 0.0;
};

// Center, scale to unit energy, push symbols under the 1e-3 amplitude
// floor radially outward, repeat to a fixed point (at most 10 rounds).
std::vector<cdouble> project_constraints(std::vector<cdouble> points);

// CRN Monte Carlo SEP (fixed seed, identical draws for every candidate) or
// the analytic union bound. Deterministic in (c, cfg).
double objective(const Constellation& c, const OptimizeConfig& cfg);

Constellation anneal(const Constellation& start, const OptimizeConfig& cfg,
                     std::vector<std::pair<int, double>>* history = nullptr,
                     int* iter_counter = nullptr);

Constellation refine(const Constellation& c, const OptimizeConfig& cfg,
                     std::vector<std::pair<int, double>>* history = nullptr,
                     int* iter_counter = nullptr);

// anneal then refine from a QAM start (or best of 10 random feasible sets
// for non-QAM orders); validation uses a seed disjoint from the CRN seed.
OptimizeResult optimize(const OptimizeConfig& cfg);

// 1-D search over the ring-spacing parameter; ties take the smallest rho.
SapskSpec sapsk_spacing_search(int order, int levels, DetectorKind kind,
                               const ImpairmentParams& p, double snr_db,
                               const std::vector<double>& rho_grid,
                               std::uint64_t n_eval, std::uint64_t seed,
                               int threads = 0);

}
