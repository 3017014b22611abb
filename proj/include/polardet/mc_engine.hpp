#pragma once

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "polardet/channel.hpp"
#include "polardet/constellation.hpp"
#include "polardet/detector.hpp"

namespace polardet {

enum class SepSource { MonteCarlo, Analytic };

struct SepEstimate {
  double sep = 0.0;
  std::uint64_t n_symbols = 0;
  std::uint64_t n_errors = 0;
  double ci95_halfwidth = 0.0;
  SepSource source = SepSource::MonteCarlo;
};

// Worker count: explicit argument, else POLARDET_THREADS, else hardware.
int resolve_threads(int requested);

// Balanced round-robin transmission (trial t sends symbol t mod M); trial t
// consumes stream (stream_base + t), so results are bit-identical for any
// thread count. n_symbols must be >= 1000.
SepEstimate estimate_sep(const Constellation& c, DetectorKind kind,
                         const ImpairmentParams& p, std::uint64_t n_symbols,
                         std::uint64_t seed, int threads = 0,
                         std::uint64_t stream_base = 0);

using SweepRow = std::pair<double, SepEstimate>;

// One estimate per grid point; point k draws from stream base k * 2^40.
std::vector<SweepRow> sweep(const Constellation& c, DetectorKind kind,
                            double sigma_g2, double sigma_phi2,
                            const std::vector<double>& snr_grid_db,
                            std::uint64_t n_symbols, std::uint64_t seed,
                            int threads = 0);

// TSV body: "# ..." metadata then one
// "snr_db<TAB>sep<TAB>n_symbols<TAB>n_errors<TAB>ci95" row per point.
void write_sweep_tsv(std::ostream& out, const std::string& label,
                     DetectorKind kind, double sigma_g2, double sigma_phi2,
                     std::uint64_t seed, const std::vector<SweepRow>& rows);

}
