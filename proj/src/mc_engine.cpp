#include "polardet/mc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace polardet {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("POLARDET_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SepEstimate estimate_sep(const Constellation& c, DetectorKind kind,
                         const ImpairmentParams& p, std::uint64_t n_symbols,
                         std::uint64_t seed, int threads,
                         std::uint64_t stream_base) {
  check_constellation(c);
  check_impairments(p);
  if (n_symbols < 1000) {
    throw std::invalid_argument("estimate_sep: n_symbols must be >= 1000");
  }
  SepEstimate est;
  est.n_symbols = n_symbols;
  est.source = SepSource::MonteCarlo;
  // Noiseless identity channel: no detector can err on its own symbol.
  if (p.sigma_n2 == 0.0 && p.sigma_g2 == 0.0 && p.sigma_phi2 == 0.0) {
    return est;
  }

  const Detector det(c, kind, p);
  const std::size_t m = c.order();
  const int nt = static_cast<int>(
      std::min<std::uint64_t>(resolve_threads(threads), n_symbols));

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    std::uint64_t errors = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      RandomStream rng(seed, stream_base + t);
      const std::size_t sent = static_cast<std::size_t>(t % m);
      const cdouble r = sample_received(c.points[sent], p, rng);
      errors += det(r) != sent;
    }
    return errors;
  };

  std::uint64_t total_errors = 0;
  if (nt <= 1) {
    total_errors = run_range(0, n_symbols);
  } else {
    std::vector<std::uint64_t> partial(nt, 0);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::uint64_t chunk = n_symbols / nt;
    const std::uint64_t rem = n_symbols % nt;
    std::uint64_t lo = 0;
    for (int w = 0; w < nt; ++w) {
      const std::uint64_t hi = lo + chunk + (static_cast<std::uint64_t>(w) < rem ? 1 : 0);
      pool.emplace_back(
          [&, w, lo, hi] { partial[w] = run_range(lo, hi); });
      lo = hi;
    }
    for (auto& th : pool) th.join();
    for (const auto e : partial) total_errors += e;
  }

  est.n_errors = total_errors;
  est.sep = static_cast<double>(total_errors) / static_cast<double>(n_symbols);
  est.ci95_halfwidth =
      1.96 * std::sqrt(est.sep * (1.0 - est.sep) /
                       static_cast<double>(n_symbols));
  return est;
}

std::vector<SweepRow> sweep(const Constellation& c, DetectorKind kind,
                            double sigma_g2, double sigma_phi2,
                            const std::vector<double>& snr_grid_db,
                            std::uint64_t n_symbols, std::uint64_t seed,
                            int threads) {
  if (snr_grid_db.empty()) {
    throw std::invalid_argument("sweep: empty SNR grid");
  }
  if (!std::is_sorted(snr_grid_db.begin(), snr_grid_db.end())) {
    throw std::invalid_argument("sweep: SNR grid must be ascending");
  }
  std::vector<SweepRow> rows;
  rows.reserve(snr_grid_db.size());
  for (std::size_t k = 0; k < snr_grid_db.size(); ++k) {
    const ImpairmentParams p{snr_to_sigma_n2(snr_grid_db[k]), sigma_g2,
                             sigma_phi2};
    rows.emplace_back(snr_grid_db[k],
                      estimate_sep(c, kind, p, n_symbols, seed, threads,
                                   static_cast<std::uint64_t>(k) << 40));
  }
  return rows;
}

void write_sweep_tsv(std::ostream& out, const std::string& label,
                     DetectorKind kind, double sigma_g2, double sigma_phi2,
                     std::uint64_t seed, const std::vector<SweepRow>& rows) {
  char buf[256];
  out << "# constellation " << label << "\n";
  out << "# detector " << detector_name(kind) << "\n";
  std::snprintf(buf, sizeof buf, "# sigma_g2 %.17g\n", sigma_g2);
  out << buf;
  std::snprintf(buf, sizeof buf, "# sigma_phi2 %.17g\n", sigma_phi2);
  out << buf;
  out << "# seed " << seed << "\n";
  out << "# columns snr_db sep n_symbols n_errors ci95\n";
  for (const auto& [snr, est] : rows) {
    std::snprintf(buf, sizeof buf, "%.17g\t%.17g\t%llu\t%llu\t%.17g\n", snr,
                  est.sep, static_cast<unsigned long long>(est.n_symbols),
                  static_cast<unsigned long long>(est.n_errors),
                  est.ci95_halfwidth);
    out << buf;
  }
}

}
