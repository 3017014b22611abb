#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polardet/constellation.hpp"
#include "polardet/detector.hpp"
#include "polardet/mc_engine.hpp"
#include "polardet/optimizer.hpp"
#include "polardet/sep_analytic.hpp"
#include "polardet/version.hpp"

namespace {

using namespace polardet;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Inclusive dB grid "start:step:stop"; a bare number is a one-point grid.
std::vector<double> parse_snr_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      const double start = std::stod(parts[0]);
      const double step = std::stod(parts[1]);
      const double stop = std::stod(parts[2]);
      if (stop < start) throw std::invalid_argument("stop < start");
      if (stop > start && !(step > 0.0)) {
        throw std::invalid_argument("step must be > 0");
      }
      std::vector<double> grid;
      const int n = stop == start
                        ? 1
                        : static_cast<int>((stop - start) / step + 1e-9) + 1;
      for (int i = 0; i < n; ++i) grid.push_back(start + i * step);
      return grid;
    }
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad snr spec '" + spec + "': " + e.what());
  }
  throw std::invalid_argument("bad snr spec '" + spec +
                              "' (want start:step:stop)");
}

// Path, or the shorthands "qam:M" and "sapsk:M:levels:rho".
Constellation load_source(const std::string& src) {
  if (src.rfind("qam:", 0) == 0) return make_qam(std::stoi(src.substr(4)));
  if (src.rfind("sapsk:", 0) == 0) {
    std::stringstream ss(src.substr(6));
    std::string m, g, rho;
    if (std::getline(ss, m, ':') && std::getline(ss, g, ':') &&
        std::getline(ss, rho, ':')) {
      return make_sapsk(
          SapskSpec{std::stoi(m), std::stoi(g), std::stod(rho)});
    }
    throw std::invalid_argument("bad sapsk spec '" + src +
                                "' (want sapsk:M:levels:rho)");
  }
  return load_constellation(src);
}

// Self-describing header. The command line is reconstructed canonically
// and deliberately omits --threads: outputs are invariant to the worker
// count, so the manifest must be too.
void write_manifest(std::ostream& out, const std::string& command) {
  out << "# polardet " << kVersion << "\n";
  out << "# command polardet " << command << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

int run_gen(const std::string& type, int order, int gamma, double rho,
            const std::string& out_path) {
  Constellation c{{}, ""};
  std::ostringstream cmd;
  cmd << "gen --type " << type << " --order " << order;
  if (type == "qam") {
    c = make_qam(order);
  } else if (type == "sapsk") {
    c = make_sapsk(SapskSpec{order, gamma, rho});
    cmd << " --gamma " << gamma << " --rho " << g17(rho);
  } else {
    throw std::invalid_argument("gen: type must be qam or sapsk");
  }
  cmd << " --out " << out_path;
  auto out = open_out(out_path);
  write_manifest(out, cmd.str());
  save_constellation(c, out);
  finish_out(out, out_path);
  return 0;
}

int run_simulate(const std::string& src, const std::string& det,
                 double sigma_g2, double sigma_phi2, const std::string& snr,
                 std::uint64_t n, std::uint64_t seed,
                 const std::string& out_path, int threads) {
  const Constellation c = load_source(src);
  const DetectorKind kind = parse_detector(det);
  const auto grid = parse_snr_spec(snr);
  const auto rows = sweep(c, kind, sigma_g2, sigma_phi2, grid, n, seed,
                          threads);
  std::ostringstream cmd;
  cmd << "simulate --constellation " << src << " --detector " << det
      << " --sigma-g2 " << g17(sigma_g2) << " --sigma-phi2 "
      << g17(sigma_phi2) << " --snr " << snr << " --n " << n << " --seed "
      << seed << " --out " << out_path;
  auto out = open_out(out_path);
  write_manifest(out, cmd.str());
  write_sweep_tsv(out, c.label, kind, sigma_g2, sigma_phi2, seed, rows);
  finish_out(out, out_path);
  return 0;
}

int run_analyze(const std::string& src, double sigma_g2, double sigma_phi2,
                const std::string& snr, bool floor,
                const std::string& out_path) {
  const Constellation c = load_source(src);
  std::ostringstream cmd;
  cmd << "analyze --constellation " << src << " --sigma-g2 " << g17(sigma_g2)
      << " --sigma-phi2 " << g17(sigma_phi2);
  if (floor) cmd << " --floor";
  else cmd << " --snr " << snr;
  cmd << " --out " << out_path;

  auto out = open_out(out_path);
  write_manifest(out, cmd.str());
  out << "# constellation " << c.label << "\n";
  out << "# sigma_g2 " << g17(sigma_g2) << "\n";
  out << "# sigma_phi2 " << g17(sigma_phi2) << "\n";
  out << "# columns snr_db sep\n";
  if (floor) {
    out << "inf\t" << g17(error_floor(c, sigma_g2, sigma_phi2)) << "\n";
  } else {
    for (const double snr_db : parse_snr_spec(snr)) {
      const ImpairmentParams p{snr_to_sigma_n2(snr_db), sigma_g2,
                               sigma_phi2};
      out << g17(snr_db) << "\t" << g17(sep_union(c, p)) << "\n";
    }
  }
  finish_out(out, out_path);
  return 0;
}

int run_optimize(const OptimizeConfig& cfg, const std::string& det,
                 const std::string& mode_name,
                 const std::string& out_prefix) {
  const OptimizeResult res = optimize(cfg);

  std::ostringstream cmd;
  cmd << "optimize --order " << cfg.order << " --detector " << det
      << " --sigma-g2 " << g17(cfg.sigma_g2) << " --sigma-phi2 "
      << g17(cfg.sigma_phi2) << " --snr-db " << g17(cfg.snr_db)
      << " --objective " << mode_name << " --n-eval " << cfg.n_eval
      << " --n-validate " << cfg.n_validate << " --t0 " << g17(cfg.t0)
      << " --cooling " << g17(cfg.cooling) << " --iters-per-temp "
      << cfg.iters_per_temp << " --step0 " << g17(cfg.step0)
      << " --tmin-frac " << g17(cfg.tmin_frac) << " --h-fd " << g17(cfg.h_fd)
      << " --refine-iters " << cfg.refine_max_iters << " --refine-tol "
      << g17(cfg.refine_tol) << " --seed " << cfg.seed << " --out-prefix "
      << out_prefix;
  const std::string command = cmd.str();

  const std::string const_path = out_prefix + ".constellation.txt";
  {
    auto out = open_out(const_path);
    write_manifest(out, command);
    save_constellation(res.constellation, out);
    finish_out(out, const_path);
  }
  const std::string hist_path = out_prefix + ".history.tsv";
  {
    auto out = open_out(hist_path);
    write_manifest(out, command);
    out << "# seed " << cfg.seed << "\n";
    out << "# columns iter sep\n";
    for (const auto& [it, sep] : res.objective_history) {
      out << it << "\t" << g17(sep) << "\n";
    }
    finish_out(out, hist_path);
  }
  const std::string val_path = out_prefix + ".validation.tsv";
  {
    auto out = open_out(val_path);
    write_manifest(out, command);
    out << "# seed " << cfg.seed << "\n";
    out << "# columns sep_mc ci95 n_symbols n_errors sep_analytic\n";
    out << g17(res.final_sep_mc.sep) << "\t"
        << g17(res.final_sep_mc.ci95_halfwidth) << "\t"
        << res.final_sep_mc.n_symbols << "\t" << res.final_sep_mc.n_errors
        << "\t" << g17(res.final_sep_analytic) << "\n";
    finish_out(out, val_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polar-metric detection, SEP analysis, and shaping toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a constellation file");
  std::string gen_type = "qam", gen_out;
  int gen_order = 16, gen_gamma = 1;
  double gen_rho = 1.0;
  gen->add_option("--type", gen_type, "qam or sapsk");
  gen->add_option("--order", gen_order, "constellation order M")->required();
  gen->add_option("--gamma", gen_gamma, "sapsk ring count");
  gen->add_option("--rho", gen_rho, "sapsk ring spacing");
  gen->add_option("--out", gen_out, "output path")->required();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo SEP sweep");
  std::string sim_src, sim_det = "pad", sim_snr, sim_out;
  double sim_g2 = 0.0, sim_p2 = 0.0;
  std::uint64_t sim_n = 1000000, sim_seed = 1;
  int sim_threads = 0;
  sim->add_option("--constellation", sim_src,
                  "path, qam:M, or sapsk:M:levels:rho")->required();
  sim->add_option("--detector", sim_det, "euc, gap, or pad");
  sim->add_option("--sigma-g2", sim_g2, "amplitude-distortion variance");
  sim->add_option("--sigma-phi2", sim_p2, "phase-noise variance");
  sim->add_option("--snr", sim_snr, "start:step:stop in dB")->required();
  sim->add_option("--n", sim_n, "symbols per SNR point");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--out", sim_out, "output TSV")->required();
  sim->add_option("--threads", sim_threads, "worker cap (0 = default)");

  auto* ana = app.add_subcommand("analyze", "closed-form SEP approximation");
  std::string ana_src, ana_snr, ana_out;
  double ana_g2 = 0.0, ana_p2 = 0.0;
  bool ana_floor = false;
  ana->add_option("--constellation", ana_src,
                  "path, qam:M, or sapsk:M:levels:rho")->required();
  ana->add_option("--sigma-g2", ana_g2, "amplitude-distortion variance");
  ana->add_option("--sigma-phi2", ana_p2, "phase-noise variance");
  ana->add_option("--snr", ana_snr, "start:step:stop in dB");
  ana->add_flag("--floor", ana_floor, "emit the sigma_n2 -> 0 error floor");
  ana->add_option("--out", ana_out, "output TSV")->required();

  auto* opt = app.add_subcommand("optimize", "anneal + refine a design");
  OptimizeConfig cfg;
  std::string opt_det = "pad", opt_mode = "mc", opt_prefix;
  opt->add_option("--order", cfg.order, "constellation order")->required();
  opt->add_option("--detector", opt_det, "euc, gap, or pad");
  opt->add_option("--sigma-g2", cfg.sigma_g2, "amplitude variance");
  opt->add_option("--sigma-phi2", cfg.sigma_phi2, "phase variance");
  opt->add_option("--snr-db", cfg.snr_db, "design SNR in dB")->required();
  opt->add_option("--objective", opt_mode, "mc or analytic");
  opt->add_option("--n-eval", cfg.n_eval, "CRN trials per evaluation");
  opt->add_option("--n-validate", cfg.n_validate, "validation trials");
  opt->add_option("--t0", cfg.t0, "initial temperature (0 = auto)");
  opt->add_option("--cooling", cfg.cooling, "geometric cooling factor");
  opt->add_option("--iters-per-temp", cfg.iters_per_temp,
                  "moves per temperature");
  opt->add_option("--step0", cfg.step0, "initial perturbation scale");
  opt->add_option("--tmin-frac", cfg.tmin_frac, "T_min as fraction of T0");
  opt->add_option("--h-fd", cfg.h_fd, "finite-difference step");
  opt->add_option("--refine-iters", cfg.refine_max_iters,
                  "max refinement iterations");
  opt->add_option("--refine-tol", cfg.refine_tol,
                  "relative objective tolerance");
  opt->add_option("--seed", cfg.seed, "random seed");
  opt->add_option("--threads", cfg.threads, "worker cap (0 = default)");
  opt->add_option("--out-prefix", opt_prefix, "output path prefix")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return run_gen(gen_type, gen_order, gen_gamma, gen_rho, gen_out);
    }
    if (sim->parsed()) {
      return run_simulate(sim_src, sim_det, sim_g2, sim_p2, sim_snr, sim_n,
                          sim_seed, sim_out, sim_threads);
    }
    if (ana->parsed()) {
      if (!ana_floor && ana_snr.empty()) {
        throw std::invalid_argument("analyze: need --snr or --floor");
      }
      if (ana_floor && !ana_snr.empty()) {
        throw std::invalid_argument("analyze: --snr and --floor conflict");
      }
      return run_analyze(ana_src, ana_g2, ana_p2, ana_snr, ana_floor,
                         ana_out);
    }
    if (opt->parsed()) {
      cfg.kind = parse_detector(opt_det);
      if (opt_mode == "mc") cfg.mode = ObjectiveMode::MonteCarloCRN;
      else if (opt_mode == "analytic") cfg.mode = ObjectiveMode::Analytic;
      else throw std::invalid_argument("optimize: objective must be mc or analytic");
      return run_optimize(cfg, opt_det, opt_mode, opt_prefix);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
