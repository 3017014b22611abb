#include "polardet/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace polardet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kMinAmplitude = 1e-3;

double mean_energy(const std::vector<cdouble>& pts) {
  double acc = 0.0;
  for (const auto& p : pts) acc += std::norm(p);
  return acc / static_cast<double>(pts.size());
}

Constellation finish(std::vector<cdouble> pts, std::string label) {
  Constellation c{std::move(pts), std::move(label)};
  check_constellation(c);
  return c;
}

}  // namespace

void check_constellation(const Constellation& c) {
  const std::size_t m = c.points.size();
  if (m < 2) {
    throw std::invalid_argument("constellation: need at least 2 points");
  }
  const double e = mean_energy(c.points);
  if (std::abs(e - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "constellation: average energy " + std::to_string(e) +
        " not 1 within 1e-9 (normalize first)");
  }
  for (const auto& p : c.points) {
    // Slack of 1e-9 absorbs the re-scale after the projection's floor push.
    if (std::abs(p) < kMinAmplitude * (1.0 - 1e-9)) {
      throw std::invalid_argument(
          "constellation: symbol below the 1e-3 amplitude floor");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(c.points[i] - c.points[j]) <= 1e-9) {
        throw std::invalid_argument(
            "constellation: points " + std::to_string(i) + " and " +
            std::to_string(j) + " coincide");
      }
    }
  }
}

Constellation make_qam(int m) {
  const bool square = m == 4 || m == 16 || m == 64 || m == 256 || m == 1024;
  const bool cross = m == 32 || m == 128;
  if (!square && !cross) {
    throw std::invalid_argument(
        "make_qam: order must be one of 4, 16, 32, 64, 128, 256, 1024");
  }
  std::vector<cdouble> pts;
  pts.reserve(static_cast<std::size_t>(m));
  if (square) {
    const int n = static_cast<int>(std::lround(std::sqrt(double(m))));
    for (int i = 0; i < n; ++i) {
      for (int q = 0; q < n; ++q) {
        pts.emplace_back(2 * i - (n - 1), 2 * q - (n - 1));
      }
    }
  } else {
    // Enclosing (3n/2 x 3n/2 energy) square with the four (n/6)^2 corner
    // blocks removed: 6x6 minus 1x1 corners for 32, 12x12 minus 2x2 for 128.
    const int n = static_cast<int>(std::lround(std::sqrt(9.0 * m / 8.0)));
    const int keep = n - 1 - 2 * (n / 6);
    for (int i = 0; i < n; ++i) {
      for (int q = 0; q < n; ++q) {
        const int re = 2 * i - (n - 1);
        const int im = 2 * q - (n - 1);
        if (std::abs(re) > keep && std::abs(im) > keep) continue;
        pts.emplace_back(re, im);
      }
    }
  }
  const double scale = 1.0 / std::sqrt(mean_energy(pts));
  for (auto& p : pts) p *= scale;
  return finish(std::move(pts), "qam" + std::to_string(m));
}

Constellation make_sapsk(const SapskSpec& spec) {
  if (spec.order < 2) {
    throw std::invalid_argument("make_sapsk: order must be >= 2");
  }
  if (spec.levels < 1 || spec.levels > spec.order) {
    throw std::invalid_argument("make_sapsk: levels must be in [1, order]");
  }
  if (!(spec.rho > 0.0)) {
    throw std::invalid_argument("make_sapsk: rho must be positive");
  }
  const int g = spec.levels;
  const double total = 0.5 * g * (g + 1);

  // n_k proportional to k, rounded by largest remainder to sum to M.
  std::vector<int> pop(g);
  std::vector<double> frac(g);
  int assigned = 0;
  for (int k = 1; k <= g; ++k) {
    const double ideal = spec.order * k / total;
    pop[k - 1] = static_cast<int>(std::floor(ideal));
    frac[k - 1] = ideal - pop[k - 1];
    assigned += pop[k - 1];
  }
  std::vector<int> idx(g);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return frac[a] > frac[b]; });
  for (int r = 0; r < spec.order - assigned; ++r) ++pop[idx[r % g]];
  for (int k = 0; k < g; ++k) {
    if (pop[k] == 0) {
      throw std::invalid_argument(
          "make_sapsk: ring " + std::to_string(k + 1) +
          " would hold no symbols; reduce levels");
    }
  }

  double energy = 0.0;
  for (int k = 1; k <= g; ++k) {
    const double mult = 1.0 + (k - 1) * spec.rho;
    energy += pop[k - 1] * mult * mult;
  }
  const double r1 = std::sqrt(spec.order / energy);

  std::vector<cdouble> pts;
  pts.reserve(static_cast<std::size_t>(spec.order));
  double offset = 0.0;
  for (int k = 1; k <= g; ++k) {
    const int n = pop[k - 1];
    if (k > 1) offset += kPi / n;
    const double radius = r1 * (1.0 + (k - 1) * spec.rho);
    for (int i = 0; i < n; ++i) {
      const double ang = offset + 2.0 * kPi * i / n;
      pts.push_back(std::polar(radius, ang));
    }
  }
  return finish(std::move(pts), "sapsk" + std::to_string(spec.order) + "_" +
                                    std::to_string(g));
}

Constellation normalize(const std::vector<cdouble>& points,
                        const std::string& label) {
  if (points.size() < 2) {
    throw std::invalid_argument("normalize: need at least 2 points");
  }
  cdouble centroid{0.0, 0.0};
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(points.size());

  std::vector<cdouble> out(points.size());
  double energy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = points[i] - centroid;
    energy += std::norm(out[i]);
  }
  energy /= static_cast<double>(points.size());
  if (!(energy > 0.0)) {
    throw std::invalid_argument("normalize: all points coincide");
  }
  const double scale = 1.0 / std::sqrt(energy);
  for (auto& p : out) p *= scale;
  return finish(std::move(out), label);
}

Constellation load_constellation(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_constellation: cannot open " + path);
  }
  std::vector<cdouble> pts;
  std::string label = "file";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream hdr(line.substr(first + 1));
      std::string word, value;
      if (hdr >> word >> value && word == "constellation") label = value;
      continue;
    }
    std::istringstream ss(line);
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(ss >> re >> im) || (ss >> extra)) {
      throw std::runtime_error(path + ": line " + std::to_string(lineno) +
                               ": expected two real columns");
    }
    pts.emplace_back(re, im);
  }
  if (pts.size() < 2) {
    throw std::runtime_error(path + ": fewer than 2 constellation points");
  }
  Constellation c{std::move(pts), std::move(label)};
  check_constellation(c);
  return c;
}

void save_constellation(const Constellation& c, std::ostream& out) {
  out << "# constellation " << c.label << "\n";
  char buf[64];
  for (const auto& p : c.points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.real(), p.imag());
    out << buf;
  }
}

void save_constellation(const Constellation& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_constellation: cannot open " + path);
  }
  save_constellation(c, out);
  if (!out) {
    throw std::runtime_error("save_constellation: write failed for " + path);
  }
}

}
