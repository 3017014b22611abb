#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace polardet {

using cdouble = std::complex<double>;

// Ordered symbol list. Invariants (checked by check_constellation):
// M >= 2, unit average energy within 1e-9, min |s_m| >= 1e-3 (the polar
// metrics divide by |s_m|^2), all points pairwise distinct.
struct Constellation {
  std::vector<cdouble> points;
  std::string label;

  std::size_t order() const { return points.size(); }
};

struct SapskSpec {
  int order = 0;    // M
  int levels = 1;   // number of energy rings
  double rho = 1.0; // ring-spacing parameter, r_k = r_1 (1 + (k-1) rho)
};

void check_constellation(const Constellation& c);

// Square QAM for M in {4, 16, 64, 256, 1024}; cross QAM for {32, 128}.
Constellation make_qam(int m);

// Concentric rings, ring k holding a share of symbols proportional to k,
// each ring rotated half an angular step against the previous one.
Constellation make_sapsk(const SapskSpec& spec);

// Subtract the centroid, then scale to unit average energy.
Constellation normalize(const std::vector<cdouble>& points,
                        const std::string& label = "custom");

// Two real columns (I then Q) per line; '#' starts a comment line.
Constellation load_constellation(const std::string& path);
void save_constellation(const Constellation& c, std::ostream& out);
void save_constellation(const Constellation& c, const std::string& path);

}
