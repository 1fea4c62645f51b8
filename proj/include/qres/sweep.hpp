#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qres/parallel.hpp"
#include "qres/purity.hpp"
#include "qres/states.hpp"

namespace qres {

struct SweepRow {
  double param;
  double fidelity_purity;
  double linear_purity;
};

inline std::vector<double> linspace(double from, double to, int steps) {
  if (steps < 2 || !(to > from)) {
    throw std::invalid_argument("sweep range must have to > from and at least 2 steps");
  }
  std::vector<double> xs(steps);
  for (int i = 0; i < steps; ++i) xs[i] = from + (to - from) * i / (steps - 1);
  return xs;
}

// Bell-diagonal sweep along c1 = c2 = c3 = -c.
inline std::vector<SweepRow> bell_sweep(double from = 0.0, double to = 1.0, int steps = 201) {
  const std::vector<double> cs = linspace(from, to, steps);
  std::vector<SweepRow> rows(cs.size());
  parallel_for(cs.size(), [&](std::size_t i) {
    const double c = cs[i];
    const BipartiteState rho = bell_diagonal(-c, -c, -c);
    rows[i] = {c, fidelity_purity(rho.state()), linear_purity(rho.state())};
  });
  return rows;
}

// Werner sweep; both purities are computed from the constructed matrix.
inline std::vector<SweepRow> werner_sweep(int d = 2, double from = -1.0, double to = 1.0,
                                          int steps = 201) {
  const std::vector<double> ys = linspace(from, to, steps);
  std::vector<SweepRow> rows(ys.size());
  parallel_for(ys.size(), [&](std::size_t i) {
    const BipartiteState rho = werner(d, ys[i]);
    rows[i] = {ys[i], fidelity_purity(rho.state()), linear_purity(rho.state())};
  });
  return rows;
}

// Quoted closed forms for the Werner family disagree with the constructed
// matrices (at d=2 the matrix gives tr ρ^2 = (y^2-y+1)/3, and y=-1 is the
// pure singlet with purity 1), so sweeps always report matrix-derived values.
inline std::string werner_sweep_note() {
  return "note: werner purities are computed from the constructed matrix; the closed form "
         "(4y^2-2y+1)/9 sometimes quoted for this family does not match it (d=2 gives "
         "(y^2-y+1)/3, and y=-1 is the pure singlet with tr rho^2 = 1).";
}

// Deterministic CSV: '.' decimal separator, LF line endings, fixed header.
// %.17g keeps the round trip exact.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "param,fidelity_purity,linear_purity\n";
  char buf[128];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.param, r.fidelity_purity,
                  r.linear_purity);
    out += buf;
  }
  return out;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << sweep_csv(rows);
}

}  // namespace qres
