#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "qres/channels.hpp"
#include "qres/coherence.hpp"
#include "qres/fidelity.hpp"
#include "qres/measurement.hpp"
#include "qres/parallel.hpp"
#include "qres/purity.hpp"
#include "qres/report.hpp"
#include "qres/states.hpp"

namespace qres {

// Brute-force maximum of F(ρ, δ) over diagonal states: grid over the
// probability simplex followed by pairwise-transfer local refinement. Kept
// independent of the closed form it is used to check.
inline double coherence_simplex_oracle(const DensityMatrix& rho, int resolution) {
  const int d = rho.dim();
  std::vector<double> diag(d);
  for (int i = 0; i < d; ++i) diag[i] = rho.mat()(i, i).real();
  const double lin = linear_purity(rho);

  auto objective = [&](const std::vector<double>& delta) {
    double overlap = 0.0, norm = 0.0;
    for (int i = 0; i < d; ++i) {
      overlap += delta[i] * diag[i];
      norm += delta[i] * delta[i];
    }
    if (norm <= 0.0) return 0.0;
    return overlap * overlap / (lin * norm);
  };

  // Enumerate all compositions of `resolution` into d parts.
  std::vector<double> best(d, 0.0);
  double best_value = -1.0;
  std::vector<int> counts(d, 0);
  std::vector<double> delta(d, 0.0);
  const double inv_r = 1.0 / resolution;
  auto recurse = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == d - 1) {
      counts[slot] = remaining;
      for (int i = 0; i < d; ++i) delta[i] = counts[i] * inv_r;
      const double v = objective(delta);
      if (v > best_value) {
        best_value = v;
        best = delta;
      }
      return;
    }
    for (int n = 0; n <= remaining; ++n) {
      counts[slot] = n;
      self(self, slot + 1, remaining - n);
    }
  };
  recurse(recurse, 0, resolution);

  // Local refinement: probability transfers between coordinate pairs with a
  // halving step, which stays on the simplex.
  double step = inv_r;
  for (int round = 0; round < 60; ++round) {
    bool improved = false;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (i == j || best[j] < step) continue;
        std::vector<double> cand = best;
        cand[i] += step;
        cand[j] -= step;
        const double v = objective(cand);
        if (v > best_value) {
          best_value = v;
          best = cand;
          improved = true;
        }
      }
    }
    if (!improved) step /= 2.0;
    if (step < 1e-10) break;
  }
  return best_value;
}

inline int oracle_resolution(int d) { return d <= 3 ? 200 : 60; }

struct HarnessReport {
  std::string suite;
  long trials = 0;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> results;

  bool guaranteed_pass() const {
    for (const PropertyResult& r : results)
      if (r.guaranteed && !r.passed()) return false;
    return true;
  }

  std::string render() const;
};

namespace harness {

// Shared pattern: evaluate per-trial defects in parallel (each trial owns a
// slot), then fold into the results serially so reports are deterministic.
template <std::size_t N>
void run_trials(long trials, std::uint64_t seed, std::array<PropertyResult, N>& props,
                const std::function<void(std::uint64_t, std::array<double, N>&)>& body) {
  std::vector<std::array<double, N>> defects(trials);
  std::vector<std::uint64_t> seeds(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
    seeds[i] = mix_seed(seed, i);
    defects[i].fill(0.0);
    body(seeds[i], defects[i]);
  });
  for (long i = 0; i < trials; ++i)
    for (std::size_t p = 0; p < N; ++p) props[p].record(defects[i][p], seeds[i]);
}

inline std::vector<PropertyResult> fidelity_suite(std::uint64_t seed, long trials) {
  return check_f_properties(seed, trials);
}

inline std::vector<PropertyResult> purity_suite(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 5> props{
      PropertyResult{"P1 monotone in linear purity", true, trials, 1e-12},
      PropertyResult{"P2 bounds [0,1] at default base", true, trials, 1e-12},
      PropertyResult{"P3 non-increasing under unital channels", true, trials, 1e-10},
      PropertyResult{"P4 additivity over tensor products", true, trials, 1e-10},
      PropertyResult{"normalization log2(d) for pure states", true, trials, 1e-12},
  };
  run_trials<5>(trials, seed, props, [](std::uint64_t s, std::array<double, 5>& defect) {
    Rng rng(s);
    const int d = rng.uniform_int(2, 4);
    const DensityMatrix rho = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const DensityMatrix sigma = random_density(d, rng.uniform_int(1, d), rng.engine()());

    const double p_rho = fidelity_purity(rho), p_sigma = fidelity_purity(sigma);
    if (linear_purity(rho) >= linear_purity(sigma)) defect[0] = std::max(0.0, p_sigma - p_rho);
    else defect[0] = std::max(0.0, p_rho - p_sigma);

    defect[1] = std::max({0.0, -p_rho, p_rho - 1.0});

    // Alternate the two unital families.
    DensityMatrix mapped = rho;
    if (s % 2 == 0) {
      const int n = rng.uniform_int(2, 5);
      std::vector<double> p = random_probabilities(n, rng);
      std::vector<Matrix> us;
      for (int i = 0; i < n; ++i) us.push_back(haar_unitary(d, rng));
      mapped = apply_channel(mixture_of_unitaries(p, us), rho);
    } else {
      const int env = rng.uniform_int(2, 3);
      mapped = noisy_operation(env, haar_unitary(d * env, rng))(rho);
    }
    defect[2] = std::max(0.0, fidelity_purity(mapped) - p_rho);

    const DensityMatrix joint(tensor(rho.mat(), sigma.mat()));
    defect[3] = std::abs(fidelity_purity(joint, d) - fidelity_purity(rho, d) -
                         fidelity_purity(sigma, d));

    const int dn = 2 + static_cast<int>(s % 7);
    const DensityMatrix pure = random_density(dn, 1, rng.engine()());
    defect[4] = std::abs(fidelity_purity(pure, 2) - std::log2(static_cast<double>(dn)));
  });
  return {props.begin(), props.end()};
}

inline std::vector<PropertyResult> probe_c2(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 1> props{
      PropertyResult{"C2 probe: monotonicity under incoherent CPTP maps", false, trials, 1e-9},
  };
  run_trials<1>(trials, seed, props, [](std::uint64_t s, std::array<double, 1>& defect) {
    Rng rng(s);
    const int d = rng.uniform_int(2, 4);
    const DensityMatrix rho = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const KrausChannel phi = sample_incoherent_channel(d, rng.uniform_int(1, d), rng.engine()());
    defect[0] = std::max(0.0, coherence_fidelity(apply_channel(phi, rho)) -
                                  coherence_fidelity(rho));
  });
  return {props.begin(), props.end()};
}

inline std::vector<PropertyResult> probe_c3(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 1> props{
      PropertyResult{"C3 probe: strong monotonicity over Kraus outcomes", false, trials, 1e-9},
  };
  run_trials<1>(trials, seed, props, [](std::uint64_t s, std::array<double, 1>& defect) {
    Rng rng(s);
    const int d = rng.uniform_int(2, 4);
    const DensityMatrix rho = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const KrausChannel phi = sample_incoherent_channel(d, rng.uniform_int(1, d), rng.engine()());
    double weighted = 0.0;
    for (const Matrix& a : phi.kraus) {
      const Matrix out = a * rho.mat() * a.adjoint();
      const double p = out.trace().real();
      if (p < 1e-12) continue;
      weighted += p * coherence_fidelity(DensityMatrix(out / p));
    }
    defect[0] = std::max(0.0, weighted - coherence_fidelity(rho));
  });
  return {props.begin(), props.end()};
}

inline std::vector<PropertyResult> coherence_suite(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 5> props{
      PropertyResult{"C1 nonnegative, zero exactly on diagonal states", true, trials, 1e-9},
      PropertyResult{"closed form matches simplex oracle", true, trials, 1e-6},
      PropertyResult{"maximal coherence bounds fidelity coherence", true, trials, 1e-12},
      PropertyResult{"purity equals log_d 1/(1 - C_m)", true, trials, 1e-12},
      PropertyResult{"l1 coherence matches generator-pair formula", true, trials, 1e-10},
  };
  run_trials<5>(trials, seed, props, [](std::uint64_t s, std::array<double, 5>& defect) {
    Rng rng(s);
    const int d = 2 + static_cast<int>(s % 3);
    const DensityMatrix rho = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const double c = coherence_fidelity(rho);

    std::vector<double> p = random_probabilities(d, rng);
    Matrix diag = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) diag(i, i) = p[i];
    defect[0] = std::max({0.0, -c, coherence_fidelity(DensityMatrix(diag))});

    defect[1] = std::abs((1.0 - coherence_simplex_oracle(rho, oracle_resolution(d))) - c);

    const double cm = maximal_coherence(rho);
    defect[2] = std::max(0.0, c - cm);
    defect[3] = std::abs(fidelity_purity(rho) + std::log(1.0 - cm) / std::log(double(d)));

    const GeneratorBasis basis(d);
    defect[4] = std::abs(coherence_l1(rho) -
                         coherence_l1_from_bloch(bloch_expand(rho, basis), basis));
  });
  std::vector<PropertyResult> out{props.begin(), props.end()};
  for (const PropertyResult& r : probe_c2(seed ^ 0xc2c2c2ULL, trials)) out.push_back(r);
  for (const PropertyResult& r : probe_c3(seed ^ 0xc3c3c3ULL, trials)) out.push_back(r);
  return out;
}

inline BipartiteState random_cq_state(Rng& rng) {
  const std::vector<double> p = random_probabilities(2, rng);
  std::vector<DensityMatrix> blocks;
  for (int k = 0; k < 2; ++k) blocks.push_back(random_density(2, rng.uniform_int(1, 2), rng.engine()()));
  return classical_quantum(p, blocks);
}

inline std::vector<PropertyResult> probe_q3(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 1> props{
      PropertyResult{"Q3 probe: non-increasing under local channels on b", false, trials, 1e-6},
  };
  run_trials<1>(trials, seed, props, [](std::uint64_t s, std::array<double, 1>& defect) {
    Rng rng(s);
    const BipartiteState rho = random_bipartite(2, 2, rng.uniform_int(1, 4), rng.engine()());
    const KrausChannel local = sample_generic_channel(2, 2, rng.engine()());
    std::vector<Matrix> lifted;
    for (const Matrix& b : local.kraus) lifted.push_back(tensor(identity(2), b));
    const BipartiteState mapped(2, 2, apply_channel(KrausChannel(lifted), rho.state()));
    defect[0] = std::max(0.0, quantum_correlation(mapped).value - quantum_correlation(rho).value);
  });
  return {props.begin(), props.end()};
}

inline std::vector<PropertyResult> probe_fmin_inequality(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 1> props{
      PropertyResult{"F-MIN probe: F(rho, I/d) <= F(rho, Pi(rho))", false, trials, 1e-10},
  };
  run_trials<1>(trials, seed, props, [](std::uint64_t s, std::array<double, 1>& defect) {
    Rng rng(s);
    const int d_a = rng.uniform_int(2, 3), d_b = rng.uniform_int(2, 3);
    const BipartiteState rho = random_bipartite(d_a, d_b, rng.uniform_int(1, d_a * d_b), rng.engine()());
    const ProjectiveMeasurement m = ProjectiveMeasurement::from_unitary(haar_unitary(d_a, rng));
    const double f_mm = fidelity_alt(rho.state(), maximally_mixed(rho.dim()));
    const double f_meas = fidelity_alt(rho.state(), apply_measurement(rho, m).state());
    defect[0] = std::max(0.0, f_mm - f_meas);
  });
  return {props.begin(), props.end()};
}

inline std::vector<PropertyResult> correlation_suite(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 4> props{
      PropertyResult{"Q1 vanishes on classical-quantum states", true, trials, 1e-6},
      PropertyResult{"Q1 nonnegativity on random states", true, trials, 1e-8},
      PropertyResult{"Q2 invariance under local unitaries", true, trials, 1e-6},
      PropertyResult{"measurement never increases purity", true, trials, 1e-10},
  };
  run_trials<4>(trials, seed, props, [](std::uint64_t s, std::array<double, 4>& defect) {
    Rng rng(s);
    const BipartiteState cq = random_cq_state(rng);
    defect[0] = std::abs(quantum_correlation(cq).value);

    const BipartiteState rho = random_bipartite(2, 2, rng.uniform_int(1, 4), rng.engine()());
    const double q = quantum_correlation(rho).value;
    defect[1] = std::max(0.0, -q);

    const Matrix local = tensor(haar_unitary(2, rng), haar_unitary(2, rng));
    const BipartiteState rotated(2, 2, conjugate(rho.state(), local));
    defect[2] = std::abs(quantum_correlation(rotated).value - q);

    const ProjectiveMeasurement m = ProjectiveMeasurement::from_unitary(haar_unitary(2, rng));
    defect[3] = std::max(0.0, fidelity_purity(apply_measurement(rho, m).state()) -
                                  fidelity_purity(rho.state()));
  });
  std::vector<PropertyResult> out{props.begin(), props.end()};
  for (const PropertyResult& r : probe_q3(seed ^ 0x0903ULL, trials)) out.push_back(r);
  for (const PropertyResult& r : probe_fmin_inequality(seed ^ 0xf312ULL, trials)) out.push_back(r);
  return out;
}

inline std::vector<PropertyResult> weak_suite(std::uint64_t seed, long trials) {
  std::array<PropertyResult, 6> props{
      PropertyResult{"weak map equals t rho + (1-t) Pi(rho)", true, trials, 1e-10},
      PropertyResult{"weak fidelity is exactly 1 at x = 0", true, trials, 0.0},
      PropertyResult{"weak fidelity limit and bounds", true, trials, 1e-8},
      PropertyResult{"weak fidelity matches zeta form", true, trials, 1e-10},
      PropertyResult{"weak purity limits at x = 0 and x = 40", true, trials, 1e-8},
      PropertyResult{"weak purity non-increasing in strength", true, trials, 1e-10},
  };
  run_trials<6>(trials, seed, props, [](std::uint64_t s, std::array<double, 6>& defect) {
    Rng rng(s);
    const int d_a = rng.uniform_int(2, 3), d_b = rng.uniform_int(1, 3);
    const BipartiteState rho =
        random_bipartite(d_a, d_b, rng.uniform_int(1, d_a * d_b), rng.engine()());
    const int k = rng.uniform_int(1, d_a - 1);

    for (double x = 0.0; x <= 5.0 + 1e-9; x += 0.25) {
      const WeakMeasurement w = WeakMeasurement::split(d_a, k, x);
      defect[0] = std::max(defect[0], (weak_apply(rho, w).mat() - weak_interpolate(rho, w).mat())
                                          .cwiseAbs()
                                          .maxCoeff());
    }

    const WeakMeasurement w0 = WeakMeasurement::split(d_a, k, 0.0);
    const WeakMeasurement w40 = WeakMeasurement::split(d_a, k, 40.0);
    const WeakMeasurement wx = WeakMeasurement::split(d_a, k, rng.uniform(0.05, 5.0));
    defect[1] = std::abs(weak_fidelity(rho, w0) - 1.0);

    const double a = linear_purity(rho.state());
    const double p = hs_inner(rho.mat(), detail::dichotomy_dephase_raw(rho.mat(), rho.dim_b(), wx))
                         .real();
    defect[2] = std::abs(weak_fidelity(rho, w40) - p / a);
    defect[2] = std::max(defect[2], std::max(0.0, p / a - 1e-10 - weak_fidelity(rho, wx)));
    defect[2] = std::max(defect[2], std::max(0.0, weak_fidelity(rho, wx) - 1.0 - 1e-12));

    defect[3] = std::abs(weak_fidelity(rho, wx) - weak_fidelity_zeta(rho, wx));

    defect[4] = std::abs(weak_purity(rho, w0) - fidelity_purity(rho.state()));
    const double limit = std::log(rho.dim() * p) / std::log(double(rho.dim()));
    defect[4] = std::max(defect[4], std::abs(weak_purity(rho, w40) - limit));

    double prev = std::numeric_limits<double>::infinity();
    for (double x = 0.0; x <= 5.0 + 1e-9; x += 0.5) {
      const double wp = weak_purity(rho, WeakMeasurement::split(d_a, k, x));
      defect[5] = std::max(defect[5], wp - prev);
      prev = wp;
    }
  });
  return {props.begin(), props.end()};
}

}  // namespace harness

inline HarnessReport run_harness(const std::string& suite, long trials, std::uint64_t seed) {
  HarnessReport report{suite, trials, seed, {}};
  auto extend = [&](const std::vector<PropertyResult>& rs) {
    report.results.insert(report.results.end(), rs.begin(), rs.end());
  };
  const bool all = suite == "all";
  if (all || suite == "fidelity") extend(harness::fidelity_suite(mix_seed(seed, 101), trials));
  if (all || suite == "purity") extend(harness::purity_suite(mix_seed(seed, 102), trials));
  if (all || suite == "coherence") extend(harness::coherence_suite(mix_seed(seed, 103), trials));
  if (all || suite == "correlation")
    extend(harness::correlation_suite(mix_seed(seed, 104), trials));
  if (all || suite == "weak") extend(harness::weak_suite(mix_seed(seed, 105), trials));
  if (report.results.empty()) {
    throw std::invalid_argument(
        "unknown suite '" + suite +
        "'; expected fidelity, purity, coherence, correlation, weak, or all");
  }
  return report;
}

inline std::string HarnessReport::render() const {
  std::string out = "property harness: suite=" + suite + " trials=" + std::to_string(trials) +
                    " seed=" + std::to_string(seed) + "\n";
  long guaranteed = 0, guaranteed_passed = 0, probes = 0, probe_violations = 0;
  char buf[192];
  for (const PropertyResult& r : results) {
    const char* tag = r.guaranteed ? (r.passed() ? "PASS " : "FAIL ") : "probe";
    std::snprintf(buf, sizeof buf, "[%s] %-55s trials=%-6ld tol=%-8.1e max_violation=%.3e",
                  tag, r.name.c_str(), r.trials, r.tolerance, r.max_violation);
    out += buf;
    if (r.violation_count > 0) {
      out += " violations=" + std::to_string(r.violation_count) + " seeds:";
      for (std::uint64_t s : r.failing_seeds) out += " " + std::to_string(s);
    }
    if (!r.note.empty()) out += " (" + r.note + ")";
    out += "\n";
    if (r.guaranteed) {
      ++guaranteed;
      if (r.passed()) ++guaranteed_passed;
    } else {
      ++probes;
      probe_violations += r.violation_count;
    }
  }
  out += "guaranteed properties: " + std::to_string(guaranteed_passed) + "/" +
         std::to_string(guaranteed) + " passed\n";
  out += "probe properties: " + std::to_string(probes) + " reported, " +
         std::to_string(probe_violations) + " violations\n";
  return out;
}

}  // namespace qres
