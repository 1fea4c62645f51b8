#pragma once

#include <cmath>
#include <optional>

#include "qres/purity.hpp"
#include "qres/states.hpp"

namespace qres {

// Fidelity-based coherence monotone 1 - max over diagonal states δ of
// F(ρ,δ). The maximizing direction is δ ∝ diag(ρ) (the ratio is scale
// invariant in δ and Cauchy-Schwarz-bounded), which lies on the simplex, so
// the optimum is sum_i ρ_ii^2 / tr ρ^2 in closed form. The incoherent set is
// always the computational basis; use conjugate() to change basis first.
inline double coherence_fidelity(const DensityMatrix& rho) {
  double diag_sq = 0.0;
  for (int i = 0; i < rho.dim(); ++i) {
    const double p = rho.mat()(i, i).real();
    diag_sq += p * p;
  }
  const double c = 1.0 - diag_sq / linear_purity(rho);
  return c < 0.0 ? 0.0 : c;
}

// l1 coherence: sum of |ρ_ij| over i != j, in [0, d-1].
inline double coherence_l1(const DensityMatrix& rho) {
  double total = 0.0;
  for (int i = 0; i < rho.dim(); ++i)
    for (int j = 0; j < rho.dim(); ++j)
      if (i != j) total += std::abs(rho.mat()(i, j));
  return total;
}

// Generator-pair route to the l1 coherence: sum_{i=1..k} sqrt(x_i^2 +
// x_{i+k}^2) with k = (d^2-d)/2, pairing each symmetric generator with its
// antisymmetric partner.
inline double coherence_l1_from_bloch(const RealVector& x, const GeneratorBasis& basis) {
  const int k = basis.pair_count();
  double total = 0.0;
  for (int i = 0; i < k; ++i) total += std::hypot(x(i), x(i + k));
  return total;
}

// Upper bound of the fidelity coherence over the unitary orbit:
// 1 - d^{-P_F(ρ)} = 1 - 1/(d tr ρ^2).
inline double maximal_coherence(const DensityMatrix& rho) {
  return 1.0 - 1.0 / (rho.dim() * linear_purity(rho));
}

// State classifier τ = (P_F + C_l1/(d-1)) / 2, in [0,1]: 0 for the
// maximally mixed (incoherent) state, 1 for a maximally coherent pure state.
inline double tau_classifier(const DensityMatrix& rho, std::optional<int> base = std::nullopt) {
  const int d = rho.dim();
  if (d == 1) throw UnsupportedDimension("tau_classifier: undefined for dimension 1");
  return 0.5 * (fidelity_purity(rho, base) + coherence_l1(rho) / (d - 1));
}

}  // namespace qres
