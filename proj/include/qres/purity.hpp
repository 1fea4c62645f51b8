#pragma once

#include <cmath>
#include <optional>

#include "qres/fidelity.hpp"
#include "qres/states.hpp"

namespace qres {

// tr ρ^2, in [1/d, 1].
inline double linear_purity(const DensityMatrix& rho) { return hs_norm_sq(rho.mat()); }

// tr ρ^2 - 1/d: squared Hilbert-Schmidt distance to the maximally mixed
// state, and the Brukner-Zeilinger information content.
inline double hs_purity(const DensityMatrix& rho) {
  return linear_purity(rho) - 1.0 / rho.dim();
}

// -log_base F(ρ, I/d) = log_base(d tr ρ^2). With the default base d the
// value lies in [0,1]; base 2 recovers the log2(d) normalization for pure
// states. A one-dimensional state has purity 0 by convention.
inline double fidelity_purity(const DensityMatrix& rho, std::optional<int> base = std::nullopt) {
  const int d = rho.dim();
  if (d == 1) return 0.0;
  const int b = base.value_or(d);
  if (b < 2) throw std::invalid_argument("fidelity_purity: log base must be >= 2");
  return std::log(d * linear_purity(rho)) / std::log(static_cast<double>(b));
}

// log_d(d ||Γ||^2): the correlation-matrix route to the same purity.
inline double purity_from_gamma(const CorrelationMatrix& gamma, int d) {
  if (d < 2) throw std::invalid_argument("purity_from_gamma: total dimension must be >= 2");
  return std::log(d * gamma.gamma.squaredNorm()) / std::log(static_cast<double>(d));
}

struct PurityReport {
  double linear;
  double hilbert_schmidt;
  double fidelity_purity;
  int log_base;
};

inline PurityReport purity_report(const DensityMatrix& rho, std::optional<int> base = std::nullopt) {
  const int b = base.value_or(rho.dim());
  return {linear_purity(rho), hs_purity(rho), fidelity_purity(rho, b), b};
}

}  // namespace qres
