#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qres/linalg.hpp"
#include "qres/report.hpp"
#include "qres/rng.hpp"
#include "qres/states.hpp"

namespace qres {

// (tr ab)^2 / (tr a^2 tr b^2) on Hermitian positive operators, without any
// unit-trace assumption. Tiny negative round-off in tr(ab) is clamped before
// squaring, and the result is clamped into [0,1].
inline double fidelity_ratio(const Matrix& a, const Matrix& b) {
  double overlap = hs_inner(a, b).real();
  if (overlap < 0.0) overlap = 0.0;
  const double denom = hs_norm_sq(a) * hs_norm_sq(b);
  if (denom <= 0.0) return 0.0;
  double f = overlap * overlap / denom;
  return std::clamp(f, 0.0, 1.0);
}

// Fidelity (tr ρσ)^2 / (tr ρ^2 tr σ^2).
inline double fidelity_alt(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("fidelity_alt: state dimensions differ");
  }
  return fidelity_ratio(rho.mat(), sigma.mat());
}

// Uhlmann fidelity (tr sqrt(sqrt(σ) ρ sqrt(σ)))^2.
inline double fidelity_uhlmann(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("fidelity_uhlmann: state dimensions differ");
  }
  const Matrix s = psd_sqrt(sigma.mat());
  Matrix inner = s * rho.mat() * s;
  inner = 0.5 * (inner + inner.adjoint().eval());
  const double root_trace = psd_sqrt(inner).trace().real();
  return std::clamp(root_trace * root_trace, 0.0, 1.0);
}

namespace detail {

// Assembles the fidelity of the projector-dephased pair from per-block
// traces. Orthogonality makes all three traces additive over blocks, so this
// is an independent route to fidelity_ratio(sum_i ρ_i, sum_i σ_i); blocks
// vanishing on one side contribute zero overlap, blocks vanishing on both
// sides drop out entirely.
inline double blockwise_fidelity(const std::vector<Matrix>& rho_blocks,
                                 const std::vector<Matrix>& sigma_blocks) {
  double overlap = 0.0, rho_norm = 0.0, sigma_norm = 0.0;
  for (std::size_t i = 0; i < rho_blocks.size(); ++i) {
    const double r = hs_norm_sq(rho_blocks[i]);
    const double s = hs_norm_sq(sigma_blocks[i]);
    if (r == 0.0 && s == 0.0) continue;
    overlap += hs_inner(rho_blocks[i], sigma_blocks[i]).real();
    rho_norm += r;
    sigma_norm += s;
  }
  if (overlap < 0.0) overlap = 0.0;
  const double denom = rho_norm * sigma_norm;
  if (denom <= 0.0) return 0.0;
  return std::clamp(overlap * overlap / denom, 0.0, 1.0);
}

inline DensityMatrix biased_diagonal_state(int d, double diag_weight, Rng& rng) {
  Matrix m = random_density(d, rng.uniform_int(1, d), rng.engine()()).mat();
  Matrix diag = m.diagonal().asDiagonal();
  return DensityMatrix(diag_weight * diag + (1.0 - diag_weight) * m);
}

}  // namespace detail

// Randomized check of the fidelity property suite F1-F6. All six are
// guaranteed properties; the report lists the worst defect and reproducing
// seeds for anything beyond tolerance.
inline std::vector<PropertyResult> check_f_properties(std::uint64_t seed, long trials) {
  PropertyResult f1{"F1 bounds and maximum at equal states", true, trials, 1e-12};
  PropertyResult f2{"F2 symmetry (exact)", true, trials, 0.0};
  PropertyResult f3{"F3 unitary invariance", true, trials, 1e-10};
  PropertyResult f4{"F4 pure-state form <psi|rho|psi>^2 / tr(rho^2)", true, trials, 1e-10};
  PropertyResult f5{"F5 multiplicativity over tensor products", true, trials, 1e-10};
  PropertyResult f6{"F6 additivity over orthogonal projector sandwiches", true, trials, 1e-10};

  for (long trial = 0; trial < trials; ++trial) {
    const std::uint64_t s = mix_seed(seed, static_cast<std::uint64_t>(trial));
    Rng rng(s);
    const int d = rng.uniform_int(2, 4);
    const DensityMatrix rho = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const DensityMatrix sigma = random_density(d, rng.uniform_int(1, d), rng.engine()());

    const double f = fidelity_alt(rho, sigma);
    f1.record(std::max({-f, f - 1.0, std::abs(fidelity_alt(rho, rho) - 1.0)}), s);
    f2.record(std::abs(f - fidelity_alt(sigma, rho)), s);

    const Matrix u = haar_unitary(d, rng);
    f3.record(std::abs(fidelity_alt(conjugate(rho, u), conjugate(sigma, u)) - f), s);

    Vector psi = Vector::Zero(d);
    for (int i = 0; i < d; ++i) psi(i) = rng.cgauss();
    psi.normalize();
    const double expectation = (psi.adjoint() * rho.mat() * psi).value().real();
    const double expected_f4 = expectation * expectation / hs_norm_sq(rho.mat());
    f4.record(std::abs(fidelity_alt(rho, pure_state(psi)) - expected_f4), s);

    const DensityMatrix rho2 = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const DensityMatrix sigma2 = random_density(d, rng.uniform_int(1, d), rng.engine()());
    const DensityMatrix rho12(tensor(rho.mat(), rho2.mat()));
    const DensityMatrix sigma12(tensor(sigma.mat(), sigma2.mat()));
    f5.record(std::abs(fidelity_alt(rho12, sigma12) - f * fidelity_alt(rho2, sigma2)), s);

    // F6 on diagonal-dominant pairs with the computational rank-1 projectors.
    const DensityMatrix rho_dd = detail::biased_diagonal_state(d, 0.7, rng);
    const DensityMatrix sigma_dd = detail::biased_diagonal_state(d, 0.7, rng);
    std::vector<Matrix> rho_blocks, sigma_blocks;
    Matrix rho_sum = Matrix::Zero(d, d), sigma_sum = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      const Matrix p = basis_projector(d, i);
      rho_blocks.push_back(p * rho_dd.mat() * p);
      sigma_blocks.push_back(p * sigma_dd.mat() * p);
      rho_sum += rho_blocks.back();
      sigma_sum += sigma_blocks.back();
    }
    const double direct = fidelity_ratio(rho_sum, sigma_sum);
    const double assembled = detail::blockwise_fidelity(rho_blocks, sigma_blocks);
    f6.record(std::abs(direct - assembled), s);
  }
  return {f1, f2, f3, f4, f5, f6};
}

}  // namespace qres
