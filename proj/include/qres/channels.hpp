#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qres/linalg.hpp"
#include "qres/rng.hpp"
#include "qres/states.hpp"

namespace qres {

// CPTP map in Kraus form: ρ -> sum_k A_k ρ A_k^dag with sum_k A_k^dag A_k = I.
struct KrausChannel {
  std::vector<Matrix> kraus;

  explicit KrausChannel(std::vector<Matrix> ops) : kraus(std::move(ops)) {
    if (kraus.empty()) throw std::invalid_argument("KrausChannel: empty Kraus set");
    const Eigen::Index d = kraus.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& a : kraus) {
      if (a.rows() != d || a.cols() != d) {
        throw DimensionMismatch("KrausChannel: Kraus operators must share one square dimension");
      }
      sum += a.adjoint() * a;
    }
    const double defect = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > completeness_tol) {
      throw ValidationError("completeness", "Kraus completeness deviates from identity by " +
                                                std::to_string(defect));
    }
  }

  int dim() const { return static_cast<int>(kraus.front().rows()); }

  Matrix apply(const Matrix& rho) const {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& a : kraus) out += a * rho * a.adjoint();
    return out;
  }
};

inline DensityMatrix apply_channel(const KrausChannel& c, const DensityMatrix& rho) {
  if (c.dim() != rho.dim()) throw DimensionMismatch("apply_channel: dimensions differ");
  return DensityMatrix(c.apply(rho.mat()));
}

// Kraus set {sqrt(p_i) U_i}. Always unital.
inline KrausChannel mixture_of_unitaries(const std::vector<double>& p,
                                         const std::vector<Matrix>& us) {
  if (p.empty() || p.size() != us.size()) {
    throw DimensionMismatch("mixture_of_unitaries: probability and unitary counts differ");
  }
  double total = 0.0;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument("mixture_of_unitaries: negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > unit_trace_tol) {
    throw std::invalid_argument("mixture_of_unitaries: probabilities sum to " +
                                std::to_string(total));
  }
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (!is_unitary(us[i])) {
      throw ValidationError("unitarity", "mixture_of_unitaries: component " + std::to_string(i) +
                                             " is not unitary");
    }
    kraus.push_back(std::sqrt(p[i]) * us[i]);
  }
  return KrausChannel(std::move(kraus));
}

// ρ -> tr_E[U (ρ ⊗ I/env_dim) U^dag], system-major index ordering.
// Trace preserving and unital for every unitary U.
class NoisyOperation {
 public:
  NoisyOperation(int env_dim, Matrix u) : env_dim_(env_dim), u_(std::move(u)) {
    if (env_dim < 1) throw std::invalid_argument("NoisyOperation: environment dimension < 1");
    if (u_.rows() != u_.cols() || u_.rows() % env_dim != 0) {
      throw DimensionMismatch("NoisyOperation: unitary does not factor over the environment");
    }
    if (!is_unitary(u_)) {
      throw ValidationError("unitarity", "NoisyOperation: U is not unitary");
    }
    sys_dim_ = static_cast<int>(u_.rows()) / env_dim;
  }

  int dim() const { return sys_dim_; }
  int env_dim() const { return env_dim_; }

  Matrix apply(const Matrix& rho) const {
    if (rho.rows() != sys_dim_) throw DimensionMismatch("NoisyOperation: state dimension differs");
    const Matrix env = Matrix::Identity(env_dim_, env_dim_) / static_cast<double>(env_dim_);
    const Matrix w = u_ * tensor(rho, env) * u_.adjoint();
    return partial_trace(w, sys_dim_, env_dim_, Subsystem::a);
  }

  DensityMatrix operator()(const DensityMatrix& rho) const {
    return DensityMatrix(apply(rho.mat()));
  }

 private:
  int env_dim_;
  int sys_dim_;
  Matrix u_;
};

inline NoisyOperation noisy_operation(int env_dim, const Matrix& u) {
  return NoisyOperation(env_dim, u);
}

// Stinespring isometry of a Kraus channel with K operators on dimension d:
// the (K d) x d vertical stack of the A_k, environment index major. Then
// V^dag V = I and tr_env[V ρ V^dag] reproduces the channel, with A_k ρ
// A_k^dag sitting in the (k,k) environment block.
inline Matrix stinespring_isometry(const KrausChannel& c) {
  const int d = c.dim();
  const int n = static_cast<int>(c.kraus.size());
  Matrix v(n * d, d);
  for (int k = 0; k < n; ++k) v.block(k * d, 0, d, d) = c.kraus[k];
  const double defect = (v.adjoint() * v - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > completeness_tol) {
    throw ValidationError("completeness",
                          "stinespring_isometry: V^dag V deviates from identity by " +
                              std::to_string(defect));
  }
  return v;
}

// Random incoherence-preserving channel: the basis is split into n_kraus
// blocks and each block projector is composed with a random permutation and
// diagonal phases. Every Kraus operator has at most one nonzero entry per
// column, so diagonal states map to diagonal states; completeness is exact
// by construction.
inline KrausChannel sample_incoherent_channel(int d, int n_kraus, std::uint64_t seed) {
  Rng rng(seed);
  const int blocks = std::clamp(n_kraus, 1, d);
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng.engine());

  // Random block sizes: `blocks` nonempty parts of the shuffled basis.
  std::vector<int> sizes(blocks, 1);
  for (int extra = d - blocks; extra > 0; --extra) ++sizes[rng.uniform_int(0, blocks - 1)];

  std::vector<Matrix> kraus;
  int offset = 0;
  for (int b = 0; b < blocks; ++b) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    Matrix a = Matrix::Zero(d, d);
    for (int idx = offset; idx < offset + sizes[b]; ++idx) {
      const int col = order[idx];
      a(perm[col], col) = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    }
    offset += sizes[b];
    kraus.push_back(std::move(a));
  }
  return KrausChannel(std::move(kraus));
}

// Random CPTP map: Kraus operators are the d-column blocks of a Haar
// isometry, so completeness holds to machine precision. Used by the harness
// as a generic (not necessarily unital) quantum operation.
inline KrausChannel sample_generic_channel(int d, int n_kraus, std::uint64_t seed) {
  Rng rng(seed);
  const int n = std::max(1, n_kraus);
  const Matrix u = haar_unitary(n * d, rng);
  std::vector<Matrix> kraus;
  for (int k = 0; k < n; ++k) kraus.push_back(u.block(k * d, 0, d, d));
  return KrausChannel(std::move(kraus));
}

}  // namespace qres
