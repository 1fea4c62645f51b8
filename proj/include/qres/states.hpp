#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qres/linalg.hpp"
#include "qres/rng.hpp"

namespace qres {

// A d x d density operator: Hermitian, unit trace, positive semidefinite.
// Construction validates all three invariants and throws ValidationError
// naming the first one that fails.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
      throw ValidationError("square", "density matrix must be square and non-empty");
    }
    check_dim_guard(mat_.rows(), mat_.cols());
    if (!all_finite(mat_)) {
      throw ValidationError("finite-entries", "density matrix has NaN or Inf entries");
    }
    const double herm = hermiticity_defect(mat_);
    if (herm > hermiticity_tol) {
      throw ValidationError("hermiticity", "density matrix deviates from Hermitian by " +
                                               std::to_string(herm));
    }
    const double trace_err = std::abs(mat_.trace() - complexd(1.0, 0.0));
    if (trace_err > unit_trace_tol) {
      throw ValidationError("unit-trace",
                            "density matrix trace deviates from 1 by " + std::to_string(trace_err));
    }
    const double min_eig = eig_hermitian(mat_).values.minCoeff();
    if (min_eig < -psd_tol) {
      throw ValidationError("positivity", "density matrix has eigenvalue " +
                                              std::to_string(min_eig) + " below tolerance");
    }
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

 private:
  Matrix mat_;
};

inline DensityMatrix pure_state(const Vector& psi) {
  Vector v = psi / psi.norm();
  return DensityMatrix(v * v.adjoint());
}

inline DensityMatrix maximally_mixed(int d) {
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

// UρU^dag. Used to move between coherence reference bases.
inline DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw DimensionMismatch("conjugate: unitary dimension does not match state");
  }
  return DensityMatrix(u * rho.mat() * u.adjoint());
}

// A density matrix with a recorded (d_a, d_b) tensor factorization,
// a-major index ordering. d_b = 1 embeds a unipartite state.
class BipartiteState {
 public:
  BipartiteState(int d_a, int d_b, DensityMatrix state)
      : d_a_(d_a), d_b_(d_b), state_(std::move(state)) {
    if (d_a < 1 || d_b < 1 || d_a * d_b != state_.dim()) {
      throw ValidationError("dims-product",
                            "subsystem dimensions " + std::to_string(d_a) + "x" +
                                std::to_string(d_b) + " do not multiply to state dimension " +
                                std::to_string(state_.dim()));
    }
  }

  int dim_a() const { return d_a_; }
  int dim_b() const { return d_b_; }
  int dim() const { return state_.dim(); }
  const DensityMatrix& state() const { return state_; }
  const Matrix& mat() const { return state_.mat(); }

  DensityMatrix marginal_a() const {
    return DensityMatrix(partial_trace(mat(), d_a_, d_b_, Subsystem::a));
  }
  DensityMatrix marginal_b() const {
    return DensityMatrix(partial_trace(mat(), d_a_, d_b_, Subsystem::b));
  }

 private:
  int d_a_;
  int d_b_;
  DensityMatrix state_;
};

// Bell-diagonal two-qubit family (I⊗I + sum_i c_i σ_i⊗σ_i)/4.
inline BipartiteState bell_diagonal(double c1, double c2, double c3) {
  // Spectrum is known in closed form; reject non-physical triples up front.
  const double eigs[4] = {(1 - c1 - c2 - c3) / 4, (1 - c1 + c2 + c3) / 4,
                          (1 + c1 - c2 + c3) / 4, (1 + c1 + c2 - c3) / 4};
  for (double e : eigs) {
    if (e < -psd_tol) {
      throw ValidationError("positivity", "bell_diagonal: parameter triple gives eigenvalue " +
                                              std::to_string(e));
    }
  }
  Matrix m = tensor(identity(2), identity(2));
  m += c1 * tensor(pauli_x(), pauli_x());
  m += c2 * tensor(pauli_y(), pauli_y());
  m += c3 * tensor(pauli_z(), pauli_z());
  return BipartiteState(2, 2, DensityMatrix(m / 4.0));
}

// Swap (flip) operator on C^d ⊗ C^d.
inline Matrix flip_operator(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) f(a * d + b, b * d + a) = 1.0;
  return f;
}

// Werner family on C^d ⊗ C^d, parametrized so the constructed matrix is the
// ground truth for all derived quantities.
inline BipartiteState werner(int d, double y) {
  if (d < 2 || d > 8) {
    throw UnsupportedDimension("werner: local dimension must be in [2,8], got " +
                               std::to_string(d));
  }
  if (y < -1.0 || y > 1.0) {
    throw std::invalid_argument("werner: parameter y must lie in [-1,1], got " +
                                std::to_string(y));
  }
  const double denom = static_cast<double>(d) * d * d - d;
  Matrix m = ((d - y) / denom) * Matrix::Identity(d * d, d * d);
  m += ((y * d - 1) / denom) * flip_operator(d);
  return BipartiteState(d, d, DensityMatrix(m));
}

// sum_k p_k |k><k| ⊗ ρ_k in the computational basis of subsystem a.
inline BipartiteState classical_quantum(const std::vector<double>& p,
                                        const std::vector<DensityMatrix>& blocks) {
  if (p.empty() || p.size() != blocks.size()) {
    throw DimensionMismatch("classical_quantum: probability and block counts differ");
  }
  double total = 0.0;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument("classical_quantum: negative probability");
    total += v;
  }
  if (std::abs(total - 1.0) > unit_trace_tol) {
    throw std::invalid_argument("classical_quantum: probabilities sum to " +
                                std::to_string(total));
  }
  const int d_a = static_cast<int>(p.size());
  const int d_b = blocks.front().dim();
  Matrix m = Matrix::Zero(d_a * d_b, d_a * d_b);
  for (int k = 0; k < d_a; ++k) {
    if (blocks[k].dim() != d_b) {
      throw DimensionMismatch("classical_quantum: block dimensions differ");
    }
    m.block(k * d_b, k * d_b, d_b, d_b) = p[k] * blocks[k].mat();
  }
  return BipartiteState(d_a, d_b, DensityMatrix(m));
}

// GG^dag / tr(GG^dag) for a d x rank standard complex Gaussian G.
inline DensityMatrix random_density(int d, int rank, std::uint64_t seed) {
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("random_density: rank must be in [1,d]");
  }
  Rng rng(seed);
  Matrix g = gaussian_matrix(d, rank, rng);
  Matrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

inline BipartiteState random_bipartite(int d_a, int d_b, int rank, std::uint64_t seed) {
  return BipartiteState(d_a, d_b, random_density(d_a * d_b, rank, seed));
}

// Ordered SU(d) generator set: the (d^2-d)/2 symmetric off-diagonal
// generators first, then the matching antisymmetric ones in the same (i,j)
// pair order, then the d-1 diagonal ones. tr(X_i X_j) = 2 δ_ij.
class GeneratorBasis {
 public:
  explicit GeneratorBasis(int d) : dim_(d) {
    if (d < 2 || d > 8) {
      throw UnsupportedDimension("generator_basis: dimension must be in [2,8]");
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Matrix s = Matrix::Zero(d, d);
        s(i, j) = 1.0;
        s(j, i) = 1.0;
        generators_.push_back(s);
      }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Matrix a = Matrix::Zero(d, d);
        a(i, j) = complexd(0, -1);
        a(j, i) = complexd(0, 1);
        generators_.push_back(a);
      }
    for (int l = 1; l < d; ++l) {
      Matrix g = Matrix::Zero(d, d);
      const double factor = std::sqrt(2.0 / (l * (l + 1.0)));
      for (int j = 0; j < l; ++j) g(j, j) = factor;
      g(l, l) = -l * factor;
      generators_.push_back(g);
    }
  }

  int dim() const { return dim_; }
  int pair_count() const { return (dim_ * dim_ - dim_) / 2; }  // k in the l1 pairing
  int size() const { return static_cast<int>(generators_.size()); }
  const Matrix& operator[](int i) const { return generators_[i]; }
  const std::vector<Matrix>& generators() const { return generators_; }

 private:
  int dim_;
  std::vector<Matrix> generators_;
};

inline GeneratorBasis generator_basis(int d) { return GeneratorBasis(d); }

// Coordinates x_i = tr(ρ X_i); ρ = I/d + (1/2) sum_i x_i X_i.
inline RealVector bloch_expand(const DensityMatrix& rho, const GeneratorBasis& basis) {
  if (rho.dim() != basis.dim()) {
    throw DimensionMismatch("bloch_expand: state and basis dimensions differ");
  }
  RealVector x(basis.size());
  for (int i = 0; i < basis.size(); ++i) x(i) = (rho.mat() * basis[i]).trace().real();
  return x;
}

inline Matrix bloch_reconstruct(const RealVector& x, const GeneratorBasis& basis) {
  Matrix m = Matrix::Identity(basis.dim(), basis.dim()) / static_cast<double>(basis.dim());
  for (int i = 0; i < basis.size(); ++i) m += 0.5 * x(i) * basis[i];
  return m;
}

// Correlation matrix γ_ij = tr(ρ X_i ⊗ Y_j) in the orthonormal Hermitian
// operator basis: X_1 = I/sqrt(m), then the SU(m) generators scaled by
// 1/sqrt(2) (same for Y on the b side). ||Γ||^2 equals tr ρ^2.
struct CorrelationMatrix {
  Eigen::MatrixXd gamma;  // m^2 x n^2
};

inline std::vector<Matrix> orthonormal_hermitian_basis(int d) {
  std::vector<Matrix> ops;
  ops.push_back(Matrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  const GeneratorBasis gen(d);
  const double scale = 1.0 / std::sqrt(2.0);
  for (const Matrix& g : gen.generators()) ops.push_back(scale * g);
  return ops;
}

inline CorrelationMatrix correlation_matrix(const BipartiteState& rho) {
  if (rho.dim_a() > 8 || rho.dim_b() > 8) {
    throw UnsupportedDimension("correlation_matrix: local dimensions must be <= 8");
  }
  const auto xs = orthonormal_hermitian_basis(rho.dim_a());
  const auto ys = orthonormal_hermitian_basis(rho.dim_b());
  Eigen::MatrixXd gamma(xs.size(), ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          hs_inner(tensor(xs[i], ys[j]), rho.mat()).real();
  return {std::move(gamma)};
}

}  // namespace qres
