#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qres {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using complexd = std::complex<double>;

// Numerical tolerances used across the library.
inline constexpr double hermiticity_tol = 1e-10;
inline constexpr double psd_tol = 1e-9;
inline constexpr double unit_trace_tol = 1e-10;
inline constexpr double completeness_tol = 1e-10;

// Thrown when two operands have incompatible shapes.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown for dimensions the library does not support, including the
// configurable resource guard (default 64, overridable via set_max_dim).
struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A state or operator failed one of its structural invariants. `invariant`
// names the violated condition so front ends can report it.
struct ValidationError : std::runtime_error {
  ValidationError(std::string which, const std::string& message)
      : std::runtime_error(message), invariant(std::move(which)) {}
  std::string invariant;
};

namespace detail {
inline int& max_dim_slot() {
  static int value = 64;
  return value;
}
}  // namespace detail

inline int max_dim() { return detail::max_dim_slot(); }
inline void set_max_dim(int d) { detail::max_dim_slot() = d; }

inline void check_dim_guard(Eigen::Index rows, Eigen::Index cols) {
  if (rows > max_dim() || cols > max_dim()) {
    throw UnsupportedDimension("dimension " + std::to_string(std::max(rows, cols)) +
                               " exceeds configured maximum " + std::to_string(max_dim()));
  }
}

inline Matrix identity(int d) { return Matrix::Identity(d, d); }

inline Vector ket(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

// |i><i| on a d-dimensional space.
inline Matrix basis_projector(int d, int i) {
  Matrix p = Matrix::Zero(d, d);
  p(i, i) = 1.0;
  return p;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline bool all_finite(const Matrix& m) {
  return m.allFinite();
}

inline double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& m, double tol = hermiticity_tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

inline bool is_unitary(const Matrix& m, double tol = hermiticity_tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - identity(static_cast<int>(m.rows()))).cwiseAbs().maxCoeff() <= tol;
}

// Kronecker product, guarded against blowing past the configured dimension cap.
inline Matrix tensor(const Matrix& a, const Matrix& b) {
  check_dim_guard(a.rows() * b.rows(), a.cols() * b.cols());
  return Eigen::kroneckerProduct(a, b);
}

enum class Subsystem { a, b };

// Partial trace of a (d_a*d_b)x(d_a*d_b) matrix in a-major index ordering
// (composite index = i_a*d_b + i_b).
inline Matrix partial_trace(const Matrix& m, int d_a, int d_b, Subsystem keep) {
  if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(d_a) * d_b) {
    throw DimensionMismatch("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " +
                            std::to_string(d_a * d_b) + " square");
  }
  if (keep == Subsystem::a) {
    Matrix out = Matrix::Zero(d_a, d_a);
    for (int i = 0; i < d_a; ++i)
      for (int j = 0; j < d_a; ++j)
        for (int k = 0; k < d_b; ++k) out(i, j) += m(i * d_b + k, j * d_b + k);
    return out;
  }
  Matrix out = Matrix::Zero(d_b, d_b);
  for (int k = 0; k < d_b; ++k)
    for (int l = 0; l < d_b; ++l)
      for (int i = 0; i < d_a; ++i) out(k, l) += m(i * d_b + k, i * d_b + l);
  return out;
}

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are the matching eigenvectors
};

// Hermitian eigendecomposition. Input must be Hermitian within tolerance.
inline EigenSystem eig_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("eig_hermitian: matrix not square");
  const double defect = hermiticity_defect(m);
  if (defect > hermiticity_tol) {
    throw ValidationError("hermiticity", "eig_hermitian: input deviates from Hermitian by " +
                                             std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Square root of a positive semidefinite matrix. Eigenvalues slightly below
// zero (within psd_tol) are clamped; anything lower is an error.
inline Matrix psd_sqrt(const Matrix& m) {
  EigenSystem es = eig_hermitian(m);
  if (es.values.minCoeff() < -psd_tol) {
    throw ValidationError("positivity", "psd_sqrt: eigenvalue " +
                                            std::to_string(es.values.minCoeff()) +
                                            " below tolerance");
  }
  RealVector roots = es.values.cwiseMax(0.0).cwiseSqrt();
  Matrix s = es.vectors * roots.asDiagonal() * es.vectors.adjoint();
  return 0.5 * (s + s.adjoint().eval());
}

// Hilbert-Schmidt inner product tr(a^dag b).
inline complexd hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("hs_inner: operand shapes differ");
  }
  return a.conjugate().cwiseProduct(b).sum();
}

inline double hs_norm_sq(const Matrix& a) { return hs_inner(a, a).real(); }

}  // namespace qres
