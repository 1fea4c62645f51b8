#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qres/coherence.hpp"
#include "qres/fidelity.hpp"
#include "qres/optimize.hpp"
#include "qres/purity.hpp"
#include "qres/rng.hpp"
#include "qres/states.hpp"

namespace qres {

// Complete ordered set of rank-1 orthogonal projectors on a subsystem.
struct ProjectiveMeasurement {
  int subsystem_dim;
  std::vector<Matrix> projectors;

  ProjectiveMeasurement(int d, std::vector<Matrix> projs)
      : subsystem_dim(d), projectors(std::move(projs)) {
    if (static_cast<int>(projectors.size()) != d) {
      throw DimensionMismatch("ProjectiveMeasurement: expected " + std::to_string(d) +
                              " projectors");
    }
    Matrix sum = Matrix::Zero(d, d);
    for (std::size_t k = 0; k < projectors.size(); ++k) {
      for (std::size_t l = 0; l < projectors.size(); ++l) {
        const Matrix prod = projectors[k] * projectors[l];
        const Matrix expected = (k == l) ? projectors[k] : Matrix::Zero(d, d);
        if ((prod - expected).cwiseAbs().maxCoeff() > completeness_tol) {
          throw ValidationError("orthogonality",
                                "ProjectiveMeasurement: projectors are not orthogonal idempotents");
        }
      }
      sum += projectors[k];
    }
    if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > completeness_tol) {
      throw ValidationError("completeness", "ProjectiveMeasurement: projectors do not sum to I");
    }
  }

  static ProjectiveMeasurement computational(int d) {
    std::vector<Matrix> projs;
    for (int i = 0; i < d; ++i) projs.push_back(basis_projector(d, i));
    return {d, std::move(projs)};
  }

  // Measurement in the basis given by the columns of a unitary.
  static ProjectiveMeasurement from_unitary(const Matrix& u) {
    const int d = static_cast<int>(u.rows());
    std::vector<Matrix> projs;
    for (int i = 0; i < d; ++i) projs.push_back(u.col(i) * u.col(i).adjoint());
    return {d, std::move(projs)};
  }
};

namespace detail {

inline Matrix measure_raw(const Matrix& m, int d_a, int d_b, const std::vector<Matrix>& projs) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  const Matrix eye_b = Matrix::Identity(d_b, d_b);
  for (const Matrix& p : projs) {
    const Matrix lifted = tensor(p, eye_b);
    out += lifted * m * lifted;
  }
  return out;
}

// 1 - F(m, Pi(m)) on raw matrices.
inline double rel_coherence_raw(const Matrix& m, int d_a, int d_b,
                                const std::vector<Matrix>& projs) {
  return 1.0 - fidelity_ratio(m, measure_raw(m, d_a, d_b, projs));
}

}  // namespace detail

// Pi(ρ) = sum_k (Π_k ⊗ I) ρ (Π_k ⊗ I): dephasing of subsystem a in the
// measurement basis. Trace preserving and idempotent.
inline BipartiteState apply_measurement(const BipartiteState& rho,
                                        const ProjectiveMeasurement& m) {
  if (m.subsystem_dim != rho.dim_a()) {
    throw DimensionMismatch("apply_measurement: measurement acts on dimension " +
                            std::to_string(m.subsystem_dim) + ", subsystem a has " +
                            std::to_string(rho.dim_a()));
  }
  return {rho.dim_a(), rho.dim_b(),
          DensityMatrix(detail::measure_raw(rho.mat(), rho.dim_a(), rho.dim_b(), m.projectors))};
}

// Coherence relative to a measurement: 1 - F(ρ, Pi(ρ)).
inline double coherence_rel_measurement(const BipartiteState& rho,
                                        const ProjectiveMeasurement& m) {
  if (m.subsystem_dim != rho.dim_a()) {
    throw DimensionMismatch("coherence_rel_measurement: subsystem dimension mismatch");
  }
  return detail::rel_coherence_raw(rho.mat(), rho.dim_a(), rho.dim_b(), m.projectors);
}

// Δ_F(ρ|Π) = C_F(ρ|Π) - C_F(ρ^a|Π^a): the coherence the measurement sees in
// the global state beyond what it sees in the marginal.
inline double delta_coherence(const BipartiteState& rho, const ProjectiveMeasurement& m) {
  const Matrix marg = partial_trace(rho.mat(), rho.dim_a(), rho.dim_b(), Subsystem::a);
  return coherence_rel_measurement(rho, m) -
         detail::rel_coherence_raw(marg, rho.dim_a(), 1, m.projectors);
}

struct OptimizerOptions {
  int grid_theta = 64;           // Bloch-angle grid for d_a = 2
  int grid_phi = 128;
  int refine_top_cells = 3;      // grid cells handed to the simplex refinement
  int multistarts = 32;          // random restarts for d_a in {3,4}
  int nm_max_iter = 200;
  double nm_tol = 1e-9;
  bool constrain_marginal = false;  // fmin: restrict to measurements commuting with ρ^a
  std::uint64_t seed = 0x9e1a2dULL;
};

struct MeasurementOptimum {
  double value = 0.0;
  std::vector<double> params;  // (theta, phi) for d_a = 2, Givens parameters otherwise
  std::optional<ProjectiveMeasurement> argmin;
};

namespace detail {

using RawObjective = std::function<double(const std::vector<Matrix>&)>;

inline std::vector<Matrix> projectors_from_unitary(const Matrix& u) {
  std::vector<Matrix> projs;
  for (int i = 0; i < u.cols(); ++i) projs.push_back(u.col(i) * u.col(i).adjoint());
  return projs;
}

// Coarse grid over the Bloch sphere followed by simplex refinement from the
// best cells. The objective is smooth and 2-pi periodic, so the densest
// basin is always represented on a 64x128 grid.
inline MeasurementOptimum minimize_qubit_measurement(const RawObjective& objective,
                                                     const OptimizerOptions& opts) {
  auto eval_angles = [&](double theta, double phi) {
    return objective(projectors_from_unitary(bloch_unitary(theta, phi)));
  };

  struct Cell {
    double value, theta, phi;
  };
  std::vector<Cell> cells;
  for (int i = 0; i < opts.grid_theta; ++i) {
    const double theta = M_PI * i / (opts.grid_theta - 1);
    for (int j = 0; j < opts.grid_phi; ++j) {
      const double phi = 2.0 * M_PI * j / opts.grid_phi;
      cells.push_back({eval_angles(theta, phi), theta, phi});
    }
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.value < b.value; });

  MeasurementOptimum best;
  best.value = cells.front().value;
  best.params = {cells.front().theta, cells.front().phi};
  const int starts = std::min<int>(opts.refine_top_cells, static_cast<int>(cells.size()));
  for (int s = 0; s < starts; ++s) {
    const SimplexResult r = nelder_mead(
        [&](const std::vector<double>& x) { return eval_angles(x[0], x[1]); },
        {cells[s].theta, cells[s].phi},
        {M_PI / opts.grid_theta, 2.0 * M_PI / opts.grid_phi}, opts.nm_max_iter, opts.nm_tol);
    if (r.value < best.value) {
      best.value = r.value;
      best.params = r.x;
    }
  }
  best.argmin = ProjectiveMeasurement::from_unitary(bloch_unitary(best.params[0], best.params[1]));
  return best;
}

// Multi-start simplex over a Givens-rotation parametrization for d_a in
// {3,4}; the computational basis is always among the starts.
inline MeasurementOptimum minimize_qudit_measurement(int d_a, const RawObjective& objective,
                                                     const OptimizerOptions& opts) {
  const std::size_t n_params = givens_param_count(d_a);
  auto eval_params = [&](const std::vector<double>& p) {
    return objective(projectors_from_unitary(givens_unitary(d_a, p)));
  };

  Rng rng(opts.seed);
  MeasurementOptimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (int s = 0; s < std::max(1, opts.multistarts); ++s) {
    std::vector<double> x0(n_params, 0.0);
    if (s > 0) {
      for (std::size_t i = 0; i < n_params; i += 2) {
        x0[i] = rng.uniform(0.0, M_PI);
        x0[i + 1] = rng.uniform(0.0, 2.0 * M_PI);
      }
    }
    const SimplexResult r = nelder_mead(eval_params, x0, std::vector<double>(n_params, 0.3),
                                        opts.nm_max_iter, opts.nm_tol);
    if (r.value < best.value) {
      best.value = r.value;
      best.params = r.x;
    }
  }
  best.argmin = ProjectiveMeasurement::from_unitary(givens_unitary(d_a, best.params));
  return best;
}

inline MeasurementOptimum minimize_over_measurements(int d_a, const RawObjective& objective,
                                                     const OptimizerOptions& opts) {
  if (d_a == 2) return minimize_qubit_measurement(objective, opts);
  if (d_a == 3 || d_a == 4) return minimize_qudit_measurement(d_a, objective, opts);
  throw UnsupportedDimension("measurement optimizer supports subsystem dimensions 2..4, got " +
                             std::to_string(d_a));
}

}  // namespace detail

// Q_F(ρ) = min over von Neumann measurements on a of Δ_F(ρ|Π). Optimizer
// noise below 1e-8 is clamped to zero; anything more negative is returned
// as-is so the harness can flag it.
inline MeasurementOptimum quantum_correlation(const BipartiteState& rho,
                                              const OptimizerOptions& opts = {}) {
  const Matrix marg = partial_trace(rho.mat(), rho.dim_a(), rho.dim_b(), Subsystem::a);
  auto objective = [&](const std::vector<Matrix>& projs) {
    return detail::rel_coherence_raw(rho.mat(), rho.dim_a(), rho.dim_b(), projs) -
           detail::rel_coherence_raw(marg, rho.dim_a(), 1, projs);
  };
  MeasurementOptimum opt = detail::minimize_over_measurements(rho.dim_a(), objective, opts);
  if (opt.value < 0.0 && opt.value > -1e-8) opt.value = 0.0;
  return opt;
}

namespace detail {

inline MeasurementOptimum fmin_optimum(const BipartiteState& rho, const OptimizerOptions& opts) {
  auto objective = [&](const std::vector<Matrix>& projs) {
    return fidelity_ratio(rho.mat(),
                          measure_raw(rho.mat(), rho.dim_a(), rho.dim_b(), projs));
  };
  if (opts.constrain_marginal) {
    // Only measurements commuting with ρ^a. With a nondegenerate marginal
    // that is exactly its eigenbasis; near degeneracy every basis of the
    // degenerate block commutes, and the unconstrained search covers it.
    const Matrix marg = partial_trace(rho.mat(), rho.dim_a(), rho.dim_b(), Subsystem::a);
    const EigenSystem es = eig_hermitian(marg);
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 1; i < es.values.size(); ++i)
      min_gap = std::min(min_gap, es.values(i) - es.values(i - 1));
    if (min_gap > 1e-9) {
      MeasurementOptimum opt;
      opt.value = objective(projectors_from_unitary(es.vectors));
      opt.argmin = ProjectiveMeasurement::from_unitary(es.vectors);
      return opt;
    }
  }
  return minimize_over_measurements(rho.dim_a(), objective, opts);
}

}  // namespace detail

// Measurement-induced nonlocality via fidelity:
// N_F(ρ) = 1 - min over measurements on a of F(ρ, Pi(ρ)).
inline double fmin(const BipartiteState& rho, const OptimizerOptions& opts = {}) {
  return 1.0 - detail::fmin_optimum(rho, opts).value;
}

// Two-outcome weak measurement of strength x built on a projector dichotomy
// (Π¹, Π²) of subsystem a. Ω_x = t1 Π¹ + t2 Π², Ω_{-x} = t1 Π² + t2 Π¹ with
// t_{1,2} = sqrt((1 ± tanh x)/2); the operator pair satisfies
// Ω_x^dag Ω_x + Ω_{-x}^dag Ω_{-x} = I.
class WeakMeasurement {
 public:
  WeakMeasurement(Matrix p1, Matrix p2, double x)
      : strength_(x), p1_(std::move(p1)), p2_(std::move(p2)) {
    subsystem_dim_ = static_cast<int>(p1_.rows());
    if (p2_.rows() != subsystem_dim_ || p1_.cols() != subsystem_dim_ ||
        p2_.cols() != subsystem_dim_) {
      throw DimensionMismatch("WeakMeasurement: dichotomy projectors must be square and equal");
    }
    auto check_projector = [](const Matrix& p) {
      return (p * p - p).cwiseAbs().maxCoeff() <= completeness_tol &&
             hermiticity_defect(p) <= hermiticity_tol;
    };
    if (!check_projector(p1_) || !check_projector(p2_) ||
        (p1_ * p2_).cwiseAbs().maxCoeff() > completeness_tol ||
        (p1_ + p2_ - Matrix::Identity(subsystem_dim_, subsystem_dim_)).cwiseAbs().maxCoeff() >
            completeness_tol) {
      throw ValidationError("dichotomy",
                            "WeakMeasurement: operators are not a complementary projector pair");
    }
    const double th = std::tanh(x);
    t1_ = std::sqrt((1.0 + th) / 2.0);
    t2_ = std::sqrt((1.0 - th) / 2.0);
  }

  // Dichotomy splitting the computational basis after the first k vectors.
  static WeakMeasurement split(int d_a, int k, double x) {
    if (k < 1 || k >= d_a) {
      throw std::invalid_argument("WeakMeasurement: split index must satisfy 1 <= k < d_a");
    }
    Matrix p1 = Matrix::Zero(d_a, d_a), p2 = Matrix::Zero(d_a, d_a);
    for (int i = 0; i < d_a; ++i) (i < k ? p1 : p2)(i, i) = 1.0;
    return {std::move(p1), std::move(p2), x};
  }

  double strength() const { return strength_; }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  // Mixing weight t = 2 t1 t2 = sech x; computed via sech for exactness at x=0.
  double t() const { return 1.0 / std::cosh(strength_); }
  int subsystem_dim() const { return subsystem_dim_; }
  const Matrix& p1() const { return p1_; }
  const Matrix& p2() const { return p2_; }
  Matrix omega_plus() const { return t1_ * p1_ + t2_ * p2_; }
  Matrix omega_minus() const { return t1_ * p2_ + t2_ * p1_; }

 private:
  double strength_;
  Matrix p1_, p2_;
  double t1_, t2_;
  int subsystem_dim_;
};

namespace detail {

// Projective image of the dichotomy itself: (Π¹⊗I)ρ(Π¹⊗I) + (Π²⊗I)ρ(Π²⊗I).
// This is the measurement the weak pair reduces to as x -> infinity, and the
// Pi(ρ) appearing in every weak-measurement identity.
inline Matrix dichotomy_dephase_raw(const Matrix& m, int d_b, const WeakMeasurement& w) {
  const Matrix eye_b = Matrix::Identity(d_b, d_b);
  const Matrix l1 = tensor(w.p1(), eye_b), l2 = tensor(w.p2(), eye_b);
  return l1 * m * l1 + l2 * m * l2;
}

inline void check_weak_dims(const BipartiteState& rho, const WeakMeasurement& w) {
  if (w.subsystem_dim() != rho.dim_a()) {
    throw DimensionMismatch("weak measurement acts on dimension " +
                            std::to_string(w.subsystem_dim()) + ", subsystem a has " +
                            std::to_string(rho.dim_a()));
  }
}

}  // namespace detail

inline BipartiteState dichotomy_dephase(const BipartiteState& rho, const WeakMeasurement& w) {
  detail::check_weak_dims(rho, w);
  return {rho.dim_a(), rho.dim_b(),
          DensityMatrix(detail::dichotomy_dephase_raw(rho.mat(), rho.dim_b(), w))};
}

// Ω(ρ) = sum_{j=±x} (Ω_j ⊗ I) ρ (Ω_j ⊗ I), which equals
// t ρ + (1-t) Pi(ρ) with t = sech x and Pi the dichotomy dephasing.
inline BipartiteState weak_apply(const BipartiteState& rho, const WeakMeasurement& w) {
  detail::check_weak_dims(rho, w);
  const Matrix eye_b = Matrix::Identity(rho.dim_b(), rho.dim_b());
  const Matrix op = tensor(w.omega_plus(), eye_b);
  const Matrix om = tensor(w.omega_minus(), eye_b);
  return {rho.dim_a(), rho.dim_b(), DensityMatrix(op * rho.mat() * op + om * rho.mat() * om)};
}

// The convex-combination form t ρ + (1-t) Pi(ρ) of the same map.
inline BipartiteState weak_interpolate(const BipartiteState& rho, const WeakMeasurement& w) {
  detail::check_weak_dims(rho, w);
  const double t = w.t();
  const Matrix m =
      t * rho.mat() + (1.0 - t) * detail::dichotomy_dephase_raw(rho.mat(), rho.dim_b(), w);
  return {rho.dim_a(), rho.dim_b(), DensityMatrix(m)};
}

namespace detail {

struct WeakTraces {
  double purity;    // tr ρ^2
  double overlap;   // tr ρ Pi(ρ)
  double t;         // sech x
};

inline WeakTraces weak_traces(const BipartiteState& rho, const WeakMeasurement& w) {
  check_weak_dims(rho, w);
  return {hs_norm_sq(rho.mat()),
          hs_inner(rho.mat(), dichotomy_dephase_raw(rho.mat(), rho.dim_b(), w)).real(), w.t()};
}

}  // namespace detail

// F(ρ, Ω(ρ)), evaluated from the trace identities
// tr ρ Ω(ρ) = t tr ρ^2 + (1-t) tr ρ Pi(ρ) and
// tr Ω(ρ)^2 = t^2 tr ρ^2 + (1-t^2) tr ρ Pi(ρ), so the x -> 0 limit is
// exactly 1 and the x -> infinity limit is exactly tr[ρ Pi(ρ)] / tr ρ^2.
inline double weak_fidelity(const BipartiteState& rho, const WeakMeasurement& w) {
  const auto [a, p, t] = detail::weak_traces(rho, w);
  const double num = t * a + (1.0 - t) * p;
  const double den = a * (t * t * a + (1.0 - t * t) * p);
  double f = num * num / den;
  return f > 1.0 ? 1.0 : f;
}

// The same fidelity through the ζ route:
// F = tr[ρ Ω(ρ)] / (tr ρ^2 (t + (1-t) ζ)), ζ = tr[ρ Pi(ρ)] / tr[ρ Ω(ρ)].
inline double weak_fidelity_zeta(const BipartiteState& rho, const WeakMeasurement& w) {
  const auto [a, p, t] = detail::weak_traces(rho, w);
  const double overlap = t * a + (1.0 - t) * p;
  const double zeta = p / overlap;
  return overlap / (a * (t + (1.0 - t) * zeta));
}

// P_F(Ω(ρ)) = log_d(d tr[t^2 ρ^2 + (1-t^2) ρ Pi(ρ)]); equals P_F(ρ) at
// x = 0 and log_d(d tr[ρ Pi(ρ)]) in the strong-measurement limit.
inline double weak_purity(const BipartiteState& rho, const WeakMeasurement& w,
                          std::optional<int> base = std::nullopt) {
  const auto [a, p, t] = detail::weak_traces(rho, w);
  const int d = rho.dim();
  const int b = base.value_or(d);
  if (b < 2) throw std::invalid_argument("weak_purity: log base must be >= 2");
  return std::log(d * (t * t * a + (1.0 - t * t) * p)) / std::log(static_cast<double>(b));
}

}  // namespace qres
