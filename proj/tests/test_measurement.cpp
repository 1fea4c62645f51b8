#include <catch2/catch_amalgamated.hpp>

#include "qres/measurement.hpp"

using namespace qres;

namespace {

BipartiteState bell_state() {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  return {2, 2, pure_state(bell)};
}

}  // namespace

TEST_CASE("projective measurement validation") {
  CHECK_NOTHROW(ProjectiveMeasurement::computational(3));
  CHECK_NOTHROW(ProjectiveMeasurement::from_unitary(bloch_unitary(0.7, 1.3)));

  std::vector<Matrix> bad{basis_projector(2, 0), basis_projector(2, 0)};
  CHECK_THROWS_AS(ProjectiveMeasurement(2, bad), ValidationError);
}

TEST_CASE("measurement dephases and preserves trace") {
  const BipartiteState bell = bell_state();
  const BipartiteState dephased =
      apply_measurement(bell, ProjectiveMeasurement::computational(2));
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK((dephased.mat() - expected).cwiseAbs().maxCoeff() < 1e-14);

  for (int rep = 0; rep < 20; ++rep) {
    Rng rng(3000 + rep);
    const BipartiteState rho = random_bipartite(2, 3, 1 + rep % 6, rng.engine()());
    const ProjectiveMeasurement m = ProjectiveMeasurement::from_unitary(haar_unitary(2, rng));
    const BipartiteState measured = apply_measurement(rho, m);
    CHECK(std::abs(measured.mat().trace() - complexd(1, 0)) < 1e-12);
    // Idempotence.
    CHECK((apply_measurement(measured, m).mat() - measured.mat()).cwiseAbs().maxCoeff() <
          1e-12);
    // tr[Pi(rho)^2] = tr[rho Pi(rho)].
    CHECK(hs_norm_sq(measured.mat()) ==
          Catch::Approx(hs_inner(rho.mat(), measured.mat()).real()).margin(1e-12));
  }

  CHECK_THROWS_AS(apply_measurement(bell, ProjectiveMeasurement::computational(3)),
                  DimensionMismatch);
}

TEST_CASE("classical-quantum states are measurement invariant") {
  const BipartiteState cq = classical_quantum(
      {0.25, 0.75}, {random_density(3, 1, 3100), random_density(3, 3, 3101)});
  const BipartiteState measured =
      apply_measurement(cq, ProjectiveMeasurement::computational(2));
  CHECK((measured.mat() - cq.mat()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("coherence relative to measurement") {
  const BipartiteState bell = bell_state();
  const ProjectiveMeasurement z = ProjectiveMeasurement::computational(2);
  CHECK(coherence_rel_measurement(bell, z) == Catch::Approx(0.5).margin(1e-12));

  const BipartiteState cq = classical_quantum(
      {0.5, 0.5}, {random_density(2, 1, 3200), random_density(2, 2, 3201)});
  CHECK(coherence_rel_measurement(cq, z) < 1e-12);

  // Product states reduce to the coherence of the a factor.
  Rng rng(3202);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho_a = random_density(2, 2, 3300 + rep);
    const DensityMatrix rho_b = random_density(3, 1 + rep % 3, 3400 + rep);
    const BipartiteState product(2, 3, DensityMatrix(tensor(rho_a.mat(), rho_b.mat())));
    const ProjectiveMeasurement m = ProjectiveMeasurement::from_unitary(haar_unitary(2, rng));
    const BipartiteState marg(2, 1, rho_a);
    CHECK(coherence_rel_measurement(product, m) ==
          Catch::Approx(coherence_rel_measurement(marg, m)).margin(1e-10));
  }
}

TEST_CASE("delta coherence") {
  // Product states: the two terms cancel for every measurement.
  Rng rng(3500);
  const DensityMatrix rho_a = random_density(2, 2, 3501);
  const DensityMatrix rho_b = random_density(2, 2, 3502);
  const BipartiteState product(2, 2, DensityMatrix(tensor(rho_a.mat(), rho_b.mat())));
  for (int rep = 0; rep < 10; ++rep) {
    const ProjectiveMeasurement m = ProjectiveMeasurement::from_unitary(haar_unitary(2, rng));
    CHECK(std::abs(delta_coherence(product, m)) < 1e-10);
  }

  CHECK(delta_coherence(bell_state(), ProjectiveMeasurement::computational(2)) ==
        Catch::Approx(0.5).margin(1e-12));

  // When Pi(rho) = I/d the difference is d_a^{-P_F(rho_a)} - d^{-P_F(rho)}.
  for (double c1 : {0.3, 0.6}) {
    for (double c2 : {-0.4, 0.2}) {
      const BipartiteState rho = bell_diagonal(c1, c2, 0.0);
      const ProjectiveMeasurement z = ProjectiveMeasurement::computational(2);
      const BipartiteState measured = apply_measurement(rho, z);
      REQUIRE((measured.mat() - identity(4) / 4.0).cwiseAbs().maxCoeff() < 1e-14);
      const double expected =
          std::pow(2.0, -fidelity_purity(rho.marginal_a())) -
          std::pow(4.0, -fidelity_purity(rho.state()));
      CHECK(delta_coherence(rho, z) == Catch::Approx(expected).margin(1e-10));
    }
  }
}

TEST_CASE("quantum correlation of classical-quantum states is zero") {
  for (int rep = 0; rep < 3; ++rep) {
    Rng rng(3600 + rep);
    const std::vector<double> p = random_probabilities(2, rng);
    const BipartiteState cq = classical_quantum(
        p, {random_density(2, 1 + rep % 2, 3700 + rep), random_density(2, 2, 3800 + rep)});
    const MeasurementOptimum opt = quantum_correlation(cq);
    CHECK(opt.value < 1e-6);
    CHECK(opt.value >= 0.0);
  }
}

TEST_CASE("quantum correlation of the Bell state is one half") {
  const MeasurementOptimum opt = quantum_correlation(bell_state());
  CHECK(opt.value == Catch::Approx(0.5).margin(1e-6));
  REQUIRE(opt.argmin.has_value());
  CHECK(opt.params.size() == 2);
}

TEST_CASE("quantum correlation is invariant under local unitaries") {
  Rng rng(3900);
  const BipartiteState rho = random_bipartite(2, 2, 2, 3901);
  const double q = quantum_correlation(rho).value;
  const Matrix local = tensor(haar_unitary(2, rng), haar_unitary(2, rng));
  const BipartiteState rotated(2, 2, conjugate(rho.state(), local));
  CHECK(quantum_correlation(rotated).value == Catch::Approx(q).margin(1e-6));
}

TEST_CASE("quantum correlation rejects unsupported subsystem dimensions") {
  const BipartiteState big(5, 1, maximally_mixed(5));
  CHECK_THROWS_AS(quantum_correlation(big), UnsupportedDimension);
}

TEST_CASE("fmin values") {
  CHECK(fmin(bell_state()) == Catch::Approx(0.5).margin(1e--6 + 1e-6));

  const BipartiteState mixed(2, 2, maximally_mixed(4));
  CHECK(fmin(mixed) == Catch::Approx(0.0).margin(1e-9));

  // C_m bounds the measurement-induced nonlocality.
  for (int rep = 0; rep < 5; ++rep) {
    const BipartiteState rho = random_bipartite(2, 2, 1 + rep % 4, 4000 + rep);
    CHECK(maximal_coherence(rho.state()) >= fmin(rho) - 1e-8);
  }

  // Constrained variant restricts to measurements commuting with the marginal.
  OptimizerOptions constrained;
  constrained.constrain_marginal = true;
  const BipartiteState rho = random_bipartite(2, 2, 3, 4100);
  const double unconstrained_value = fmin(rho);
  const double constrained_value = fmin(rho, constrained);
  CHECK(constrained_value <= unconstrained_value + 1e-9);
}

TEST_CASE("qudit measurement optimization runs for d_a = 3") {
  OptimizerOptions opts;
  opts.multistarts = 8;
  const BipartiteState cq = classical_quantum(
      {0.2, 0.3, 0.5}, {random_density(2, 1, 4200), random_density(2, 2, 4201),
                        random_density(2, 1, 4202)});
  CHECK(quantum_correlation(cq, opts).value < 1e-5);
}
