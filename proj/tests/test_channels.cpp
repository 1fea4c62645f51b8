#include <catch2/catch_amalgamated.hpp>

#include "qres/channels.hpp"
#include "qres/purity.hpp"

using namespace qres;

TEST_CASE("mixture of unitaries") {
  const KrausChannel ident = mixture_of_unitaries({1.0}, {identity(3)});
  const DensityMatrix rho = random_density(3, 2, 2100);
  CHECK((apply_channel(ident, rho).mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-15);

  const KrausChannel bitflip = mixture_of_unitaries({0.5, 0.5}, {identity(2), pauli_x()});
  const DensityMatrix qubit = random_density(2, 1, 2101);
  const DensityMatrix flipped = apply_channel(bitflip, qubit);
  CHECK(linear_purity(flipped) <= linear_purity(qubit) + 1e-12);

  Rng rng(2102);
  std::vector<double> p = random_probabilities(5, rng);
  std::vector<Matrix> us;
  for (int i = 0; i < 5; ++i) us.push_back(haar_unitary(3, rng));
  const KrausChannel mix = mixture_of_unitaries(p, us);
  CHECK((mix.apply(identity(3) / 3.0) - identity(3) / 3.0).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(mixture_of_unitaries({0.7, 0.7}, {identity(2), pauli_x()}),
                  std::invalid_argument);
  Matrix not_unitary = Matrix::Constant(2, 2, complexd(0.5, 0));
  CHECK_THROWS_AS(mixture_of_unitaries({1.0}, {not_unitary}), ValidationError);
}

TEST_CASE("noisy operations") {
  const NoisyOperation ident(2, identity(6));
  const DensityMatrix rho = random_density(3, 2, 2200);
  CHECK((ident(rho).mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-13);

  // Swapping with the maximally mixed environment erases the state.
  const NoisyOperation swap(2, flip_operator(2));
  const DensityMatrix qubit = random_density(2, 1, 2201);
  CHECK((swap(qubit).mat() - identity(2) / 2.0).cwiseAbs().maxCoeff() < 1e-13);

  Rng rng(2202);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 3, env = 2 + rep % 2;
    const NoisyOperation op(env, haar_unitary(d * env, rng));
    const DensityMatrix in = random_density(d, 1 + rep % d, 2300 + rep);
    const DensityMatrix out = op(in);
    CHECK(std::abs(out.mat().trace() - complexd(1, 0)) < 1e-12);
    CHECK((op.apply(identity(d) / double(d)) - identity(d) / double(d)).cwiseAbs().maxCoeff() <
          1e-10);
    CHECK(linear_purity(out) <= linear_purity(in) + 1e-10);
  }

  CHECK_THROWS_AS(NoisyOperation(4, identity(6)), DimensionMismatch);
}

TEST_CASE("apply_channel revalidates and preserves trace") {
  std::vector<Matrix> dephase;
  for (int i = 0; i < 3; ++i) dephase.push_back(basis_projector(3, i));
  const KrausChannel channel{std::move(dephase)};
  const DensityMatrix rho = random_density(3, 3, 2400);
  const DensityMatrix out = apply_channel(channel, rho);
  Matrix expected = rho.mat().diagonal().asDiagonal();
  CHECK((out.mat() - expected).cwiseAbs().maxCoeff() < 1e-14);

  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix in = random_density(3, 1 + rep % 3, 2500 + rep);
    CHECK(std::abs(apply_channel(channel, in).mat().trace() - complexd(1, 0)) < 1e-12);
  }
}

TEST_CASE("stinespring isometry reconstructs the channel") {
  // Identity channel: V is just I stacked once.
  const KrausChannel ident({identity(2)});
  const Matrix v_id = stinespring_isometry(ident);
  CHECK((v_id - identity(2)).cwiseAbs().maxCoeff() == 0.0);

  std::vector<Matrix> dephase;
  for (int i = 0; i < 2; ++i) dephase.push_back(basis_projector(2, i));
  const KrausChannel channel{std::move(dephase)};
  const Matrix v = stinespring_isometry(channel);
  CHECK((v.adjoint() * v - identity(2)).cwiseAbs().maxCoeff() < 1e-12);

  const DensityMatrix rho = random_density(2, 2, 2600);
  const Matrix lifted = v * rho.mat() * v.adjoint();
  const int k = static_cast<int>(channel.kraus.size());
  CHECK((partial_trace(lifted, k, 2, Subsystem::b) - channel.apply(rho.mat()))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  // Environment-major blocks recover the per-outcome terms.
  const KrausChannel incoherent = sample_incoherent_channel(3, 2, 2601);
  const Matrix vi = stinespring_isometry(incoherent);
  const DensityMatrix rho3 = random_density(3, 2, 2602);
  const Matrix w = vi * rho3.mat() * vi.adjoint();
  for (std::size_t block = 0; block < incoherent.kraus.size(); ++block) {
    const Matrix extracted = w.block(block * 3, block * 3, 3, 3);
    const Matrix direct =
        incoherent.kraus[block] * rho3.mat() * incoherent.kraus[block].adjoint();
    CHECK((extracted - direct).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("kraus completeness is enforced") {
  std::vector<Matrix> incomplete{0.5 * identity(2)};
  CHECK_THROWS_AS(KrausChannel(incomplete), ValidationError);
}

TEST_CASE("sampled incoherent channels preserve diagonality") {
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 3;
    const KrausChannel channel = sample_incoherent_channel(d, 1 + rep % d, 2700 + rep);
    for (const Matrix& a : channel.kraus) {
      for (int col = 0; col < d; ++col) {
        int nonzero = 0;
        for (int row = 0; row < d; ++row)
          if (std::abs(a(row, col)) > 1e-15) ++nonzero;
        CHECK(nonzero <= 1);
      }
    }
    Rng rng(2800 + rep);
    Matrix diag = Matrix::Zero(d, d);
    const std::vector<double> p = random_probabilities(d, rng);
    for (int i = 0; i < d; ++i) diag(i, i) = p[i];
    Matrix out = channel.apply(diag);
    out.diagonal().setZero();
    CHECK(out.cwiseAbs().maxCoeff() < 1e-12);
  }

  // Determinism per seed.
  const KrausChannel a = sample_incoherent_channel(4, 3, 321);
  const KrausChannel b = sample_incoherent_channel(4, 3, 321);
  REQUIRE(a.kraus.size() == b.kraus.size());
  for (std::size_t i = 0; i < a.kraus.size(); ++i)
    CHECK((a.kraus[i] - b.kraus[i]).cwiseAbs().maxCoeff() == 0.0);
}
