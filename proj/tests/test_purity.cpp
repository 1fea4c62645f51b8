#include <catch2/catch_amalgamated.hpp>

#include "qres/purity.hpp"

using namespace qres;

TEST_CASE("linear purity basics") {
  CHECK(linear_purity(maximally_mixed(2)) == Catch::Approx(0.5).margin(1e-15));
  CHECK(linear_purity(DensityMatrix(basis_projector(3, 1))) == Catch::Approx(1.0).margin(1e-15));
  CHECK(linear_purity(bell_diagonal(0.5, 0.5, 0.5).state()) ==
        Catch::Approx(0.4375).margin(1e-15));
}

TEST_CASE("Hilbert-Schmidt purity equals the squared distance to I/d") {
  CHECK(hs_purity(maximally_mixed(4)) == Catch::Approx(0.0).margin(1e-15));
  CHECK(hs_purity(DensityMatrix(basis_projector(3, 0))) ==
        Catch::Approx(2.0 / 3.0).margin(1e-14));
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, 1 + rep % d, 700 + rep);
    const Matrix diff = rho.mat() - identity(d) / static_cast<double>(d);
    CHECK(hs_purity(rho) == Catch::Approx(hs_norm_sq(diff)).margin(1e-12));
  }
}

TEST_CASE("fidelity purity values and bounds") {
  CHECK(fidelity_purity(maximally_mixed(5)) == Catch::Approx(0.0).margin(1e-15));
  CHECK(fidelity_purity(DensityMatrix(basis_projector(4, 2))) ==
        Catch::Approx(1.0).margin(1e-14));

  const BipartiteState bd = bell_diagonal(-0.5, -0.5, -0.5);
  CHECK(fidelity_purity(bd.state()) ==
        Catch::Approx(std::log(1.75) / std::log(4.0)).margin(1e-12));

  // Normalization axiom with base 2.
  for (int d = 2; d <= 8; ++d) {
    const DensityMatrix pure = random_density(d, 1, 810 + d);
    CHECK(fidelity_purity(pure, 2) == Catch::Approx(std::log2(double(d))).margin(1e-12));
  }

  CHECK_THROWS_AS(fidelity_purity(maximally_mixed(2), 1), std::invalid_argument);
}

TEST_CASE("purity additivity with an explicit base") {
  for (int rep = 0; rep < 40; ++rep) {
    const int d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, 1 + rep % d, 820 + rep);
    const DensityMatrix sigma = random_density(d, 1 + (rep + 1) % d, 860 + rep);
    const DensityMatrix joint(tensor(rho.mat(), sigma.mat()));
    CHECK(fidelity_purity(joint, d) ==
          Catch::Approx(fidelity_purity(rho, d) + fidelity_purity(sigma, d)).margin(1e-10));
  }
}

TEST_CASE("correlation-matrix route reproduces the fidelity purity") {
  CHECK(purity_from_gamma(correlation_matrix(BipartiteState(2, 2, maximally_mixed(4))), 4) ==
        Catch::Approx(0.0).margin(1e-12));

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(purity_from_gamma(correlation_matrix(BipartiteState(2, 2, pure_state(bell))), 4) ==
        Catch::Approx(1.0).margin(1e-12));

  for (int rep = 0; rep < 100; ++rep) {
    const BipartiteState rho = random_bipartite(2, 2, 1 + rep % 4, 10000 + rep);
    CHECK(std::abs(purity_from_gamma(correlation_matrix(rho), 4) -
                   fidelity_purity(rho.state())) < 1e-10);
  }
}

TEST_CASE("purity report is internally consistent") {
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + rep % 3;
    const DensityMatrix rho = random_density(d, 1 + rep % d, 880 + rep);
    const PurityReport report = purity_report(rho);
    CHECK(report.log_base == d);
    CHECK(report.hilbert_schmidt == Catch::Approx(report.linear - 1.0 / d).margin(1e-12));
    CHECK(report.fidelity_purity ==
          Catch::Approx(std::log(d * report.linear) / std::log(double(d))).margin(1e-12));
  }
}
