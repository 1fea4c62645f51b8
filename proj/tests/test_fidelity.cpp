#include <catch2/catch_amalgamated.hpp>

#include "qres/fidelity.hpp"

using namespace qres;

TEST_CASE("fidelity of a state with itself is one") {
  for (int rep = 0; rep < 20; ++rep) {
    const DensityMatrix rho = random_density(2 + rep % 3, 1 + rep % 2, 300 + rep);
    CHECK(fidelity_alt(rho, rho) == 1.0);
  }
}

TEST_CASE("fidelity of orthogonal pure states is zero") {
  const DensityMatrix zero(basis_projector(2, 0));
  const DensityMatrix one(basis_projector(2, 1));
  CHECK(fidelity_alt(zero, one) == 0.0);
}

TEST_CASE("fidelity with the maximally mixed state is 1/(d tr rho^2)") {
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 4;
    const DensityMatrix rho = random_density(d, 1 + rep % d, 400 + rep);
    CHECK(fidelity_alt(rho, maximally_mixed(d)) ==
          Catch::Approx(1.0 / (d * hs_norm_sq(rho.mat()))).margin(1e-12));
  }
}

TEST_CASE("fidelity rejects mismatched dimensions") {
  CHECK_THROWS_AS(fidelity_alt(maximally_mixed(2), maximally_mixed(3)), DimensionMismatch);
  CHECK_THROWS_AS(fidelity_uhlmann(maximally_mixed(2), maximally_mixed(3)), DimensionMismatch);
}

TEST_CASE("Uhlmann fidelity basics") {
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = random_density(3, 1 + rep % 3, 500 + rep);
    CHECK(fidelity_uhlmann(rho, rho) == Catch::Approx(1.0).margin(1e-12));
  }

  // Pure sigma reduces Uhlmann to <psi|rho|psi>.
  Rng rng(77);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = random_density(3, 2, 600 + rep);
    Vector psi(3);
    for (int i = 0; i < 3; ++i) psi(i) = rng.cgauss();
    psi.normalize();
    const double expected = (psi.adjoint() * rho.mat() * psi).value().real();
    CHECK(fidelity_uhlmann(rho, pure_state(psi)) == Catch::Approx(expected).margin(1e-10));
  }
}

TEST_CASE("the two fidelities differ on commuting diagonal pairs") {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 0.9;
  a(1, 1) = 0.1;
  b(0, 0) = 0.5;
  b(1, 1) = 0.5;
  const DensityMatrix rho(a), sigma(b);
  const double alt = fidelity_alt(rho, sigma);
  const double uhl = fidelity_uhlmann(rho, sigma);
  INFO("ratio form = " << alt << ", Uhlmann = " << uhl);
  CHECK(alt == Catch::Approx(0.25 / (0.82 * 0.5)).margin(1e-12));
  CHECK(uhl == Catch::Approx(0.8).margin(1e-12));
  CHECK(std::abs(alt - uhl) > 0.1);
}

TEST_CASE("unitary invariance with the Hadamard") {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const DensityMatrix rho = random_density(2, 2, 910);
  const DensityMatrix sigma = random_density(2, 1, 911);
  CHECK(std::abs(fidelity_alt(conjugate(rho, h), conjugate(sigma, h)) -
                 fidelity_alt(rho, sigma)) < 1e-12);
}

TEST_CASE("property suite F1-F6 passes at unit-test scale") {
  const auto results = check_f_properties(2024, 200);
  REQUIRE(results.size() == 6);
  for (const PropertyResult& r : results) {
    INFO(r.name << " max violation " << r.max_violation);
    CHECK(r.passed());
  }
}
