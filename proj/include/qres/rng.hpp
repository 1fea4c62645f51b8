#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qres/linalg.hpp"

namespace qres {

// Derives independent per-trial seeds from a base seed (splitmix64 step).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seeded random source for all sampling in the library. Every consumer takes
// an explicit seed or an Rng, so there is no shared generator state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double gauss() { return normal_(engine_); }
  complexd cgauss() { return {normal_(engine_), normal_(engine_)}; }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.cgauss();
  return g;
}

// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
// of the R diagonal folded back into Q.
inline Matrix haar_unitary(int d, Rng& rng) {
  Matrix g = gaussian_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    complexd rii = r(i, i);
    double mag = std::abs(rii);
    q.col(i) *= (mag > 0) ? rii / mag : complexd(1.0, 0.0);
  }
  return q;
}

// Uniform point on the probability simplex.
inline std::vector<double> random_probabilities(int n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  std::exponential_distribution<double> expo(1.0);
  for (int i = 0; i < n; ++i) {
    p[i] = expo(rng.engine());
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace qres
