#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cohpure/linalg.hpp"

namespace cohpure {

/// Seeded, splittable random source. Identical seeds replay identical draws;
/// `split()` derives a child stream from the parent's seed and a split counter,
/// so children are reproducible and independent of how many draws the parent
/// has made.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  RandomStream split();
  // Child stream keyed by an explicit index; does not advance the parent.
  RandomStream child(std::uint64_t index) const;

  double uniform();  // [0, 1)
  double normal();
  double exponential();
  std::size_t uniform_index(std::size_t n);
  Complex complex_normal();  // E|z|^2 = 1

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t splits_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal moved into Q.
ComplexMatrix haar_unitary(std::size_t d, RandomStream& rng);

/// Symmetric Dirichlet(1) draw, i.e. uniform on the probability simplex.
std::vector<double> dirichlet_uniform(std::size_t n, RandomStream& rng);

}  // namespace cohpure
