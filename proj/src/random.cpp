#include "cohpure/random.hpp"

#include <cmath>

namespace cohpure {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(splitmix64(seed_ ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

RandomStream RandomStream::split() { return child(splits_++); }

double RandomStream::uniform() {
  return std::generate_canonical<double, 53>(engine_);
}

double RandomStream::normal() { return normal_(engine_); }

double RandomStream::exponential() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  return -std::log(u);
}

std::size_t RandomStream::uniform_index(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
}

Complex RandomStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

ComplexMatrix haar_unitary(std::size_t d, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    const Complex phase = mag > 0.0 ? r(j, j) / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

std::vector<double> dirichlet_uniform(std::size_t n, RandomStream& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace cohpure
