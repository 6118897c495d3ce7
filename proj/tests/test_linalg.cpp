#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cohpure/errors.hpp"
#include "cohpure/linalg.hpp"
#include "cohpure/random.hpp"
#include "oracles.hpp"

using namespace cohpure;

namespace {

ComplexMatrix random_hermitian(std::size_t d, RandomStream& rng, double scale = 1.0) {
  ComplexMatrix g(d, d);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.complex_normal();
  return hermitize(scale * g);
}

// Reference exp(iA) by a scaled Taylor series plus repeated squaring.
ComplexMatrix taylor_expi(const ComplexMatrix& h, double t) {
  int squarings = 0;
  double norm = (t * h).norm();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const ComplexMatrix a = Complex(0.0, t / std::pow(2.0, squarings)) * h;
  ComplexMatrix term = identity(h.rows());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("eigensolver matches an independent solver on seeded Hermitian matrices") {
  RandomStream rng(11);
  for (std::size_t d = 1; d <= 12; ++d) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix m = random_hermitian(d, rng, trial % 2 ? 1.0 : 1e3);
      const EigenSystem eig = hermitian_eig(m);
      std::vector<double> ref = oracle::spectrum(oracle::to_mat(m));
      std::reverse(ref.begin(), ref.end());
      const double scale = std::max(1.0, m.norm());
      for (std::size_t k = 0; k < d; ++k) CHECK(std::abs(eig.values[k] - ref[k]) <= 1e-10 * scale);
      for (std::size_t k = 1; k < d; ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
      const auto n = static_cast<Eigen::Index>(d);
      ComplexMatrix lambda = ComplexMatrix::Zero(n, n);
      for (Eigen::Index k = 0; k < n; ++k) lambda(k, k) = eig.values[static_cast<std::size_t>(k)];
      CHECK(max_abs(eig.vectors * lambda * eig.vectors.adjoint() - m) <= 1e-9 * scale);
      CHECK(max_abs(eig.vectors.adjoint() * eig.vectors - identity(d)) <= 1e-10);
    }
  }
}

TEST_CASE("eigenvector phase convention: first significant component real and nonnegative") {
  RandomStream rng(12);
  const EigenSystem eig = hermitian_eig(random_hermitian(5, rng));
  for (Eigen::Index c = 0; c < 5; ++c) {
    for (Eigen::Index r = 0; r < 5; ++r) {
      const Complex z = eig.vectors(r, c);
      if (std::abs(z) > 1e-8) {
        CHECK(std::abs(z.imag()) <= 1e-14);
        CHECK(z.real() > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("degenerate and diagonal inputs") {
  const EigenSystem id = hermitian_eig(identity(4));
  for (double x : id.values) CHECK(x == doctest::Approx(1.0));
  CHECK(max_abs(id.vectors - identity(4)) == 0.0);

  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 2.0;
  m(1, 1) = -1.0;
  m(2, 2) = 2.0;
  const EigenSystem e = hermitian_eig(m);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(2.0));
}

TEST_CASE("eigensolver input errors") {
  ComplexMatrix rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(hermitian_eig(rect), ValidationError);
  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  try {
    hermitian_eig(nh);
    FAIL("expected a hermiticity error");
  } catch (const ValidationError& e) {
    CHECK(e.kind() == ValidationError::Kind::kHermiticity);
    CHECK(e.magnitude() == doctest::Approx(1.0));
  }
  ComplexMatrix nan = ComplexMatrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(hermitian_eig(nan), ValidationError);
  RandomStream rng(1);
  CHECK_THROWS_AS(hermitian_eig(random_hermitian(6, rng), {1e-12, 1}), ConvergenceError);
}

TEST_CASE("matrix functions") {
  RandomStream rng(13);
  ComplexMatrix g(4, 4);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = rng.complex_normal();
  const ComplexMatrix psd = g * g.adjoint();
  const ComplexMatrix r = mat_sqrt(psd);
  CHECK(max_abs(r * r - psd) <= 1e-10 * psd.norm());
  CHECK(max_abs(mat_pow(psd, 2.0) - psd * psd) <= 1e-9 * psd.norm() * psd.norm());

  // log2 acts on the support only.
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 0.5;
  const ComplexMatrix l = mat_log2(p);
  CHECK(l(0, 0).real() == doctest::Approx(-1.0));
  CHECK(std::abs(l(1, 1)) == 0.0);

  ComplexMatrix tiny_negative = ComplexMatrix::Zero(2, 2);
  tiny_negative(0, 0) = 1.0;
  tiny_negative(1, 1) = -5e-11;
  CHECK(std::abs(mat_sqrt(tiny_negative)(1, 1)) == 0.0);
  tiny_negative(1, 1) = -1e-6;
  CHECK_THROWS_AS(mat_sqrt(tiny_negative), DomainError);
}

TEST_CASE("exp(iH) is unitary and agrees with a Taylor series") {
  RandomStream rng(14);
  for (std::size_t d : {2u, 3u, 5u}) {
    const ComplexMatrix h = random_hermitian(d, rng);
    const ComplexMatrix u = expi_hermitian(h, 0.7);
    CHECK(is_unitary(u, 1e-12));
    CHECK(max_abs(u - taylor_expi(h, 0.7)) <= 1e-11);
  }
}

TEST_CASE("Schatten norms") {
  RandomStream rng(15);
  const ComplexMatrix h = random_hermitian(4, rng);
  double l1 = 0.0;
  double linf = 0.0;
  for (double x : oracle::spectrum(oracle::to_mat(h))) {
    l1 += std::abs(x);
    linf = std::max(linf, std::abs(x));
  }
  CHECK(schatten_norm(h, 1.0) == doctest::Approx(l1).epsilon(1e-12));
  CHECK(schatten_norm(h, 2.0) == doctest::Approx(h.norm()).epsilon(1e-12));
  CHECK(schatten_norm(h, kInfinity) == doctest::Approx(linf).epsilon(1e-12));

  ComplexMatrix a(3, 3);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.complex_normal();
  double sv1 = 0.0;
  double sv3 = 0.0;
  for (double x : oracle::spectrum(oracle::to_mat(a.adjoint() * a))) {
    sv1 += std::sqrt(std::max(0.0, x));
    sv3 += std::pow(std::max(0.0, x), 1.5);
  }
  CHECK(schatten_norm(a, 1.0) == doctest::Approx(sv1).epsilon(1e-10));
  CHECK(schatten_norm(a, 3.0) == doctest::Approx(std::cbrt(sv3)).epsilon(1e-10));
  CHECK(schatten_norm(a, 2.0) == doctest::Approx(a.norm()).epsilon(1e-12));
  CHECK_THROWS_AS(schatten_norm(a, 0.5), DomainError);
}

TEST_CASE("tensor products, partial trace and partial transpose") {
  RandomStream rng(16);
  ComplexMatrix a = random_hermitian(2, rng);
  ComplexMatrix b = random_hermitian(3, rng);
  a /= a.trace();
  b /= b.trace();
  const ComplexMatrix ab = kron(a, b);
  CHECK(ab.rows() == 6);
  CHECK(ab(1 * 3 + 2, 0 * 3 + 1) == a(1, 0) * b(2, 1));
  CHECK(max_abs(partial_trace(ab, 0, {2, 3}) - a) <= 1e-12);
  CHECK(max_abs(partial_trace(ab, 1, {2, 3}) - b) <= 1e-12);

  const ComplexMatrix pt = partial_transpose(ab, 1, {2, 3});
  CHECK(max_abs(pt - kron(a, b.transpose())) <= 1e-14);
  CHECK(max_abs(partial_transpose(pt, 1, {2, 3}) - ab) == 0.0);
  CHECK(max_abs(partial_transpose(ab, 0, {2, 3}) - kron(a.transpose(), b)) <= 1e-14);
  CHECK_THROWS_AS(partial_trace(ab, 0, {2, 2}), ValidationError);
}

TEST_CASE("xlog2x") {
  CHECK(xlog2x(0.0) == 0.0);
  CHECK(xlog2x(1.0) == 0.0);
  CHECK(xlog2x(0.5) == doctest::Approx(-0.5));
}
