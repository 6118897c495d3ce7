#include "cohpure/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cohpure/errors.hpp"

namespace cohpure {

const char* to_string(ValidationError::Kind kind) {
  switch (kind) {
    case ValidationError::Kind::kNotSquare: return "not_square";
    case ValidationError::Kind::kNonFinite: return "non_finite";
    case ValidationError::Kind::kHermiticity: return "hermiticity";
    case ValidationError::Kind::kTrace: return "trace";
    case ValidationError::Kind::kPositivity: return "positivity";
    case ValidationError::Kind::kDimension: return "dimension";
    case ValidationError::Kind::kArgument: return "argument";
  }
  return "unknown";
}

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix is " << m.rows() << "x" << m.cols() << ", expected square";
    throw ValidationError(ValidationError::Kind::kNotSquare, 0.0, os.str());
  }
}

void require_finite(const ComplexMatrix& m, const char* who) {
  if (!m.allFinite()) {
    throw ValidationError(ValidationError::Kind::kNonFinite, 0.0,
                          std::string(who) + ": matrix has non-finite entries");
  }
}

double off_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

void fix_phase(ComplexMatrix& v) {
  for (Eigen::Index col = 0; col < v.cols(); ++col) {
    for (Eigen::Index row = 0; row < v.rows(); ++row) {
      const double mag = std::abs(v(row, col));
      if (mag > 1e-8) {
        const Complex phase = std::conj(v(row, col)) / mag;
        v.col(col) *= phase;
        v(row, col) = Complex(mag, 0.0);
        break;
      }
    }
  }
}

// Eigenvalues this close to zero are indistinguishable from round-off.
double zero_snap(std::span<const double> values) {
  double scale = 0.0;
  for (double x : values) scale = std::max(scale, std::abs(x));
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
}

}  // namespace

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.size(); ++i) r = std::max(r, std::abs(m.data()[i]));
  return r;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  return max_abs(m - m.adjoint());
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return h;
}

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - identity(u.rows())) <= tol;
}

EigenSystem hermitian_eig(const ComplexMatrix& m, const JacobiOptions& opts) {
  require_square(m, "hermitian_eig");
  require_finite(m, "hermitian_eig");
  const double defect = max_abs(m - m.adjoint());
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian (max |M - M^dagger| = " << defect << ")";
    throw ValidationError(ValidationError::Kind::kHermiticity, defect, os.str());
  }

  const Eigen::Index n = m.rows();
  ComplexMatrix a = hermitize(m);
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double threshold = opts.tol * std::max(1.0, a.norm());

  double residual = off_norm(a);
  int sweep = 0;
  while (residual > threshold) {
    if (sweep == opts.max_sweeps) {
      std::ostringstream os;
      os << "hermitian_eig: no convergence after " << sweep
         << " sweeps, off-diagonal residual " << residual;
      throw ConvergenceError(residual, os.str());
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Complex phase_conj = std::conj(apq) / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 0.5 / tau;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = diag(1, e^{-i phi}) [[c, s], [-s, c]] acting on the (p, q) plane.
        const Complex g00(c, 0.0);
        const Complex g01(s, 0.0);
        const Complex g10 = -s * phase_conj;
        const Complex g11 = c * phase_conj;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * g00 + akq * g10;
          a(k, q) = akp * g01 + akq * g11;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(g00) * apk + std::conj(g10) * aqk;
          a(q, k) = std::conj(g01) * apk + std::conj(g11) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * g00 + vkq * g10;
          v(k, q) = vkp * g01 + vkq * g11;
        }
      }
    }
    ++sweep;
    residual = off_norm(a);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  fix_phase(out.vectors);
  return out;
}

ComplexMatrix mat_func(const EigenSystem& eig, const std::function<double(double)>& f,
                       bool clip_negative) {
  const auto n = static_cast<Eigen::Index>(eig.values.size());
  const double snap = zero_snap(eig.values);
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index k = 0; k < n; ++k) {
    double lambda = eig.values[static_cast<std::size_t>(k)];
    if (clip_negative) {
      if (lambda < -kPsdTolerance) {
        std::ostringstream os;
        os << "mat_func: eigenvalue " << lambda << " below -1e-10 outside the function domain";
        throw DomainError(os.str());
      }
      if (lambda < 0.0 || std::abs(lambda) <= snap) lambda = 0.0;
    }
    const double fv = f(lambda);
    scaled.col(k) *= std::isfinite(fv) ? fv : 0.0;
  }
  return scaled * eig.vectors.adjoint();
}

ComplexMatrix mat_func(const ComplexMatrix& m, const std::function<double(double)>& f,
                       bool clip_negative) {
  return mat_func(hermitian_eig(m), f, clip_negative);
}

ComplexMatrix mat_sqrt(const ComplexMatrix& m) {
  return mat_func(m, [](double x) { return std::sqrt(x); }, true);
}

ComplexMatrix mat_pow(const ComplexMatrix& m, double exponent) {
  return mat_func(m, [exponent](double x) { return std::pow(x, exponent); }, true);
}

ComplexMatrix mat_log2(const ComplexMatrix& m) {
  return mat_func(m, [](double x) { return std::log2(x); }, true);
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h, double t) {
  const EigenSystem eig = hermitian_eig(h);
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index k = 0; k < scaled.cols(); ++k) {
    scaled.col(k) *= std::polar(1.0, t * eig.values[static_cast<std::size_t>(k)]);
  }
  return scaled * eig.vectors.adjoint();
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "schatten_norm: p = " << p << " is not >= 1";
    throw DomainError(os.str());
  }
  require_finite(m, "schatten_norm");
  std::vector<double> sv;
  if (m.rows() == m.cols() && max_abs(m - m.adjoint()) <= 1e-14 * std::max(1.0, max_abs(m))) {
    for (double x : hermitian_eig(m).values) sv.push_back(std::abs(x));
  } else {
    Eigen::MatrixXcd dense = m;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
    const auto& s = svd.singularValues();
    sv.assign(s.data(), s.data() + s.size());
  }
  double top = 0.0;
  for (double x : sv) top = std::max(top, x);
  if (std::isinf(p)) return top;
  if (top == 0.0) return 0.0;
  if (p == 1.0) return std::accumulate(sv.begin(), sv.end(), 0.0);
  double acc = 0.0;
  for (double x : sv) acc += std::pow(x / top, p);
  return top * std::pow(acc, 1.0 / p);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace {

void require_bipartite(const ComplexMatrix& rho, Bipartition dims, const char* who) {
  require_square(rho, who);
  if (dims.dim_a == 0 || dims.dim_b == 0 ||
      static_cast<Eigen::Index>(dims.total()) != rho.rows()) {
    std::ostringstream os;
    os << who << ": dims " << dims.dim_a << "x" << dims.dim_b << " do not match dimension "
       << rho.rows();
    throw ValidationError(ValidationError::Kind::kDimension, 0.0, os.str());
  }
}

void require_subsystem(int sub, const char* who) {
  if (sub != 0 && sub != 1) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          std::string(who) + ": subsystem index must be 0 (A) or 1 (B)");
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, int keep, Bipartition dims) {
  require_bipartite(rho, dims, "partial_trace");
  require_subsystem(keep, "partial_trace");
  const auto da = static_cast<Eigen::Index>(dims.dim_a);
  const auto db = static_cast<Eigen::Index>(dims.dim_b);
  if (keep == 0) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index k = 0; k < db; ++k)
    for (Eigen::Index l = 0; l < db; ++l)
      for (Eigen::Index i = 0; i < da; ++i) out(k, l) += rho(i * db + k, i * db + l);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, int sub, Bipartition dims) {
  require_bipartite(rho, dims, "partial_transpose");
  require_subsystem(sub, "partial_transpose");
  const auto da = static_cast<Eigen::Index>(dims.dim_a);
  const auto db = static_cast<Eigen::Index>(dims.dim_b);
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < db; ++k)
      for (Eigen::Index j = 0; j < da; ++j)
        for (Eigen::Index l = 0; l < db; ++l) {
          const Eigen::Index row = i * db + k;
          const Eigen::Index col = j * db + l;
          out(row, col) = sub == 1 ? rho(i * db + l, j * db + k) : rho(j * db + k, i * db + l);
        }
  return out;
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace cohpure
