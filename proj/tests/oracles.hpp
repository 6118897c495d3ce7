// Independent reference computations for the unit tests. Nothing here calls
// the library's eigensolver or optimizer; spectra come from Eigen's
// SelfAdjointEigenSolver and minimizations from exhaustive grids.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat to_mat(const auto& m) { return Mat(m); }

inline std::vector<double> spectrum(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

inline Mat func(const Mat& m, const std::function<double(double)>& f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd fx = es.eigenvalues();
  for (Eigen::Index i = 0; i < fx.size(); ++i) {
    const double x = std::max(0.0, fx(i));
    fx(i) = x < 1e-14 ? 0.0 : f(x);
  }
  return es.eigenvectors() * fx.asDiagonal() * es.eigenvectors().adjoint();
}

inline double entropy(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) {
    if (x > 1e-15) s -= x * std::log2(x);
  }
  return s;
}

inline double renyi(const std::vector<double>& p, double alpha) {
  if (std::isinf(alpha)) return -std::log2(*std::max_element(p.begin(), p.end()));
  if (alpha == 1.0) return entropy(p);
  if (alpha == 0.0) {
    const double top = *std::max_element(p.begin(), p.end());
    return std::log2(static_cast<double>(std::count_if(p.begin(), p.end(), [&](double x) {
      return x > 1e-9 * top;
    })));
  }
  double s = 0.0;
  for (double x : p) {
    if (x > 1e-15) s += std::pow(x, alpha);
  }
  return std::log2(s) / (1.0 - alpha);
}

inline double fidelity(const Mat& rho, const Mat& sigma) {
  const Mat r = func(rho, [](double x) { return std::sqrt(x); });
  const Mat inner = r * sigma * r;
  // Zero eigenvalues come out as +-1e-17 noise; their square roots would not be negligible.
  const std::vector<double> ev = spectrum(inner);
  double t = 0.0;
  for (double x : ev) {
    if (x > 1e-13 * ev.front()) t += std::sqrt(x);
  }
  return t * t;
}

inline double trace_norm(const Mat& a) {
  double t = 0.0;
  for (double x : spectrum(a)) t += std::abs(x);
  return t;
}

inline double rel_entropy(const Mat& rho, const Mat& sigma) {
  const Mat lr = func(rho, [](double x) { return std::log2(x); });
  const Mat ls = func(sigma, [](double x) { return std::log2(x); });
  return (rho * (lr - ls)).trace().real();
}

// Petz Renyi relative entropy of coherence, alpha in (0,1) u (1,2]:
// alpha/(alpha-1) log2 sum_i (<i|rho^alpha|i>)^(1/alpha).
inline double petz_renyi_coherence(const Mat& rho, double alpha) {
  const Mat ra = func(rho, [alpha](double x) { return std::pow(x, alpha); });
  double s = 0.0;
  for (Eigen::Index i = 0; i < ra.rows(); ++i) s += std::pow(std::max(0.0, ra(i, i).real()), 1.0 / alpha);
  return alpha / (alpha - 1.0) * std::log2(s);
}

inline Mat diag(const std::vector<double>& q) {
  Mat m = Mat::Zero(static_cast<Eigen::Index>(q.size()), static_cast<Eigen::Index>(q.size()));
  for (std::size_t i = 0; i < q.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = q[i];
  return m;
}

// min over the simplex of f for d = 2 or 3: grid of the given resolution,
// then the same grid again at 1/resolution scale around the best point.
inline double simplex_grid_min(std::size_t d, const std::function<double(const std::vector<double>&)>& f,
                               int resolution = 200) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> arg(d, 1.0 / static_cast<double>(d));
  auto visit = [&](const std::vector<double>& q) {
    for (double x : q) {
      if (x < 0.0) return;
    }
    const double v = f(q);
    if (v < best) {
      best = v;
      arg = q;
    }
  };
  auto scan = [&](std::vector<double> centre, double width) {
    const double h = width / resolution;
    for (int i = -resolution; i <= resolution; ++i) {
      if (d == 2) {
        visit({centre[0] + i * h, centre[1] - i * h});
      } else {
        for (int j = -resolution; j <= resolution; ++j) {
          visit({centre[0] + i * h, centre[1] + j * h, centre[2] - (i + j) * h});
        }
      }
    }
  };
  scan(arg, 1.0);
  scan(arg, 2.0 / resolution);
  scan(arg, 4.0 / (resolution * resolution));
  return best;
}

}  // namespace oracle
