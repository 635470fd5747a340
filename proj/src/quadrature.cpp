#include "weylq/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "weylq/errors.hpp"

namespace weylq::quad {

namespace {

Rule make_legendre(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

// Orthonormal Hermite functions psi_0..psi_{n} at x; returns psi_n and fills
// the sum of squares of psi_0..psi_{n-1}.
double hermite_functions(int n, double x, double* prev, double* sumsq) {
  double pm1 = 0.0;
  double p = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    s += p * p;
    const double next = std::sqrt(2.0 / (k + 1)) * x * p - std::sqrt(double(k) / (k + 1)) * pm1;
    pm1 = p;
    p = next;
  }
  *prev = pm1;
  *sumsq = s;
  return p;
}

Rule make_hermite(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    J(k, k - 1) = J(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    double prev = 0.0, sumsq = 0.0;
    for (int it = 0; it < 20; ++it) {
      const double p = hermite_functions(n, x, &prev, &sumsq);
      const double dp = std::sqrt(2.0 * n) * prev - x * p;
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    hermite_functions(n, x, &prev, &sumsq);
    r.nodes[i] = x;
    r.weights[i] = 1.0 / sumsq;
  }
  // enforce exact symmetry
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (r.nodes[n - 1 - i] - r.nodes[i]);
    const double w = 0.5 * (r.weights[i] + r.weights[n - 1 - i]);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

template <Rule (*Make)(int)>
const Rule& cached(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  if (n < 1) fail(ErrorKind::InvalidArgument, "quadrature rule needs at least one node");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Rule>(Make(n));
  return *slot;
}

}  // namespace

const Rule& gauss_legendre(int n) { return cached<make_legendre>(n); }
const Rule& gauss_hermite(int n) { return cached<make_hermite>(n); }

namespace {

template <class T>
T integrate_impl(const std::function<T(double)>& f, double a, double b, double rel_tol,
                 double abs_tol) {
  if (!(b > a)) return T(0.0);
  double err = 0.0, l1 = 0.0;
  const T v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, a, b, 15, rel_tol * 0.1, &err, &l1);
  if (!std::isfinite(std::abs(v)) || err > std::max(rel_tol * l1, abs_tol)) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] reached error " << err
       << " against scale " << l1;
    fail(ErrorKind::QuadratureFailure, os.str());
  }
  return v;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol) {
  return integrate_impl<double>(f, a, b, rel_tol, abs_tol);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                               double b, double rel_tol, double abs_tol) {
  return integrate_impl<std::complex<double>>(f, a, b, rel_tol, abs_tol);
}

}  // namespace weylq::quad
