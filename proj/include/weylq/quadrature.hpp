#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace weylq::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre on [-1, 1]. Cached per node count.
const Rule& gauss_legendre(int n);

// Gauss-Hermite with the e^{-x^2} weight folded into the weights, so that
// sum_i w_i g(x_i) approximates the plain integral of g over R.
const Rule& gauss_hermite(int n);

// Adaptive Gauss-Kronrod on [a, b]. Throws QuadratureFailure when the error
// estimate exceeds rel_tol times the integral of |f| (floored by abs_tol).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 0.0);

// Complex-valued variant; the reference scale is the integral of |f|.
std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a,
                               double b, double rel_tol, double abs_tol = 0.0);

}  // namespace weylq::quad
