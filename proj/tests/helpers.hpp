#pragma once

#include <cmath>
#include <random>

#include "weylq/testfn.hpp"
#include "weylq/weyl.hpp"

namespace weylq::testing {

// Dyadic coordinates keep label sums exact, so merging is exercised.
inline Label random_label(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> d(-8, 8);
  Label f(dim);
  for (auto& c : f) c = Complex(d(rng) / 8.0, d(rng) / 8.0);
  return f;
}

inline Complex random_coeff(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

inline WeylElement random_element(std::mt19937_64& rng, double h, std::size_t dim, int max_terms = 3) {
  std::uniform_int_distribution<int> n(1, max_terms);
  WeylElement a(h, dim);
  const int k = n(rng);
  for (int i = 0; i < k; ++i) a.add_term(random_label(rng, dim), random_coeff(rng));
  return a;
}

inline TestFunction random_gaussian_mixture(std::mt19937_64& rng, int nu, int terms) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> s(0.6, 1.4);
  TestFunction f(nu);
  for (int j = 0; j < terms; ++j) {
    std::vector<double> c(nu), w(nu);
    for (int i = 0; i < nu; ++i) {
      c[i] = u(rng);
      w[i] = u(rng);
    }
    f = f + gaussian(nu, Complex(u(rng), u(rng)), s(rng), c, w);
  }
  return f;
}

// log-log slope of y against x from the first and last points
inline double loglog_slope(double x0, double y0, double x1, double y1) {
  return std::log(y1 / y0) / std::log(x1 / x0);
}

}  // namespace weylq::testing
