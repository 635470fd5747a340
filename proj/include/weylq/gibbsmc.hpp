#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace weylq {

using Complex = std::complex<double>;

struct GaussianMeasureSpec {
  std::vector<double> eigenvalues;
  double beta = 1.0;

  int n() const { return static_cast<int>(eigenvalues.size()); }
  void validate() const;
};

// Real coordinates of a cylinder vector f_k = q_k + i p_k.
struct CylinderVector {
  std::vector<double> q;
  std::vector<double> p;
};

// count x 2n matrix, columns q_1..q_n then p_1..p_n. Entry (s, c) depends only
// on (seed, s, coordinate), so the first m modes do not depend on n.
Eigen::MatrixXd sample(const GaussianMeasureSpec& spec, std::size_t count, std::uint64_t seed);

struct McEstimate {
  Complex estimate;
  double std_error;
};

// theta(f) = exp(-(1/2beta) sum (q_k^2 + p_k^2)/lambda_k)
double characteristic_closed_form(const GaussianMeasureSpec& spec, const CylinderVector& f);
McEstimate characteristic_mc(const GaussianMeasureSpec& spec, const CylinderVector& f,
                             const Eigen::MatrixXd& samples);

// E[<phi1, X(u)> e^{i<phi2,u>}] with X(u) = iHu, by Gaussian integration by parts.
Complex kms_moment_closed_form(const GaussianMeasureSpec& spec, const CylinderVector& phi1,
                               const CylinderVector& phi2);

// Estimates Re<i phi1, phi2> E[e^{i<phi2,u>}] - i beta E[<phi1, X(u)> e^{i<phi2,u>}].
McEstimate cylindrical_kms_mc(const GaussianMeasureSpec& spec, const CylinderVector& phi1,
                              const CylinderVector& phi2, const Eigen::MatrixXd& samples);

// Leave-one-block-out jackknife over a fixed block partition.
McEstimate jackknife_mean(const std::vector<Complex>& values, int blocks = 100);

}  // namespace weylq
