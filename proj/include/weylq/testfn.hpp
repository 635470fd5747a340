#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "weylq/spectrum.hpp"

namespace weylq {

using Complex = std::complex<double>;

// x -> amp e^{i wave.x} e^{-|x-center|^2/(2 sigma^2)}, optionally acted on by
// (H - shift)^power with H = -Delta/2 (kept as a Fourier multiplier).
struct GaussianTerm {
  Complex amp = 1.0;
  std::vector<double> center;
  double sigma = 1.0;
  std::vector<double> wave;
  int power = 0;
  double shift = 0.0;
};

struct TestFunction {
  int nu = 1;
  std::vector<GaussianTerm> terms;

  TestFunction() = default;
  explicit TestFunction(int dim) : nu(dim) {}

  bool tagged() const;
  void validate() const;
};

TestFunction gaussian(int nu, Complex amp, double sigma, std::vector<double> center = {},
                      std::vector<double> wave = {});

TestFunction operator+(TestFunction a, const TestFunction& b);
TestFunction operator-(TestFunction a, const TestFunction& b);
TestFunction operator*(Complex c, TestFunction a);

// factor * (H - shift) f, kept symbolic.
TestFunction apply_generator(const TestFunction& f, double shift, Complex factor = 1.0);

// int conj(e^{i w1 x} e^{-(x-c1)^2/(2 s1^2)}) e^{i w2 x} e^{-(x-c2)^2/(2 s2^2)} dx over R
Complex gaussian_overlap_1d(double c1, double s1, double w1, double c2, double s2, double w2);

Complex evaluate(const TestFunction& f, const std::vector<double>& x);
Complex fourier_transform(const TestFunction& f, const std::vector<double>& p);
Complex inner_product(const TestFunction& f, const TestFunction& g);
Complex space_integral(const TestFunction& f);

// m(E) with E = |p|^2/2. Either an arbitrary function, or (E - shift)^power
// when fn is empty; the latter lets tagged terms combine exactly.
struct SpectralMultiplier {
  std::function<double(double)> fn;
  double shift = 0.0;
  int power = 0;
};

// int conj(f^(p)) m(|p|^2/2) g^(p) d^nu p / (2 pi)^nu
Complex spectral_form(const TestFunction& f, const TestFunction& g, const SpectralMultiplier& m,
                      double rel_tol = 1e-11);

// <f, H^{-1} f> with H^{-1} = 2/p^2.
double inv_ham_quadratic_form(const TestFunction& f);

// Gram-Schmidt with respect to inner_product.
std::vector<TestFunction> orthonormalize(const std::vector<TestFunction>& fs);

// Box eigenfunctions psi_n(x) = prod_i L^{-1/2} sin(pi n_i (x_i - L)/(2L)).
Complex box_overlap(const TestFunction& f, const MultiIndex& n, double L);

// Cached per-axis overlaps <psi_n, f> for n in [1, cutoff]^nu, with a
// Parseval certificate for the part of ||f restricted to the box||^2 outside.
class BoxOverlapTable {
 public:
  BoxOverlapTable(const TestFunction& f, double L, int cutoff);

  int cutoff() const { return cutoff_; }
  double L() const { return L_; }
  int nu() const { return nu_; }

  Complex coefficient(const MultiIndex& n) const;
  double restricted_norm_sq() const { return restricted_; }
  double tail_norm_sq() const { return tail_; }

  // Cutoff making the per-axis spectral content beyond it negligible.
  static int suggested_cutoff(const TestFunction& f, double L);

 private:
  int nu_;
  double L_;
  int cutoff_;
  std::vector<Complex> amps_;
  // axis_[j][i][n-1]
  std::vector<std::vector<std::vector<Complex>>> axis_;
  double restricted_ = 0.0;
  double tail_ = 0.0;
};

// int over [-L, L]^nu of |f|^2.
double restricted_norm_sq(const TestFunction& f, double L);

}  // namespace weylq
