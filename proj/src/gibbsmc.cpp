#include "weylq/gibbsmc.hpp"

#include <cmath>
#include <numbers>

#include "weylq/errors.hpp"

namespace weylq {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform(std::uint64_t seed, std::uint64_t s, std::uint64_t coord, std::uint64_t j) {
  std::uint64_t k = splitmix(seed);
  k = splitmix(k ^ s);
  k = splitmix(k ^ (coord * 2 + j));
  // (0, 1]
  return (static_cast<double>(k >> 11) + 1.0) * 0x1.0p-53;
}

double normal(std::uint64_t seed, std::uint64_t s, std::uint64_t coord) {
  const double u1 = uniform(seed, s, coord, 0);
  const double u2 = uniform(seed, s, coord, 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

void check(const GaussianMeasureSpec& spec, const CylinderVector& f) {
  if (static_cast<int>(f.q.size()) != spec.n() || static_cast<int>(f.p.size()) != spec.n())
    fail(ErrorKind::DimensionMismatch, "cylinder vector dimension differs from the measure");
}

void check(const GaussianMeasureSpec& spec, const Eigen::MatrixXd& samples) {
  if (samples.cols() != 2 * spec.n()) fail(ErrorKind::DimensionMismatch, "sample width differs from the measure");
  if (samples.rows() < 1) fail(ErrorKind::InvalidArgument, "no samples");
}

}  // namespace

void GaussianMeasureSpec::validate() const {
  if (eigenvalues.empty()) fail(ErrorKind::InvalidArgument, "measure needs at least one mode");
  for (double l : eigenvalues)
    if (!(l > 0)) fail(ErrorKind::InvalidArgument, "eigenvalues must be positive");
  if (!(beta > 0)) fail(ErrorKind::InvalidArgument, "beta must be positive");
}

Eigen::MatrixXd sample(const GaussianMeasureSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  if (count < 1) fail(ErrorKind::InvalidArgument, "count must be positive");
  const int n = spec.n();
  Eigen::MatrixXd m(count, 2 * n);
  for (int k = 0; k < n; ++k) {
    const double sd = 1.0 / std::sqrt(spec.beta * spec.eigenvalues[k]);
    for (std::size_t s = 0; s < count; ++s) {
      m(s, k) = sd * normal(seed, s, 2 * k);
      m(s, n + k) = sd * normal(seed, s, 2 * k + 1);
    }
  }
  return m;
}

McEstimate jackknife_mean(const std::vector<Complex>& values, int blocks) {
  const std::size_t N = values.size();
  if (N == 0) fail(ErrorKind::InvalidArgument, "no samples");
  const int B = static_cast<int>(std::min<std::size_t>(N, std::max(blocks, 2)));
  std::vector<Complex> sums(B, 0.0);
  std::vector<std::size_t> counts(B, 0);
  Complex total = 0.0;
  for (std::size_t s = 0; s < N; ++s) {
    const int b = static_cast<int>(s * B / N);
    sums[b] += values[s];
    ++counts[b];
    total += values[s];
  }
  const Complex mean = total / double(N);
  if (B < 2) return {mean, 0.0};
  double var = 0.0;
  for (int b = 0; b < B; ++b) {
    const Complex loo = (total - sums[b]) / double(N - counts[b]);
    var += std::norm(loo - mean);
  }
  var *= double(B - 1) / B;
  return {mean, std::sqrt(var)};
}

double characteristic_closed_form(const GaussianMeasureSpec& spec, const CylinderVector& f) {
  spec.validate();
  check(spec, f);
  double s = 0.0;
  for (int k = 0; k < spec.n(); ++k) s += (f.q[k] * f.q[k] + f.p[k] * f.p[k]) / spec.eigenvalues[k];
  return std::exp(-s / (2.0 * spec.beta));
}

McEstimate characteristic_mc(const GaussianMeasureSpec& spec, const CylinderVector& f,
                             const Eigen::MatrixXd& samples) {
  spec.validate();
  check(spec, f);
  check(spec, samples);
  const int n = spec.n();
  std::vector<Complex> v(samples.rows());
  for (Eigen::Index s = 0; s < samples.rows(); ++s) {
    double t = 0.0;
    for (int k = 0; k < n; ++k) t += f.q[k] * samples(s, k) + f.p[k] * samples(s, n + k);
    v[s] = std::polar(1.0, t);
  }
  return jackknife_mean(v);
}

Complex kms_moment_closed_form(const GaussianMeasureSpec& spec, const CylinderVector& phi1,
                               const CylinderVector& phi2) {
  spec.validate();
  check(spec, phi1);
  check(spec, phi2);
  double sigma = 0.0;
  for (int k = 0; k < spec.n(); ++k) sigma += phi1.q[k] * phi2.p[k] - phi1.p[k] * phi2.q[k];
  return Complex(0.0, -sigma / spec.beta) * characteristic_closed_form(spec, phi2);
}

McEstimate cylindrical_kms_mc(const GaussianMeasureSpec& spec, const CylinderVector& phi1,
                              const CylinderVector& phi2, const Eigen::MatrixXd& samples) {
  spec.validate();
  check(spec, phi1);
  check(spec, phi2);
  check(spec, samples);
  const int n = spec.n();
  double sigma = 0.0;
  for (int k = 0; k < n; ++k) sigma += phi1.q[k] * phi2.p[k] - phi1.p[k] * phi2.q[k];
  std::vector<Complex> v(samples.rows());
  for (Eigen::Index s = 0; s < samples.rows(); ++s) {
    double theta = 0.0, x = 0.0;
    for (int k = 0; k < n; ++k) {
      const double q = samples(s, k), p = samples(s, n + k);
      theta += phi2.q[k] * q + phi2.p[k] * p;
      x += spec.eigenvalues[k] * (phi1.p[k] * q - phi1.q[k] * p);
    }
    v[s] = (sigma - Complex(0.0, spec.beta) * x) * std::polar(1.0, theta);
  }
  return jackknife_mean(v);
}

}  // namespace weylq
