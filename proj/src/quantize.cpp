#include "weylq/quantize.hpp"

#include <cmath>
#include <limits>

#include "weylq/errors.hpp"

namespace weylq {

WeylElement quantize(const WeylElement& a, double h) {
  if (a.hbar() != 0.0) fail(ErrorKind::NonzeroHbar, "quantize takes a classical element");
  if (h < 0) fail(ErrorKind::NegativeHbar, "h must be nonnegative");
  WeylElement out(h, a.dim());
  for (const auto& t : a.terms()) out.add_term(t.label, t.coeff * std::exp(-h * norm_sq(t.label) / 4));
  return out;
}

Preimage preimage(const WeylElement& A) {
  const double h = A.hbar();
  if (!(h > 0)) fail(ErrorKind::ZeroHbar, "preimage needs h > 0");
  WeylElement out(0.0, A.dim());
  for (const auto& t : A.terms()) out.add_term(t.label, t.coeff * std::exp(h * norm_sq(t.label) / 4));
  return {out, norm_bounds(out).lower};
}

double dirac_residual(const Label& f, const Label& g, double h) {
  if (!(h > 0)) fail(ErrorKind::ZeroHbar, "Dirac residual needs h > 0");
  const double s = symplectic(f, g);
  const double lhs = -(2.0 / h) * std::sin(h * s / 2) * std::exp(-h * (norm_sq(f) + norm_sq(g)) / 4);
  const double rhs = -s * std::exp(-h * norm_sq(add(f, g)) / 4);
  return std::abs(lhs - rhs);
}

double vonneumann_residual(const Label& f, const Label& g, double h) {
  if (!(h > 0)) fail(ErrorKind::ZeroHbar, "von Neumann residual needs h > 0");
  const double s = symplectic(f, g);
  const Complex prod = std::exp(-h * (norm_sq(f) + norm_sq(g)) / 4) * std::polar(1.0, -h * s / 2);
  return std::abs(prod - std::exp(-h * norm_sq(add(f, g)) / 4));
}

std::vector<RieffelPoint> rieffel_profile(const WeylElement& a, const std::vector<double>& h_grid) {
  std::vector<RieffelPoint> out;
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (i > 0 && h_grid[i] < h_grid[i - 1]) fail(ErrorKind::InvalidArgument, "h grid must be ascending");
    const NormBounds nb = norm_bounds(quantize(a, h_grid[i]));
    out.push_back({h_grid[i], nb.lower, nb.upper});
  }
  return out;
}

SurjectivityWitness nonsurjectivity_witness(const Label& f, int N, double h) {
  if (is_zero(f)) fail(ErrorKind::InvalidArgument, "witness needs f != 0");
  if (N < 2) fail(ErrorKind::InvalidArgument, "witness needs N >= 2");
  if (h < 0) fail(ErrorKind::NegativeHbar, "h must be nonnegative");
  const double f2 = norm_sq(f);
  SurjectivityWitness w;
  double target = 0.0;
  double log_sum = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= N; ++n) {
    const double c = 1.0 / (double(n) * n);
    target += c * c;
    // log of (e^{h n^2 |f|^2/4} / n^2)^2
    const double lt = 2.0 * (h * double(n) * n * f2 / 4 - 2.0 * std::log(double(n)));
    const double m = std::max(log_sum, lt);
    log_sum = m + std::log(std::exp(log_sum - m) + std::exp(lt - m));
    w.target_partial_l2.push_back(std::sqrt(target));
    w.preimage_partial_log_l2.push_back(0.5 * log_sum);
    w.preimage_partial_l2.push_back(std::exp(0.5 * log_sum));
  }
  return w;
}

Complex pullback_generator(const StateSpec& spec, const StateInput& f) {
  validate(spec);
  if (!spec.quantum()) fail(ErrorKind::InvalidSpec, "pullback needs a quantum state");
  return std::exp(-spec.h * input_norm_sq(spec, f) / 4) * weyl_expectation(spec, f).value;
}

Complex pullback_expectation(const StateSpec& spec, const Realization& r, const WeylElement& a) {
  validate(spec);
  if (!spec.quantum()) fail(ErrorKind::InvalidSpec, "pullback needs a quantum state");
  return state_expectation(spec, r, quantize(a, spec.h));
}

}  // namespace weylq
