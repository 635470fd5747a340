#include "weylq/equilibrium.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

#include "weylq/errors.hpp"
#include "weylq/quantize.hpp"

namespace weylq {

namespace {

double box_density(const BoxSpectrum& box, double beta, double h, double mu) {
  StateSpec s;
  s.kind = StateKind::QuantumBoxGibbs;
  s.beta = beta;
  s.h = h;
  s.mu = mu;
  s.nu = box.nu;
  s.box = box;
  return quantum_density(s);
}

StateInput to_box_input(const StateSpec& spec, const StateInput& f) {
  if (std::holds_alternative<ModeCoefficients>(f)) return f;
  const auto& g = std::get<TestFunction>(f);
  if (g.nu != spec.nu) fail(ErrorKind::DimensionMismatch, "test function dimension differs from the state");
  return project_modes(g, spec.box->L, spec.box->cutoff);
}

}  // namespace

double solve_mu_quantum(double rho_target, const BoxSpectrum& box, double beta, double h) {
  if (!(rho_target > 0)) fail(ErrorKind::NonPositiveTarget, "target density must be positive");
  if (!(beta > 0) || !(h > 0)) fail(ErrorKind::InvalidArgument, "beta and h must be positive");
  const double e0 = box.ground_energy();
  // mu = E_0 - e^u; the density decreases in u
  auto density_at = [&](double u) { return box_density(box, beta, h, e0 - std::exp(u)); };
  double u_hi = 0.0;  // mu = E_0 - 1
  int guard = 0;
  while (density_at(u_hi) > rho_target) {
    u_hi += std::log(2.0);
    if (++guard > 400) fail(ErrorKind::BracketFailure, "could not bracket the chemical potential from below");
  }
  double u_lo = std::log(1e-3);
  guard = 0;
  while (density_at(u_lo) < rho_target) {
    u_lo -= std::log(10.0);
    if (++guard > 60) fail(ErrorKind::BracketFailure, "could not bracket the chemical potential from above");
  }
  const double lt = std::log(rho_target);
  auto F = [&](double u) { return std::log(density_at(u)) - lt; };
  const double f_lo = F(u_lo), f_hi = F(u_hi);
  if (!(f_lo >= 0 && f_hi <= 0)) fail(ErrorKind::BracketFailure, "chemical potential bracket does not straddle the target");
  if (f_lo == 0) return e0 - std::exp(u_lo);
  if (f_hi == 0) return e0 - std::exp(u_hi);
  std::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(F, u_lo, u_hi, f_lo, f_hi,
                                             boost::math::tools::eps_tolerance<double>(50), iters);
  const double u = 0.5 * (r.first + r.second);
  const double mu = e0 - std::exp(u);
  const double rho = box_density(box, beta, h, mu);
  if (!(std::abs(rho - rho_target) <= 1e-10 * rho_target)) {
    std::ostringstream os;
    os << "density " << rho << " misses target " << rho_target;
    fail(ErrorKind::BracketFailure, os.str());
  }
  return mu;
}

double mu_net_classical(double alpha, double L, double beta, int nu) {
  if (!(alpha >= 0)) fail(ErrorKind::InvalidArgument, "alpha must be nonnegative");
  if (alpha == 0.0) return 0.0;
  const double vol = std::pow(2.0 * L, nu);
  return ground_energy(L, nu) - 1.0 / (alpha * beta * vol);
}

std::vector<CondensatePoint> condensate_fraction_limit(const std::function<double(double)>& rho_of_h,
                                                       double beta, int nu,
                                                       const std::vector<double>& h_grid) {
  std::vector<CondensatePoint> out;
  for (double h : h_grid) {
    const double rho = rho_of_h(h);
    const double rc = critical_density(beta, h, nu);
    if (!(rho > rc)) {
      std::ostringstream os;
      os << "rho_bar(" << h << ") = " << rho << " is not above rho_c = " << rc;
      fail(ErrorKind::SubcriticalDensity, os.str());
    }
    out.push_back({h, h * (rho - rc)});
  }
  return out;
}

std::vector<ScanRow> semiclassical_scan(const std::function<StateSpec(double)>& family,
                                        const StateSpec& classical_target, const StateInput& f,
                                        const std::vector<double>& h_grid) {
  if (classical_target.quantum()) fail(ErrorKind::InvalidSpec, "semiclassical target must be classical");
  const double target = weyl_expectation(classical_target, f).value.real();
  std::vector<ScanRow> out;
  for (double h : h_grid) {
    const StateSpec s = family(h);
    if (!s.quantum() || s.h != h) fail(ErrorKind::InvalidSpec, "family must return a quantum state at the given h");
    const double v = pullback_generator(s, f).real();
    out.push_back({h, v, target, std::abs(v - target)});
  }
  return out;
}

std::vector<ScanRow> thermodynamic_scan(double alpha, double beta, const TestFunction& f,
                                        const std::vector<double>& L_grid) {
  if (f.nu < 3) fail(ErrorKind::DimensionTooLow, "thermodynamic scan needs nu >= 3");
  StateSpec target;
  target.kind = StateKind::ClassicalCondensate;
  target.beta = beta;
  target.alpha = alpha;
  target.nu = f.nu;
  const double tv = weyl_expectation(target, f).value.real();
  std::vector<ScanRow> out;
  for (double L : L_grid) {
    StateSpec s;
    s.kind = StateKind::ClassicalBoxGibbs;
    s.beta = beta;
    s.nu = f.nu;
    s.box = BoxSpectrum{L, f.nu, 0};
    s.mu = mu_net_classical(alpha, L, beta, f.nu);
    const double v = weyl_expectation(s, f).value.real();
    out.push_back({L, v, tv, std::abs(v - tv), s.mu});
  }
  return out;
}

StateInput generator_image(const StateSpec& spec, const WeakDerivationSpec& d, const StateInput& f) {
  const double shift = d.shift();
  if (spec.box_kind()) {
    ModeCoefficients c = std::get<ModeCoefficients>(to_box_input(spec, f));
    for (auto& [n, v] : c) v *= Complex(0.0, eigenvalue(n, spec.box->L) - shift);
    return c;
  }
  if (!std::holds_alternative<TestFunction>(f))
    fail(ErrorKind::DomainViolation, "continuum states need a test function, not mode coefficients");
  return apply_generator(std::get<TestFunction>(f), shift, Complex(0.0, 1.0));
}

namespace {

double residual_at(const StateSpec& spec, const StateInput& u, const StateInput& k, double sigma_gf,
                   const Complex& omega, const KmsMode& mode, double dt) {
  Complex field;
  if (mode.kind == KmsMode::Kind::Analytic) {
    field = field_weyl_expectation(spec, k, u);
  } else {
    const Complex plus = weyl_expectation(spec, add_inputs(u, scale_input(dt, k))).value;
    const Complex minus = weyl_expectation(spec, add_inputs(u, scale_input(-dt, k))).value;
    field = Complex(0.0, -1.0) * (plus - minus) / (2.0 * dt);
  }
  return std::abs(sigma_gf * omega - Complex(0.0, spec.beta) * field);
}

}  // namespace

double kms_residual(const StateSpec& spec, const WeakDerivationSpec& d, const StateInput& f,
                    const StateInput& g, const KmsMode& mode) {
  validate(spec);
  if (spec.quantum()) fail(ErrorKind::InvalidSpec, "weak KMS residuals are for classical states");
  StateInput ff = f, gg = g;
  if (spec.box_kind()) {
    ff = to_box_input(spec, f);
    gg = to_box_input(spec, g);
  }
  const StateInput u = add_inputs(ff, gg);
  const Complex omega = weyl_expectation(spec, u).value;
  const double sigma_gf = input_inner(spec, gg, ff).imag();
  const StateInput k = generator_image(spec, d, ff);
  if (mode.kind == KmsMode::Kind::Analytic) return residual_at(spec, u, k, sigma_gf, omega, mode, 0.0);
  if (!(mode.dt > 0)) fail(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  const double r1 = residual_at(spec, u, k, sigma_gf, omega, mode, mode.dt);
  const double r2 = residual_at(spec, u, k, sigma_gf, omega, mode, mode.dt / 2);
  const double floor = 1e-11 * std::max(1.0, std::abs(sigma_gf));
  if (r1 > floor) {
    const double ratio = r1 / std::max(r2, 1e-300);
    if (ratio < 3.0 || ratio > 5.0) {
      std::ostringstream os;
      os << "Richardson ratio " << ratio << " between dt = " << mode.dt << " and " << mode.dt / 2
         << " is not close to 4";
      fail(ErrorKind::StepTooLarge, os.str());
    }
  }
  return r1;
}

}  // namespace weylq
