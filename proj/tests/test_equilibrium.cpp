#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "weylq/equilibrium.hpp"
#include "weylq/errors.hpp"
#include "weylq/quantize.hpp"

using namespace weylq;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

StateSpec quantum_box(double h, double L = 1.0, double mu = 0.0) {
  StateSpec s;
  s.kind = StateKind::QuantumBoxGibbs;
  s.h = h;
  s.mu = mu;
  s.box = BoxSpectrum{L, 3, 0};
  return s;
}

}  // namespace

TEST_SUITE("equilibrium") {

TEST_CASE("solve_mu_round_trip") {
  const BoxSpectrum box{2.0, 3, 0};
  double prev = -1e300;
  for (double rho : {0.01, 0.1, 1.0}) {
    const double mu = solve_mu_quantum(rho, box, 1.0, 1.0);
    CHECK(mu < box.ground_energy());
    CHECK(mu > prev);
    prev = mu;
    StateSpec s = quantum_box(1.0, 2.0, mu);
    CHECK(quantum_density(s) == doctest::Approx(rho).epsilon(1e-10));
  }
  // very dense: mu pinned just below the ground energy
  const double mu = solve_mu_quantum(1e3, box, 1.0, 1.0);
  CHECK(box.ground_energy() - mu > 0);
  CHECK(box.ground_energy() - mu < 1e-4);
  // very dilute
  const double mu2 = solve_mu_quantum(1e-8, box, 2.0, 0.5);
  CHECK(quantum_density(StateSpec{StateKind::QuantumBoxGibbs, 2.0, 0.5, mu2, 0, 0, box, 3}) ==
        doctest::Approx(1e-8).epsilon(1e-10));
  CHECK(kind_of([&] { solve_mu_quantum(0.0, box, 1.0, 1.0); }) == ErrorKind::NonPositiveTarget);
  CHECK(kind_of([&] { solve_mu_quantum(-1.0, box, 1.0, 1.0); }) == ErrorKind::NonPositiveTarget);
}

TEST_CASE("mu_net_classical_examples") {
  CHECK(mu_net_classical(1.0, 1.0, 1.0, 3) == doctest::Approx(3.701102 - 0.125).epsilon(1e-6));
  CHECK(mu_net_classical(0.0, 5.0, 1.0, 3) == 0.0);
  CHECK(mu_net_classical(1e-12, 1.0, 1.0, 3) < -1e10);
  for (double alpha : {0.01, 0.1, 1.0, 7.0})
    for (double L : {0.5, 1.0, 10.0, 40.0}) {
      const double mu = mu_net_classical(alpha, L, 0.7, 3);
      const double e0 = ground_energy(L, 3);
      CHECK(mu < e0);
      CHECK(1.0 / (std::pow(2 * L, 3) * 0.7 * (e0 - mu)) == doctest::Approx(alpha).epsilon(1e-12));
    }
}

TEST_CASE("condensate_fraction_limit_examples") {
  const std::vector<double> grid{0.5, 0.2, 0.1, 0.05, 0.01};
  auto plus = condensate_fraction_limit([](double h) { return critical_density(1.0, h, 3) + 0.3 / h; }, 1.0, 3, grid);
  for (const auto& p : plus) CHECK(p.renormalized == doctest::Approx(0.3).epsilon(1e-12));
  auto twice = condensate_fraction_limit([](double h) { return 2 * critical_density(1.0, h, 3); }, 1.0, 3, grid);
  for (const auto& p : twice)
    CHECK(p.renormalized == doctest::Approx(std::pow(p.h, -0.5) * critical_density(1.0, 1.0, 3)).epsilon(1e-9));
  CHECK(twice.back().renormalized > 5 * twice.front().renormalized);
  auto one = condensate_fraction_limit([](double h) { return critical_density(1.0, h, 3) + 1.0; }, 1.0, 3, grid);
  for (const auto& p : one) CHECK(p.renormalized == doctest::Approx(p.h).epsilon(1e-9));
  CHECK(kind_of([&] {
          condensate_fraction_limit([](double h) { return critical_density(1.0, h, 3); }, 1.0, 3, grid);
        }) == ErrorKind::SubcriticalDensity);
}

TEST_CASE("semiclassical_scalar_factor") {
  // h coth(h/2) = 2 + h^2/6 + O(h^4)
  const double h = 0.01;
  const double v = h * (1 + std::exp(-h)) / (1 - std::exp(-h));
  CHECK(v - 2.0 == doctest::Approx(h * h / 6).epsilon(1e-4));
}

TEST_CASE("semiclassical_box_family") {
  ModeCoefficients c{{{1, 1, 1}, 1.0}};
  StateSpec target;
  target.kind = StateKind::ClassicalBoxGibbs;
  target.box = BoxSpectrum{1.0, 3, 0};
  auto rows = semiclassical_scan([](double h) { return quantum_box(h); }, target, c, {0.1, 0.05, 0.025});
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].error / rows[0].error == doctest::Approx(0.5).epsilon(0.1));
  CHECK(rows[2].error / rows[1].error == doctest::Approx(0.5).epsilon(0.1));
  const double slope = testing::loglog_slope(rows[0].param, rows[0].error, rows[2].param, rows[2].error);
  CHECK(slope >= 0.8);
  CHECK(slope <= 2.2);
  auto zero = semiclassical_scan([](double h) { return quantum_box(h); }, target, ModeCoefficients{}, {0.1, 0.01});
  for (const auto& r : zero) CHECK(r.error == 0.0);
}

TEST_CASE("semiclassical_condensate_family") {
  const double alpha = 0.2;
  StateSpec target;
  target.kind = StateKind::ClassicalCondensate;
  target.alpha = alpha;
  auto family = [alpha](double h) {
    StateSpec s;
    s.kind = StateKind::QuantumCondensate;
    s.h = h;
    s.rho_bar = critical_density(1.0, h, 3) + alpha / h;
    return s;
  };
  auto f = gaussian(3, 0.2, 0.9, {0.1, 0, 0}, {0.3, 0, 0});
  auto rows = semiclassical_scan(family, target, f, {0.2, 0.1, 0.05, 0.025});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error < rows[i - 1].error);
  const double slope = testing::loglog_slope(rows.front().param, rows.front().error, rows.back().param, rows.back().error);
  CHECK(slope >= 0.8);
  CHECK(slope <= 2.2);
}

TEST_CASE("semiclassical_rejects_bad_families") {
  StateSpec target;
  target.kind = StateKind::ClassicalBoxGibbs;
  target.box = BoxSpectrum{1.0, 3, 0};
  ModeCoefficients c{{{1, 1, 1}, 1.0}};
  CHECK(kind_of([&] { semiclassical_scan([](double) { return quantum_box(0.3); }, target, c, {0.1}); }) ==
        ErrorKind::InvalidSpec);
}

TEST_CASE("thermodynamic_scan_decreasing") {
  auto f = gaussian(3, 0.1, 1.0);
  for (double alpha : {0.0, 0.1, 1.0}) {
    auto rows = thermodynamic_scan(alpha, 1.0, f, {5, 10, 20});
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].error < rows[i - 1].error);
    for (const auto& r : rows) CHECK(r.extra == doctest::Approx(mu_net_classical(alpha, r.param, 1.0, 3)));
    if (alpha == 0.0) CHECK(rows[0].target == doctest::Approx(0.89461).epsilon(1e-5));
    if (alpha == 0.1) CHECK(rows[0].target == doctest::Approx(0.33169).epsilon(1e-5));
  }
}

TEST_CASE("kms_residual_analytic_box") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  StateSpec s;
  s.kind = StateKind::ClassicalBoxGibbs;
  s.box = BoxSpectrum{1.0, 3, 0};
  for (int t = 0; t < 20; ++t) {
    ModeCoefficients f, g;
    for (int k = 1; k <= 3; ++k) {
      f[{k, 1, 1}] = Complex(u(rng), u(rng));
      g[{k, 1, 1}] = Complex(u(rng), u(rng));
      g[{2, k, 1}] = Complex(u(rng), u(rng));
    }
    s.mu = u(rng);
    s.beta = 0.5 + u(rng) * 0.3 + 0.3;
    WeakDerivationSpec d{WeakDerivationSpec::Generator::HMinusMu, s.mu};
    CHECK(kms_residual(s, d, f, g, {}) < 1e-12);
  }
}

TEST_CASE("kms_residual_analytic_continuum") {
  std::mt19937_64 rng(22);
  for (double alpha : {0.0, 0.1, 1.0, 10.0}) {
    StateSpec s;
    s.kind = StateKind::ClassicalCondensate;
    s.alpha = alpha;
    s.beta = 1.3;
    for (int t = 0; t < 4; ++t) {
      const double k = 0.02 / std::sqrt(1.0 + alpha);
      auto f = k * testing::random_gaussian_mixture(rng, 3, 2), g = k * testing::random_gaussian_mixture(rng, 3, 2);
      CHECK(weyl_expectation(s, f + g).value.real() > 1e-3);
      CHECK(kms_residual(s, {}, f, g, {}) < 1e-12);
    }
  }
  StateSpec iv;
  iv.kind = StateKind::ClassicalInfVol;
  iv.mu = -0.4;
  auto f = gaussian(3, Complex(0.03, 0.04), 0.8, {0.2, 0, 0}, {0, 0.5, 0});
  auto g = gaussian(3, Complex(-0.02, 0.05), 1.1, {0, -0.3, 0}, {0.4, 0, 0});
  CHECK(kms_residual(iv, {WeakDerivationSpec::Generator::HMinusMu, -0.4}, f, g, {}) < 1e-12);
  // the wrong generator breaks the identity
  CHECK(kms_residual(iv, {}, f, g, {}) > 1e-6);
}

TEST_CASE("kms_residual_finite_difference") {
  StateSpec s;
  s.kind = StateKind::ClassicalCondensate;
  s.alpha = 0.3;
  auto f = gaussian(3, Complex(0.03, 0.04), 0.8, {0.2, 0, 0}, {0, 0.5, 0});
  auto g = gaussian(3, Complex(-0.02, 0.05), 1.1, {0, -0.3, 0}, {0.4, 0, 0});
  CHECK(weyl_expectation(s, f + g).value.real() > 0.1);
  const double r1 = kms_residual(s, {}, f, g, {KmsMode::Kind::FiniteDifference, 1e-3});
  const double r2 = kms_residual(s, {}, f, g, {KmsMode::Kind::FiniteDifference, 5e-4});
  CHECK(r1 < 1e-10);
  CHECK(r1 > 0);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
  // far outside the quadratic regime the ratio collapses
  CHECK(kind_of([&] { kms_residual(s, {}, f, g, {KmsMode::Kind::FiniteDifference, 40.0}); }) == ErrorKind::StepTooLarge);
  StateSpec q;
  q.kind = StateKind::QuantumInfVol;
  q.h = 1.0;
  q.mu = -0.1;
  CHECK(kind_of([&] { kms_residual(q, {}, f, g, {}); }) == ErrorKind::InvalidSpec);
}

}
