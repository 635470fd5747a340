#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "weylq/errors.hpp"
#include "weylq/quadrature.hpp"
#include "weylq/testfn.hpp"

using namespace weylq;

namespace {

constexpr double kPi = std::numbers::pi;

// <f, H^{-1} g> through 2/p^2 = int_0^inf e^{-t p^2/2} dt and u = s/(s + t/2).
Complex inv_ham_oracle(const TestFunction& f, const TestFunction& g) {
  const int nu = f.nu;
  Complex total = 0.0;
  for (const auto& a : f.terms) {
    for (const auto& b : g.terms) {
      const double sa = a.sigma * a.sigma, sb = b.sigma * b.sigma, s = 0.5 * (sa + sb);
      Complex vv = 0.0, kappa = 0.0;
      for (int i = 0; i < nu; ++i) {
        const Complex v(sa * a.wave[i] + sb * b.wave[i], a.center[i] - b.center[i]);
        vv += v * v;
        kappa += Complex(-0.5 * (sa * a.wave[i] * a.wave[i] + sb * b.wave[i] * b.wave[i]),
                         -a.wave[i] * a.center[i] + b.wave[i] * b.center[i]);
      }
      boost::math::quadrature::tanh_sinh<double> ts;
      auto re = ts.integrate([&](double u) { return (std::pow(u, nu / 2.0 - 2) * std::exp(u * vv / (4 * s))).real(); }, 0.0, 1.0);
      auto im = ts.integrate([&](double u) { return (std::pow(u, nu / 2.0 - 2) * std::exp(u * vv / (4 * s))).imag(); }, 0.0, 1.0);
      const Complex I = 2.0 * s * std::pow(kPi / s, nu / 2.0) * Complex(re, im);
      total += std::conj(a.amp) * b.amp * std::pow(2 * kPi * std::sqrt(sa * sb), nu) / std::pow(2 * kPi, nu) *
               std::exp(kappa) * I;
    }
  }
  return total;
}

// The box eigenfunction written as plane waves under a very wide Gaussian.
TestFunction eigenfunction_as_mixture(const MultiIndex& n, double L) {
  const int nu = static_cast<int>(n.size());
  TestFunction f(nu);
  for (unsigned mask = 0; mask < (1u << nu); ++mask) {
    Complex amp = std::pow(L, -nu / 2.0);
    std::vector<double> w(nu);
    for (int i = 0; i < nu; ++i) {
      const double k = kPi * n[i] / (2 * L);
      const bool neg = mask >> i & 1u;
      // sin(k(x - L)) = (e^{ik(x-L)} - e^{-ik(x-L)})/(2i)
      w[i] = neg ? -k : k;
      amp *= (neg ? -1.0 : 1.0) * std::polar(1.0, neg ? k * L : -k * L) / Complex(0, 2);
    }
    f = f + gaussian(nu, amp, 1e6, std::vector<double>(nu, 0.0), w);
  }
  return f;
}

}  // namespace

TEST_SUITE("testfn") {

TEST_CASE("fourier_transform_examples") {
  auto f = gaussian(3, 1.0, 1.0);
  CHECK(std::abs(fourier_transform(f, {0, 0, 0}) - std::pow(2 * kPi, 1.5)) < 1e-12);
  CHECK(std::abs(fourier_transform(f, {0, 0, 0})) == doctest::Approx(15.7496).epsilon(1e-5));
  auto g = gaussian(3, Complex(0.3, -0.2), 0.7, {0.1, 0.2, -0.3}, {1.0, 0.0, -1.0});
  for (double r : {0.0, 1.0, 3.0, 6.0}) {
    std::vector<double> p{r, -0.5 * r, 0.2 * r};
    double q2 = 0.0;
    for (int i = 0; i < 3; ++i) q2 += std::pow(p[i] - g.terms[0].wave[i], 2);
    CHECK(std::abs(fourier_transform(g, p)) <=
          std::abs(g.terms[0].amp) * std::pow(2 * kPi, 1.5) * std::pow(0.7, 3) * std::exp(-0.49 * q2 / 2) * (1 + 1e-12));
    CHECK(std::abs(fourier_transform(f + g, p) - fourier_transform(f, p) - fourier_transform(g, p)) < 1e-12);
  }
}

TEST_CASE("fourier_transform_matches_direct_integral_1d") {
  auto f = gaussian(1, Complex(0.4, 0.3), 0.8, {0.3}, {1.1});
  for (double p : {-2.0, 0.0, 0.7, 2.5}) {
    auto re = quad::integrate([&](double x) { return (std::polar(1.0, -p * x) * evaluate(f, {x})).real(); }, -15, 15, 1e-13);
    auto im = quad::integrate([&](double x) { return (std::polar(1.0, -p * x) * evaluate(f, {x})).imag(); }, -15, 15, 1e-13);
    CHECK(std::abs(fourier_transform(f, {p}) - Complex(re, im)) < 1e-11);
  }
}

TEST_CASE("inner_product_examples") {
  auto f = gaussian(3, 1.0, 1.0);
  CHECK(inner_product(f, f).real() == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-14));
  auto far = gaussian(3, 1.0, 1.0, {20.0, 0.0, 0.0});
  CHECK(std::abs(inner_product(f, far)) < 1e-12);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto g = testing::random_gaussian_mixture(rng, 2, 3);
    CHECK(std::abs(inner_product(g, g).imag()) < 1e-14 * std::abs(inner_product(g, g)));
    CHECK(inner_product(g, g).real() > 0);
    auto h = testing::random_gaussian_mixture(rng, 2, 2);
    CHECK(std::abs(inner_product(g, h) - std::conj(inner_product(h, g))) < 1e-13);
  }
  CHECK_THROWS_AS(inner_product(f, gaussian(2, 1.0, 1.0)), Error);
}

TEST_CASE("inner_product_matches_direct_integral_1d") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    auto f = testing::random_gaussian_mixture(rng, 1, 2), g = testing::random_gaussian_mixture(rng, 1, 2);
    auto re = quad::integrate([&](double x) { return (std::conj(evaluate(f, {x})) * evaluate(g, {x})).real(); }, -20, 20, 1e-13);
    auto im = quad::integrate([&](double x) { return (std::conj(evaluate(f, {x})) * evaluate(g, {x})).imag(); }, -20, 20, 1e-13);
    CHECK(std::abs(inner_product(f, g) - Complex(re, im)) < 1e-11);
  }
}

TEST_CASE("space_integral_examples") {
  auto f = gaussian(3, 0.1, 1.0);
  CHECK(space_integral(f).real() == doctest::Approx(1.57496).epsilon(1e-5));
  auto w = gaussian(3, 1.0, 1.0, {0, 0, 0}, {12.0, 0, 0});
  CHECK(std::abs(space_integral(w)) < 1e-25);
  CHECK(std::abs(space_integral(f - f)) == 0.0);
  // the generator image integrates to zero
  CHECK(std::abs(space_integral(apply_generator(f, 0.0, Complex(0, 1)))) == 0.0);
}

TEST_CASE("inv_ham_examples") {
  CHECK(inv_ham_quadratic_form(gaussian(3, 1.0, 1.0)) == doctest::Approx(4 * std::pow(kPi, 1.5)).epsilon(1e-10));
  CHECK(inv_ham_quadratic_form(gaussian(3, 1.0, 1.0)) == doctest::Approx(22.2733).epsilon(1e-5));
  CHECK(inv_ham_quadratic_form(gaussian(3, 0.1, 1.0)) == doctest::Approx(0.222733).epsilon(1e-5));
  CHECK(inv_ham_quadratic_form(gaussian(3, 0.0, 1.0)) == 0.0);
  // 4 pi^{3/2} sigma^5 scaling
  CHECK(inv_ham_quadratic_form(gaussian(3, 1.0, 0.5)) ==
        doctest::Approx(4 * std::pow(kPi, 1.5) * std::pow(0.5, 5)).epsilon(1e-10));
  CHECK_THROWS_AS(inv_ham_quadratic_form(gaussian(2, 1.0, 1.0)), Error);
}

TEST_CASE("inv_ham_matches_laplace_oracle") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 6; ++t) {
    auto f = testing::random_gaussian_mixture(rng, 3, 2);
    const double q = inv_ham_quadratic_form(f);
    CHECK(q == doctest::Approx(inv_ham_oracle(f, f).real()).epsilon(1e-9));
    const Complex c(0.3, -1.7);
    CHECK(inv_ham_quadratic_form(c * f) == doctest::Approx(std::norm(c) * q).epsilon(1e-10));
  }
}

TEST_CASE("plancherel_by_quadrature") {
  std::mt19937_64 rng(16);
  SpectralMultiplier one;
  one.fn = [](double) { return 1.0; };
  for (int nu : {1, 2, 3, 4}) {
    auto f = testing::random_gaussian_mixture(rng, nu, 2);
    auto g = testing::random_gaussian_mixture(rng, nu, 2);
    CHECK(std::abs(spectral_form(f, f, one) - inner_product(f, f)) < 1e-8 * inner_product(f, f).real());
    CHECK(std::abs(spectral_form(f, g, one) - inner_product(f, g)) <
          1e-8 * std::sqrt(inner_product(f, f).real() * inner_product(g, g).real()));
  }
}

TEST_CASE("generator_tags_match_quadrature") {
  // <Hf, Hf> both through the aligned-power path and the general multiplier path
  auto f = gaussian(3, Complex(0.5, 0.1), 0.9, {0.2, 0.0, -0.1}, {0.3, 0.4, 0.0});
  auto hf = apply_generator(f, 0.0);
  SpectralMultiplier sq;
  sq.fn = [](double e) { return e * e; };
  CHECK(std::abs(inner_product(hf, hf) - spectral_form(f, f, sq)) < 1e-9 * inner_product(hf, hf).real());
  // <f, H^{-1} H f> = <f, f>
  SpectralMultiplier inv;
  inv.power = -1;
  CHECK(std::abs(spectral_form(f, hf, inv) - inner_product(f, f)) < 1e-14);
}

TEST_CASE("box_overlap_examples") {
  // eigenfunction expressed as a mixture
  auto psi = eigenfunction_as_mixture({1, 1, 1}, 1.0);
  CHECK(std::abs(box_overlap(psi, {1, 1, 1}, 1.0) - 1.0) < 1e-9);
  CHECK(std::abs(box_overlap(psi, {2, 1, 1}, 1.0)) < 1e-9);
  auto psi1 = eigenfunction_as_mixture({3}, 2.0);
  CHECK(std::abs(box_overlap(psi1, {3}, 2.0) - 1.0) < 1e-9);
  // parity
  auto g = gaussian(3, 1.0, 0.4);
  CHECK(std::abs(box_overlap(g, {2, 1, 1}, 1.0)) < 1e-14);
  CHECK(std::abs(box_overlap(g, {1, 3, 4}, 1.0)) < 1e-14);
  CHECK(std::abs(box_overlap(g, {1, 1, 1}, 1.0)) > 0.1);
  // against an independent adaptive integral in 1D
  auto h = gaussian(1, Complex(0.3, 0.2), 0.5, {0.2}, {2.0});
  for (int n : {1, 2, 7}) {
    auto integrand = [&](double x) { return std::sin(kPi * n * (x - 1.5) / 3.0) / std::sqrt(1.5) * evaluate(h, {x}); };
    const double re = quad::integrate([&](double x) { return integrand(x).real(); }, -1.5, 1.5, 1e-12);
    const double im = quad::integrate([&](double x) { return integrand(x).imag(); }, -1.5, 1.5, 1e-12);
    CHECK(std::abs(box_overlap(h, {n}, 1.5) - Complex(re, im)) < 1e-12);
  }
}

TEST_CASE("parseval_over_box_modes") {
  auto f = gaussian(2, Complex(0.7, 0.2), 0.6, {0.2, -0.1}, {1.0, 0.5});
  const double L = 1.2;
  const double full = restricted_norm_sq(f, L);
  double prev = 0.0;
  for (int N : {2, 4, 8, 16, 32}) {
    BoxOverlapTable t(f, L, N);
    double s = 0.0;
    for_each_mode(2, N, [&](const MultiIndex& n) { s += std::norm(t.coefficient(n)); });
    CHECK(s >= prev);
    CHECK(s <= full * (1 + 1e-12));
    CHECK(s + t.tail_norm_sq() >= full * (1 - 1e-12));
    CHECK(t.restricted_norm_sq() == doctest::Approx(full).epsilon(1e-12));
    prev = s;
  }
  CHECK(prev == doctest::Approx(full).epsilon(1e-3));
}

TEST_CASE("orthonormalize_gives_orthonormal_set") {
  auto basis = orthonormalize({gaussian(2, 1.0, 1.0), gaussian(2, 1.0, 0.7, {0.3, 0.0}), gaussian(2, 1.0, 1.0, {0, 0}, {1, 0})});
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < basis.size(); ++k)
      CHECK(std::abs(inner_product(basis[j], basis[k]) - Complex(j == k ? 1.0 : 0.0)) < 1e-12);
}

}
