#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "weylq/berezin.hpp"
#include "weylq/errors.hpp"
#include "weylq/quadrature.hpp"

using namespace weylq;

TEST_SUITE("berezin") {

TEST_CASE("coherent_state_is_normalized") {
  for (double h : {0.3, 1.0, 2.0}) {
    auto c = coherent_state({0.4}, {-1.2}, h);
    CHECK(inner_product(c, c).real() == doctest::Approx(1.0).epsilon(1e-14));
    auto c2 = coherent_state({0.4, 1.0}, {-1.2, 0.3}, h);
    CHECK(inner_product(c2, c2).real() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("schrodinger_examples") {
  auto psi = coherent_state({0.0}, {0.0}, 1.0);
  CHECK(std::abs(schrodinger_matrix_element({1.0}, {0.0}, psi, psi, 1.0) - std::exp(-0.25)) < 1e-14);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto phi = testing::random_gaussian_mixture(rng, 1, 2), chi = testing::random_gaussian_mixture(rng, 1, 2);
    CHECK(std::abs(schrodinger_matrix_element({0.0}, {0.0}, phi, chi, 0.7) - inner_product(phi, chi)) < 1e-14);
    const double bound = std::sqrt(inner_product(phi, phi).real() * inner_product(chi, chi).real());
    CHECK(std::abs(schrodinger_matrix_element({0.8}, {-1.1}, phi, chi, 0.7)) <= bound * (1 + 1e-12));
  }
}

TEST_CASE("schrodinger_matches_direct_integral") {
  // e^{i(lX + mP)} psi(y) = e^{i l y} e^{i h l m/2} psi(y + h m)
  auto phi = gaussian(1, Complex(0.6, 0.1), 0.9, {0.2}, {0.5});
  auto psi = gaussian(1, Complex(-0.3, 0.7), 1.2, {-0.4}, {-0.2});
  const double l = 0.7, m = -1.3, h = 0.8;
  auto integrand = [&](double y) {
    return std::conj(evaluate(phi, {y})) * std::polar(1.0, l * y + h * l * m / 2) * evaluate(psi, {y + h * m});
  };
  const double re = quad::integrate([&](double y) { return integrand(y).real(); }, -20, 20, 1e-13);
  const double im = quad::integrate([&](double y) { return integrand(y).imag(); }, -20, 20, 1e-13);
  CHECK(std::abs(schrodinger_matrix_element({l}, {m}, phi, psi, h) - Complex(re, im)) < 1e-12);
}

TEST_CASE("quadrature_examples") {
  auto psi = coherent_state({0.0}, {0.0}, 1.0);
  CHECK(std::abs(berezin_matrix_element_quad({1.0}, {0.0}, psi, psi, 1.0) - std::exp(-0.5)) < 1e-9);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    auto phi = testing::random_gaussian_mixture(rng, 1, 2), chi = testing::random_gaussian_mixture(rng, 1, 2);
    CHECK(std::abs(berezin_matrix_element_quad({0.0}, {0.0}, phi, chi, 1.0) - inner_product(phi, chi)) <
          1e-8 * std::sqrt(inner_product(phi, phi).real() * inner_product(chi, chi).real()));
  }
}

TEST_CASE("quadrature_matches_closed_form_sweep") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  const double hs[] = {0.5, 1.0, 2.0};
  for (int t = 0; t < 10; ++t) {
    const double l = u(rng), m = u(rng), h = hs[t % 3];
    auto phi = testing::random_gaussian_mixture(rng, 1, 2), chi = testing::random_gaussian_mixture(rng, 1, 1);
    const Complex q = berezin_matrix_element_quad({l}, {m}, phi, chi, h);
    const Complex c = berezin_closed_form({l}, {m}, phi, chi, h);
    CHECK(std::abs(q - c) <= 1e-6 * std::abs(c) + 1e-12);
  }
}

TEST_CASE("quadrature_two_dimensions") {
  auto phi = gaussian(2, Complex(0.5, 0.2), 0.8, {0.1, -0.2}, {0.3, 0.0});
  auto psi = gaussian(2, Complex(0.3, -0.4), 1.1, {-0.2, 0.1}, {0.0, -0.4});
  const Complex q = berezin_matrix_element_quad({0.5, -0.3}, {0.2, 0.7}, phi, psi, 0.9, {40, 1e-10});
  const Complex c = berezin_closed_form({0.5, -0.3}, {0.2, 0.7}, phi, psi, 0.9);
  CHECK(std::abs(q - c) <= 1e-8 * std::abs(c));
}

TEST_CASE("h_scaling_substitution") {
  auto psi = coherent_state({0.3}, {0.1}, 1.0);
  for (double s : {2.0, 4.0}) {
    const double l = 0.8 * std::sqrt(s), m = -0.5 * std::sqrt(s), h = 1.0 / s;
    auto ps = coherent_state({0.3}, {0.1}, h);
    CHECK(std::abs(berezin_matrix_element_quad({l}, {m}, ps, ps, h) - berezin_closed_form({l}, {m}, ps, ps, h)) < 1e-9);
    // the quantization factor only sees h(l^2 + m^2), which substitution keeps fixed
    CHECK(std::abs(berezin_closed_form({l}, {m}, ps, ps, h)) / std::abs(schrodinger_matrix_element({l}, {m}, ps, ps, h)) ==
          doctest::Approx(std::exp(-(0.64 + 0.25) / 4)).epsilon(1e-12));
  }
  (void)psi;
}

TEST_CASE("positivity_probe") {
  std::mt19937_64 rng(8);
  std::vector<TestFunction> vs;
  for (int t = 0; t < 20; ++t) vs.push_back(testing::random_gaussian_mixture(rng, 1, 2));
  // |1 + e^{iq}|^2 = 2 + W(1) + W(-1)
  WeylElement sym = 2.0 * WeylElement::identity(0.0, 1) + WeylElement::generator(0.0, {Complex(1, 0)}) +
                    WeylElement::generator(0.0, {Complex(-1, 0)});
  CHECK(berezin_positivity_probe(sym, vs, 1.0) >= -1e-8);
  // |1 - e^{i(q+p)}|^2 vanishes on a line
  WeylElement sym2 = 2.0 * WeylElement::identity(0.0, 1) - WeylElement::generator(0.0, {Complex(1, 1)}) -
                     WeylElement::generator(0.0, {Complex(-1, -1)});
  CHECK(berezin_positivity_probe(sym2, vs, 0.5) >= -1e-8);
  double min_norm = 1e300;
  for (const auto& v : vs) min_norm = std::min(min_norm, inner_product(v, v).real());
  CHECK(berezin_positivity_probe(WeylElement::identity(0.0, 1), vs, 1.0) == doctest::Approx(min_norm).epsilon(1e-8));
  CHECK(berezin_positivity_probe(WeylElement(0.0, 1), vs, 1.0) == 0.0);
}

TEST_CASE("berezin_errors") {
  auto psi = coherent_state({0.0}, {0.0}, 1.0);
  CHECK_THROWS_AS(berezin_symbol_quad(WeylElement::identity(0.5, 1), psi, psi, 1.0), Error);
  CHECK_THROWS_AS(coherent_state({0.0}, {0.0}, 0.0), Error);
  auto p3 = gaussian(3, 1.0, 1.0);
  CHECK_THROWS_AS(berezin_matrix_element_quad({0, 0, 0}, {0, 0, 0}, p3, p3, 1.0), Error);
  // a coarse grid on a narrow packet fails the doubling check
  auto narrow = gaussian(1, 1.0, 0.02, {3.0}, {40.0});
  try {
    berezin_matrix_element_quad({1.0}, {0.5}, narrow, psi, 1.0, {4, 1e-14});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::QuadratureFailure);
  }
}

}
