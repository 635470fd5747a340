#include "weylq/berezin.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "weylq/errors.hpp"
#include "weylq/quadrature.hpp"

namespace weylq {

namespace {

constexpr double kPi = std::numbers::pi;

double coord(const std::vector<double>& v, int i) { return v.empty() ? 0.0 : v[i]; }

void check_h(double h) {
  if (!(h > 0)) fail(ErrorKind::ZeroHbar, "Schrodinger representation needs h > 0");
}

void check_vec(const std::vector<double>& v, int l, const char* what) {
  if (static_cast<int>(v.size()) != l)
    fail(ErrorKind::DimensionMismatch, std::string(what) + " has the wrong dimension");
}

// One axis of the phase-space integral for one term pair and one symbol term.
Complex axis_integral(const GaussianTerm& a, const GaussianTerm& b, int i, double lam, double mu,
                      double h, int nodes) {
  const double ca = coord(a.center, i), wa = coord(a.wave, i), sa = a.sigma * a.sigma;
  const double cb = coord(b.center, i), wb = coord(b.wave, i), sb = b.sigma * b.sigma;
  // Gaussian envelope of |<a, chi_{q,p}>| |<chi_{q,p}, b>|
  const double Aa = 1.0 / sa + 1.0 / h, Ab = 1.0 / sb + 1.0 / h;
  const double Pq = 1.0 / (sa + h) + 1.0 / (sb + h);
  const double mq = (ca / (sa + h) + cb / (sb + h)) / Pq;
  const double Pp = 1.0 / (h * h * Aa) + 1.0 / (h * h * Ab);
  const double mp = (h * wa / (h * h * Aa) + h * wb / (h * h * Ab)) / Pp;
  const double dq = std::sqrt(2.0 / Pq), dp = std::sqrt(2.0 / Pp);
  const auto& rule = quad::gauss_hermite(nodes);
  const double sh = std::sqrt(h);
  Complex sum = 0.0;
  for (int u = 0; u < nodes; ++u) {
    const double q = mq + dq * rule.nodes[u];
    Complex row = 0.0;
    for (int v = 0; v < nodes; ++v) {
      const double p = mp + dp * rule.nodes[v];
      const Complex o1 = gaussian_overlap_1d(ca, a.sigma, wa, q, sh, p / h);
      const Complex o2 = gaussian_overlap_1d(q, sh, p / h, cb, b.sigma, wb);
      row += rule.weights[v] * std::polar(1.0, mu * p) * o1 * o2;
    }
    sum += rule.weights[u] * std::polar(1.0, lam * q) * row;
  }
  return sum * dq * dp / (2.0 * kPi * h) / std::sqrt(h * kPi);
}

Complex symbol_quad(const WeylElement& symbol, const TestFunction& phi, const TestFunction& psi,
                    double h, int nodes) {
  const int l = phi.nu;
  Complex total = 0.0;
  for (const auto& t : symbol.terms()) {
    Complex pair_sum = 0.0;
    for (const auto& a : phi.terms) {
      for (const auto& b : psi.terms) {
        Complex v = std::conj(a.amp) * b.amp;
        for (int i = 0; i < l; ++i)
          v *= axis_integral(a, b, i, t.label[i].real(), t.label[i].imag(), h, nodes);
        pair_sum += v;
      }
    }
    total += t.coeff * pair_sum;
  }
  return total;
}

void check_wavefunctions(const TestFunction& phi, const TestFunction& psi) {
  if (phi.nu != psi.nu) fail(ErrorKind::DimensionMismatch, "wavefunctions live in different dimensions");
  if (phi.tagged() || psi.tagged()) fail(ErrorKind::DomainViolation, "wavefunctions must be plain Gaussian mixtures");
  phi.validate();
  psi.validate();
}

}  // namespace

TestFunction coherent_state(const std::vector<double>& q, const std::vector<double>& p, double h) {
  check_h(h);
  const int l = static_cast<int>(q.size());
  check_vec(p, l, "momentum");
  double qp = 0.0;
  std::vector<double> wave(l);
  for (int i = 0; i < l; ++i) {
    qp += q[i] * p[i];
    wave[i] = p[i] / h;
  }
  const Complex amp = std::pow(h * kPi, -l / 4.0) * std::polar(1.0, -qp / (2.0 * h));
  return gaussian(l, amp, std::sqrt(h), q, wave);
}

TestFunction apply_weyl_operator(const std::vector<double>& lambda, const std::vector<double>& mu,
                                 const TestFunction& psi, double h) {
  check_h(h);
  check_vec(lambda, psi.nu, "lambda");
  check_vec(mu, psi.nu, "mu");
  if (psi.tagged()) fail(ErrorKind::DomainViolation, "wavefunctions must be plain Gaussian mixtures");
  double lm = 0.0;
  for (int i = 0; i < psi.nu; ++i) lm += lambda[i] * mu[i];
  TestFunction out = psi;
  for (auto& t : out.terms) {
    if (t.center.empty()) t.center.assign(psi.nu, 0.0);
    if (t.wave.empty()) t.wave.assign(psi.nu, 0.0);
    double wm = 0.0;
    for (int i = 0; i < psi.nu; ++i) {
      wm += t.wave[i] * mu[i];
      t.center[i] -= h * mu[i];
      t.wave[i] += lambda[i];
    }
    t.amp *= std::polar(1.0, h * lm / 2.0 + h * wm);
  }
  return out;
}

Complex schrodinger_matrix_element(const std::vector<double>& lambda, const std::vector<double>& mu,
                                   const TestFunction& phi, const TestFunction& psi, double h) {
  check_wavefunctions(phi, psi);
  return inner_product(phi, apply_weyl_operator(lambda, mu, psi, h));
}

Complex berezin_closed_form(const std::vector<double>& lambda, const std::vector<double>& mu,
                            const TestFunction& phi, const TestFunction& psi, double h) {
  double n2 = 0.0;
  for (double x : lambda) n2 += x * x;
  for (double x : mu) n2 += x * x;
  return std::exp(-h * n2 / 4.0) * schrodinger_matrix_element(lambda, mu, phi, psi, h);
}

Complex berezin_symbol_quad(const WeylElement& symbol, const TestFunction& phi,
                            const TestFunction& psi, double h, const PhaseSpaceGrid& grid) {
  check_h(h);
  check_wavefunctions(phi, psi);
  if (symbol.hbar() != 0.0) fail(ErrorKind::NonzeroHbar, "Berezin symbols are classical elements");
  if (static_cast<int>(symbol.dim()) != phi.nu) fail(ErrorKind::DimensionMismatch, "symbol and wavefunction dimensions differ");
  if (phi.nu > 2) fail(ErrorKind::InvalidArgument, "phase-space quadrature is limited to l <= 2");
  if (grid.nodes < 2) fail(ErrorKind::InvalidArgument, "grid needs at least two nodes");
  const Complex coarse = symbol_quad(symbol, phi, psi, h, grid.nodes);
  const Complex fine = symbol_quad(symbol, phi, psi, h, 2 * grid.nodes);
  const double scale = std::sqrt(inner_product(phi, phi).real() * inner_product(psi, psi).real()) *
                       std::max(norm_bounds(symbol).upper, 1e-300);
  if (std::abs(fine - coarse) > grid.tolerance * scale) {
    std::ostringstream os;
    os << "phase-space quadrature changed by " << std::abs(fine - coarse) << " under node doubling";
    fail(ErrorKind::QuadratureFailure, os.str());
  }
  return coarse;
}

Complex berezin_matrix_element_quad(const std::vector<double>& lambda, const std::vector<double>& mu,
                                    const TestFunction& phi, const TestFunction& psi, double h,
                                    const PhaseSpaceGrid& grid) {
  check_vec(lambda, phi.nu, "lambda");
  check_vec(mu, phi.nu, "mu");
  Label z(phi.nu);
  for (int i = 0; i < phi.nu; ++i) z[i] = Complex(lambda[i], mu[i]);
  return berezin_symbol_quad(WeylElement::generator(0.0, z), phi, psi, h, grid);
}

double berezin_positivity_probe(const WeylElement& symbol, const std::vector<TestFunction>& vectors,
                                double h, const PhaseSpaceGrid& grid) {
  if (vectors.empty()) fail(ErrorKind::InvalidArgument, "positivity probe needs at least one vector");
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& v : vectors) lowest = std::min(lowest, berezin_symbol_quad(symbol, v, v, h, grid).real());
  return lowest;
}

}  // namespace weylq
