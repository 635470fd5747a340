#include "weylq/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weylq/errors.hpp"
#include "weylq/quadrature.hpp"

namespace weylq {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area(int nu) { return 2.0 * std::pow(kPi, nu / 2.0) / std::tgamma(nu / 2.0); }

double coord(const std::vector<double>& v, int i) { return v.empty() ? 0.0 : v[i]; }

void check_dims(const TestFunction& f, const TestFunction& g) {
  if (f.nu != g.nu) fail(ErrorKind::DimensionMismatch, "test functions live in different dimensions");
}

double tag_factor(const GaussianTerm& t, double energy) {
  return t.power == 0 ? 1.0 : std::pow(energy - t.shift, t.power);
}

// int conj(g_j) g_k over R^nu for the bare (untagged, unit amplitude) Gaussians.
Complex bare_overlap(const GaussianTerm& a, const GaussianTerm& b, int nu) {
  const double sa = a.sigma * a.sigma, sb = b.sigma * b.sigma;
  const double A = 1.0 / sa + 1.0 / sb;
  double re = 0.0, im = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double dc = coord(a.center, i) - coord(b.center, i);
    const double dw = coord(b.wave, i) - coord(a.wave, i);
    re += -dc * dc / (2.0 * (sa + sb)) - dw * dw / (2.0 * A);
    im += (coord(a.center, i) / sa + coord(b.center, i) / sb) * dw / A;
  }
  return std::pow(2.0 * kPi / A, nu / 2.0) * std::exp(Complex(re, im));
}

// Angular average of e^{zeta u.e} over the unit sphere in R^nu, times e^{-|Re zeta|}.
Complex angular_average(Complex zeta, int nu) {
  const double B = std::abs(zeta.real());
  if (nu == 1) return 0.5 * (std::exp(zeta - B) + std::exp(-zeta - B));
  if (nu == 3) {
    if (std::abs(zeta) < 1e-8) return std::exp(-B) * (1.0 + zeta * zeta / 6.0);
    if (B < 30.0) return std::sinh(zeta) / zeta * std::exp(-B);
    return (std::exp(zeta - B) - std::exp(-zeta - B)) / (2.0 * zeta);
  }
  // c_nu int_0^pi e^{zeta cos t} sin^{nu-2} t dt
  const double c = std::tgamma(nu / 2.0) / (std::sqrt(kPi) * std::tgamma((nu - 1) / 2.0));
  const int n = std::min(2048, 32 + 16 * static_cast<int>(std::ceil(std::abs(zeta) / 8.0)));
  const auto& rule = quad::gauss_legendre(n);
  Complex s = 0.0;
  for (int q = 0; q < n; ++q) {
    const double t = 0.5 * kPi * (rule.nodes[q] + 1.0);
    s += rule.weights[q] * std::exp(zeta * std::cos(t) - B) * std::pow(std::sin(t), nu - 2);
  }
  return c * 0.5 * kPi * s;
}

// Radial quadrature of one term pair against m(E).
Complex radial_pair(const GaussianTerm& a, const GaussianTerm& b, int nu,
                    const std::function<double(double)>& m, double rel_tol) {
  const double sa = a.sigma * a.sigma, sb = b.sigma * b.sigma;
  const double s = 0.5 * (sa + sb);
  Complex zz = 0.0;
  Complex kappa = 0.0;
  for (int i = 0; i < nu; ++i) {
    const Complex v(sa * coord(a.wave, i) + sb * coord(b.wave, i),
                    coord(a.center, i) - coord(b.center, i));
    zz += v * v;
    kappa += Complex(0.0, -coord(a.wave, i) * coord(a.center, i) +
                              coord(b.wave, i) * coord(b.center, i));
    kappa -= 0.5 * (sa * coord(a.wave, i) * coord(a.wave, i) +
                    sb * coord(b.wave, i) * coord(b.wave, i));
  }
  const Complex z = std::sqrt(zz);
  const double bz = std::abs(z.real());
  const double rstar = bz / (2.0 * s);
  // log of the envelope peak
  const double log_peak = kappa.real() + bz * bz / (4.0 * s);
  const Complex pref = std::conj(a.amp) * b.amp * std::pow(a.sigma * b.sigma, nu) *
                       sphere_area(nu) * std::exp(Complex(log_peak, kappa.imag()));
  auto integrand = [&](double r) -> Complex {
    const double d = r - rstar;
    const double env = std::exp(-s * d * d);
    if (env == 0.0) return 0.0;
    const double e = 0.5 * r * r;
    return std::pow(r, nu - 1) * m(e) * env * angular_average(r * z, nu);
  };
  const double width = 9.5 / std::sqrt(s);
  const double rmax = rstar + width + 2.0 / std::sqrt(s);
  Complex total = quad::integrate_complex(integrand, rstar, rmax, rel_tol);
  // the inner piece only needs to be accurate relative to the whole
  if (rstar > 0.0)
    total += quad::integrate_complex(integrand, 0.0, rstar, rel_tol, rel_tol * std::abs(total));
  return pref * total;
}

Complex pair_form(const GaussianTerm& a, const GaussianTerm& b, int nu, const SpectralMultiplier& m,
                  double rel_tol) {
  if (!m.fn) {
    int P = m.power;
    bool aligned = true;
    for (const GaussianTerm* t : {&a, &b}) {
      if (t->power == 0) continue;
      if (std::abs(t->shift - m.shift) > 1e-14 * (1.0 + std::abs(m.shift))) {
        aligned = false;
      } else {
        P += t->power;
      }
    }
    if (aligned) {
      if (P == 0) return std::conj(a.amp) * b.amp * bare_overlap(a, b, nu);
      const double shift = m.shift;
      return radial_pair(a, b, nu, [=](double e) { return std::pow(e - shift, P); }, rel_tol);
    }
    return radial_pair(
        a, b, nu,
        [&](double e) {
          return std::pow(e - m.shift, m.power) * tag_factor(a, e) * tag_factor(b, e);
        },
        rel_tol);
  }
  return radial_pair(
      a, b, nu, [&](double e) { return m.fn(e) * tag_factor(a, e) * tag_factor(b, e); }, rel_tol);
}

// GL nodes mapped onto [lo, hi].
struct Mapped {
  std::vector<double> x, w;
};

Mapped map_rule(int m, double lo, double hi) {
  const auto& r = quad::gauss_legendre(m);
  Mapped out;
  out.x.resize(m);
  out.w.resize(m);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  for (int q = 0; q < m; ++q) {
    out.x[q] = c + h * r.nodes[q];
    out.w[q] = h * r.weights[q];
  }
  return out;
}

Complex bare_axis(const GaussianTerm& t, int i, double x) {
  const double d = x - coord(t.center, i);
  return std::exp(Complex(-d * d / (2.0 * t.sigma * t.sigma), coord(t.wave, i) * x));
}

// Overlaps of one axis of a bare term with L^{-1/2} sin(pi n (x-L)/(2L)), n in [n_lo, n_hi].
std::vector<Complex> axis_overlaps(const GaussianTerm& t, int i, double L, int n_lo, int n_hi) {
  const double c = coord(t.center, i);
  const double lo = std::max(-L, c - 12.0 * t.sigma);
  const double hi = std::min(L, c + 12.0 * t.sigma);
  std::vector<Complex> out(std::max(0, n_hi - n_lo + 1), 0.0);
  if (!(hi > lo) || out.empty()) return out;
  const double D = hi - lo;
  const double kmax = kPi * n_hi / (2.0 * L) + std::abs(coord(t.wave, i));
  int m = 24 + static_cast<int>(std::ceil(0.6 * kmax * D + 2.0 * D / t.sigma));
  const double norm = 1.0 / std::sqrt(L);
  auto compute = [&](int nodes) {
    const Mapped rule = map_rule(nodes, lo, hi);
    std::vector<Complex> v(out.size(), 0.0);
    for (int q = 0; q < nodes; ++q) {
      const Complex g = rule.w[q] * norm * bare_axis(t, i, rule.x[q]);
      const double theta = kPi * (rule.x[q] - L) / (2.0 * L);
      for (int n = n_lo; n <= n_hi; ++n) v[n - n_lo] += g * std::sin(n * theta);
    }
    return v;
  };
  std::vector<Complex> prev = compute(m);
  for (int attempt = 0; attempt < 8; ++attempt) {
    m *= 2;
    std::vector<Complex> next = compute(m);
    double diff = 0.0;
    for (std::size_t k = 0; k < next.size(); ++k) diff = std::max(diff, std::abs(next[k] - prev[k]));
    if (diff < 1e-12) return next;
    prev = std::move(next);
  }
  fail(ErrorKind::QuadratureFailure, "box overlap did not converge under node doubling");
}

// int_{-L}^{L} conj(g_a) g_b along axis i.
Complex axis_full(const GaussianTerm& a, const GaussianTerm& b, int i, double L) {
  const double lo = std::max({-L, coord(a.center, i) - 12.0 * a.sigma, coord(b.center, i) - 12.0 * b.sigma});
  const double hi = std::min({L, coord(a.center, i) + 12.0 * a.sigma, coord(b.center, i) + 12.0 * b.sigma});
  if (!(hi > lo)) return 0.0;
  const double D = hi - lo;
  const double k = std::abs(coord(a.wave, i) - coord(b.wave, i));
  int m = 24 + static_cast<int>(std::ceil(0.6 * k * D + 2.0 * D / std::min(a.sigma, b.sigma)));
  auto compute = [&](int nodes) {
    const Mapped rule = map_rule(nodes, lo, hi);
    Complex s = 0.0;
    for (int q = 0; q < nodes; ++q)
      s += rule.w[q] * std::conj(bare_axis(a, i, rule.x[q])) * bare_axis(b, i, rule.x[q]);
    return s;
  };
  Complex prev = compute(m);
  for (int attempt = 0; attempt < 8; ++attempt) {
    m *= 2;
    const Complex next = compute(m);
    if (std::abs(next - prev) < 1e-13) return next;
    prev = next;
  }
  fail(ErrorKind::QuadratureFailure, "box norm integral did not converge under node doubling");
}

}  // namespace

Complex gaussian_overlap_1d(double c1, double s1, double w1, double c2, double s2, double w2) {
  const double sa = s1 * s1, sb = s2 * s2;
  const double A = 1.0 / sa + 1.0 / sb;
  const double dc = c1 - c2, dw = w2 - w1;
  const double re = -dc * dc / (2.0 * (sa + sb)) - dw * dw / (2.0 * A);
  const double im = (c1 / sa + c2 / sb) * dw / A;
  return std::sqrt(2.0 * kPi / A) * std::exp(Complex(re, im));
}

bool TestFunction::tagged() const {
  return std::any_of(terms.begin(), terms.end(), [](const GaussianTerm& t) { return t.power != 0; });
}

void TestFunction::validate() const {
  if (nu < 1) fail(ErrorKind::InvalidArgument, "test function dimension must be positive");
  for (const auto& t : terms) {
    if (!(t.sigma > 0)) fail(ErrorKind::InvalidArgument, "Gaussian width must be positive");
    if (!t.center.empty() && static_cast<int>(t.center.size()) != nu)
      fail(ErrorKind::DimensionMismatch, "center has the wrong dimension");
    if (!t.wave.empty() && static_cast<int>(t.wave.size()) != nu)
      fail(ErrorKind::DimensionMismatch, "wave vector has the wrong dimension");
    if (t.power < 0) fail(ErrorKind::InvalidArgument, "generator power must be nonnegative");
  }
}

TestFunction gaussian(int nu, Complex amp, double sigma, std::vector<double> center,
                      std::vector<double> wave) {
  TestFunction f(nu);
  GaussianTerm t;
  t.amp = amp;
  t.sigma = sigma;
  t.center = center.empty() ? std::vector<double>(nu, 0.0) : std::move(center);
  t.wave = wave.empty() ? std::vector<double>(nu, 0.0) : std::move(wave);
  f.terms.push_back(std::move(t));
  f.validate();
  return f;
}

TestFunction operator+(TestFunction a, const TestFunction& b) {
  check_dims(a, b);
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

TestFunction operator-(TestFunction a, const TestFunction& b) { return std::move(a) + Complex(-1.0) * b; }

TestFunction operator*(Complex c, TestFunction a) {
  for (auto& t : a.terms) t.amp *= c;
  return a;
}

TestFunction apply_generator(const TestFunction& f, double shift, Complex factor) {
  TestFunction out = f;
  for (auto& t : out.terms) {
    if (t.power != 0 && t.shift != shift)
      fail(ErrorKind::DomainViolation, "generator tags with different shifts cannot be stacked");
    t.power += 1;
    t.shift = shift;
    t.amp *= factor;
  }
  return out;
}

Complex evaluate(const TestFunction& f, const std::vector<double>& x) {
  if (f.tagged()) fail(ErrorKind::DomainViolation, "pointwise values of generator-tagged functions are not available");
  Complex s = 0.0;
  for (const auto& t : f.terms) {
    Complex v = t.amp;
    for (int i = 0; i < f.nu; ++i) v *= bare_axis(t, i, x[i]);
    s += v;
  }
  return s;
}

Complex fourier_transform(const TestFunction& f, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != f.nu) fail(ErrorKind::DimensionMismatch, "momentum has the wrong dimension");
  double e = 0.0;
  for (double x : p) e += 0.5 * x * x;
  Complex s = 0.0;
  for (const auto& t : f.terms) {
    double re = 0.0, im = 0.0;
    for (int i = 0; i < f.nu; ++i) {
      const double q = p[i] - coord(t.wave, i);
      re -= 0.5 * t.sigma * t.sigma * q * q;
      im -= q * coord(t.center, i);
    }
    s += t.amp * std::pow(2.0 * kPi * t.sigma * t.sigma, f.nu / 2.0) * std::exp(Complex(re, im)) *
         tag_factor(t, e);
  }
  return s;
}

Complex spectral_form(const TestFunction& f, const TestFunction& g, const SpectralMultiplier& m,
                      double rel_tol) {
  check_dims(f, g);
  Complex s = 0.0;
  for (const auto& a : f.terms)
    for (const auto& b : g.terms) s += pair_form(a, b, f.nu, m, rel_tol);
  return s;
}

Complex inner_product(const TestFunction& f, const TestFunction& g) {
  return spectral_form(f, g, SpectralMultiplier{});
}

Complex space_integral(const TestFunction& f) { return fourier_transform(f, std::vector<double>(f.nu, 0.0)); }

double inv_ham_quadratic_form(const TestFunction& f) {
  if (f.nu < 3) fail(ErrorKind::DimensionTooLow, "<f, H^{-1} f> needs nu >= 3");
  SpectralMultiplier m;
  m.power = -1;
  return spectral_form(f, f, m, 1e-11).real();
}

std::vector<TestFunction> orthonormalize(const std::vector<TestFunction>& fs) {
  std::vector<TestFunction> out;
  for (const auto& f : fs) {
    TestFunction v = f;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& e : out) v = v - inner_product(e, v) * e;
    }
    const double n2 = inner_product(v, v).real();
    if (!(n2 > 1e-20)) fail(ErrorKind::InvalidArgument, "functions are linearly dependent");
    out.push_back(Complex(1.0 / std::sqrt(n2)) * v);
  }
  return out;
}

Complex box_overlap(const TestFunction& f, const MultiIndex& n, double L) {
  if (static_cast<int>(n.size()) != f.nu) fail(ErrorKind::InvalidIndex, "multi-index has the wrong dimension");
  const double e = eigenvalue(n, L);
  Complex s = 0.0;
  for (const auto& t : f.terms) {
    Complex v = t.amp * tag_factor(t, e);
    for (int i = 0; i < f.nu; ++i) v *= axis_overlaps(t, i, L, n[i], n[i])[0];
    s += v;
  }
  return s;
}

double restricted_norm_sq(const TestFunction& f, double L) {
  if (f.tagged()) fail(ErrorKind::DomainViolation, "restricted norm of a generator-tagged function");
  Complex s = 0.0;
  for (const auto& a : f.terms) {
    for (const auto& b : f.terms) {
      Complex v = std::conj(a.amp) * b.amp;
      for (int i = 0; i < f.nu; ++i) v *= axis_full(a, b, i, L);
      s += v;
    }
  }
  return s.real();
}

int BoxOverlapTable::suggested_cutoff(const TestFunction& f, double L) {
  double K = 0.0;
  for (const auto& t : f.terms) {
    double w = 0.0;
    for (int i = 0; i < f.nu; ++i) w = std::max(w, std::abs(coord(t.wave, i)));
    K = std::max(K, w + std::sqrt(45.0) / t.sigma);
  }
  return std::max(4, static_cast<int>(std::ceil(2.0 * L * K / kPi)) + 1);
}

BoxOverlapTable::BoxOverlapTable(const TestFunction& f, double L, int cutoff)
    : nu_(f.nu), L_(L), cutoff_(cutoff > 0 ? cutoff : suggested_cutoff(f, L)) {
  f.validate();
  if (f.tagged()) fail(ErrorKind::DomainViolation, "box projection of a generator-tagged function");
  if (!(L > 0)) fail(ErrorKind::InvalidArgument, "box half-side must be positive");
  const std::size_t J = f.terms.size();
  amps_.resize(J);
  axis_.resize(J);
  for (std::size_t j = 0; j < J; ++j) {
    amps_[j] = f.terms[j].amp;
    axis_[j].resize(nu_);
    for (int i = 0; i < nu_; ++i) axis_[j][i] = axis_overlaps(f.terms[j], i, L, 1, cutoff_);
  }
  // Parseval: full - partial per axis, complement over the cube expanded
  // without cancellation.
  double tail = 0.0, restricted = 0.0, scale = 0.0;
  for (std::size_t a = 0; a < J; ++a) {
    for (std::size_t b = 0; b < J; ++b) {
      std::vector<Complex> full(nu_), part(nu_), diff(nu_);
      double mag = std::abs(amps_[a]) * std::abs(amps_[b]);
      for (int i = 0; i < nu_; ++i) {
        full[i] = axis_full(f.terms[a], f.terms[b], i, L);
        Complex p = 0.0;
        for (int n = 0; n < cutoff_; ++n) p += std::conj(axis_[a][i][n]) * axis_[b][i][n];
        part[i] = p;
        diff[i] = full[i] - p;
        mag *= std::max(std::abs(full[i]), std::abs(p));
      }
      // sum over nonempty subsets S of prod_{S} diff prod_{not S} part
      Complex comp = 0.0;
      for (unsigned mask = 1; mask < (1u << nu_); ++mask) {
        Complex v = 1.0;
        for (int i = 0; i < nu_; ++i) v *= (mask >> i & 1u) ? diff[i] : part[i];
        comp += v;
      }
      Complex fullprod = 1.0;
      for (int i = 0; i < nu_; ++i) fullprod *= full[i];
      const Complex c = std::conj(amps_[a]) * amps_[b];
      tail += (c * comp).real();
      restricted += (c * fullprod).real();
      scale += mag;
    }
  }
  restricted_ = restricted;
  tail_ = std::max(0.0, tail) + 1e-13 * nu_ * scale;
}

Complex BoxOverlapTable::coefficient(const MultiIndex& n) const {
  Complex s = 0.0;
  for (std::size_t j = 0; j < amps_.size(); ++j) {
    Complex v = amps_[j];
    for (int i = 0; i < nu_; ++i) {
      const int k = n[i];
      if (k < 1 || k > cutoff_) fail(ErrorKind::InvalidIndex, "mode outside the overlap table");
      v *= axis_[j][i][k - 1];
    }
    s += v;
  }
  return s;
}

}  // namespace weylq
