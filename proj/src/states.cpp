#include "weylq/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "weylq/errors.hpp"
#include "weylq/quadrature.hpp"

namespace weylq {

namespace {

constexpr double kPi = std::numbers::pi;

double sphere_area(int nu) { return 2.0 * std::pow(kPi, nu / 2.0) / std::tgamma(nu / 2.0); }

// Weight of a mode at energy e in B.
double box_weight(const StateSpec& s, double e) {
  const double gap = e - s.mu;
  if (s.quantum()) return 0.5 * s.h / std::tanh(0.5 * s.beta * s.h * gap);
  return 1.0 / (s.beta * gap);
}

void check_modes(const ModeCoefficients& c, int nu) {
  for (const auto& [n, v] : c) {
    if (static_cast<int>(n.size()) != nu) fail(ErrorKind::InvalidIndex, "multi-index has the wrong dimension");
    for (int k : n)
      if (k < 1) fail(ErrorKind::InvalidIndex, "multi-index components must be >= 1");
  }
}

double mode_form(const StateSpec& s, const ModeCoefficients& x, const ModeCoefficients& y) {
  check_modes(x, s.nu);
  check_modes(y, s.nu);
  double sum = 0.0;
  for (const auto& [n, cx] : x) {
    auto it = y.find(n);
    if (it == y.end()) continue;
    sum += (std::conj(cx) * it->second).real() * box_weight(s, eigenvalue(n, s.box->L));
  }
  return sum;
}

struct FormValue {
  double value = 0.0;
  double tail = 0.0;
};

// B(x, y) for box kinds with test functions, streamed over the cube.
FormValue box_function_form(const StateSpec& s, const TestFunction& x, const TestFunction& y,
                            bool same) {
  const BoxSpectrum& box = *s.box;
  if (x.nu != s.nu || y.nu != s.nu) fail(ErrorKind::DimensionMismatch, "test function dimension differs from the state");
  const bool fixed = box.cutoff > 0;
  int N = fixed ? box.cutoff
                : std::max(BoxOverlapTable::suggested_cutoff(x, box.L),
                           BoxOverlapTable::suggested_cutoff(y, box.L));
  const double a = axis_energy_scale(box.L);
  constexpr int kMaxCutoff = 2048;
  double prev_tail = 0.0;
  for (;;) {
    BoxOverlapTable tx(x, box.L, N);
    std::optional<BoxOverlapTable> ty;
    if (!same) ty.emplace(y, box.L, N);
    const BoxOverlapTable& ry = same ? tx : *ty;
    const double e_tail = a * (double(N + 1) * (N + 1) + (s.nu - 1));
    const double tail = box_weight(s, e_tail) * std::sqrt(tx.tail_norm_sq() * ry.tail_norm_sq());
    if (tail <= s.tail_tol) {
      double sum = 0.0, comp = 0.0;
      for_each_mode(s.nu, N, [&](const MultiIndex& n) {
        const Complex cx = tx.coefficient(n);
        const Complex cy = same ? cx : ry.coefficient(n);
        const double v = (std::conj(cx) * cy).real() * box_weight(s, eigenvalue(n, box.L));
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
      });
      return {sum + comp, tail};
    }
    // algebraic decay: give up once the observed rate cannot reach the
    // tolerance before the cap
    bool hopeless = fixed || N >= kMaxCutoff;
    if (!hopeless && prev_tail > tail && tail > 0.0) {
      const double steps = std::log(tail / s.tail_tol) / std::log(prev_tail / tail);
      hopeless = double(N) * std::exp2(std::ceil(steps)) > kMaxCutoff;
    }
    prev_tail = tail;
    if (hopeless) {
      std::ostringstream os;
      os << "box mode tail " << tail << " exceeds " << s.tail_tol << " at cutoff " << N;
      fail(ErrorKind::TailToleranceExceeded, os.str());
    }
    N *= 2;
  }
}

const TestFunction& as_function(const StateSpec& s, const StateInput& f) {
  if (!std::holds_alternative<TestFunction>(f))
    fail(ErrorKind::DomainViolation, "continuum states need a test function, not mode coefficients");
  const auto& g = std::get<TestFunction>(f);
  if (g.nu != s.nu) fail(ErrorKind::DimensionMismatch, "test function dimension differs from the state");
  g.validate();
  return g;
}

ModeCoefficients as_modes(const StateSpec& s, const StateInput& f) {
  if (std::holds_alternative<ModeCoefficients>(f)) return std::get<ModeCoefficients>(f);
  const auto& g = std::get<TestFunction>(f);
  if (g.nu != s.nu) fail(ErrorKind::DimensionMismatch, "test function dimension differs from the state");
  return project_modes(g, s.box->L, s.box->cutoff);
}

double condensate_coefficient(const StateSpec& s) {
  if (s.kind == StateKind::QuantumCondensate) {
    const double excess = s.rho_bar - critical_density(s.beta, s.h, s.nu);
    return 0.5 * s.h * std::pow(2.0, s.nu + 1) * std::max(0.0, excess);
  }
  return std::pow(2.0, s.nu) * s.alpha;
}

FormValue continuum_form(const StateSpec& s, const TestFunction& x, const TestFunction& y) {
  Complex v = 0.0;
  if (s.quantum()) {
    const double mu = s.kind == StateKind::QuantumCondensate ? 0.0 : s.mu;
    const double bh = s.beta * s.h;
    SpectralMultiplier m;
    m.fn = [bh, mu](double e) { return 1.0 / std::tanh(0.5 * bh * (e - mu)); };
    v = 0.5 * s.h * spectral_form(x, y, m);
  } else {
    SpectralMultiplier m;
    m.shift = s.kind == StateKind::ClassicalInfVol ? s.mu : 0.0;
    m.power = -1;
    v = spectral_form(x, y, m) / s.beta;
  }
  double total = v.real();
  if (s.condensate()) {
    const Complex ix = space_integral(x), iy = space_integral(y);
    const double c = (std::conj(ix) * iy).real();
    if (std::isinf(s.alpha) && s.kind == StateKind::ClassicalCondensate) {
      total += c == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      total += condensate_coefficient(s) * c;
    }
  }
  return {total, 0.0};
}

FormValue form(const StateSpec& s, const StateInput& x, const StateInput& y, bool same) {
  if (s.box_kind()) {
    if (std::holds_alternative<TestFunction>(x) && std::holds_alternative<TestFunction>(y))
      return box_function_form(s, std::get<TestFunction>(x), std::get<TestFunction>(y), same);
    return {mode_form(s, as_modes(s, x), as_modes(s, y)), 0.0};
  }
  return continuum_form(s, as_function(s, x), as_function(s, y));
}

double density_quadrature(double bh, double mu, int nu) {
  auto integrand = [=](double r) {
    if (r == 0.0) return 0.0;
    return std::pow(r, nu - 1) / std::expm1(bh * (0.5 * r * r - mu));
  };
  const double rmax = std::sqrt(2.0 * (90.0 + nu * 4.0) / bh);
  const double v = quad::integrate(integrand, 0.0, rmax, 1e-12);
  return sphere_area(nu) / std::pow(2.0 * kPi, nu) * v;
}

}  // namespace

const char* to_string(StateKind kind) {
  switch (kind) {
    case StateKind::QuantumBoxGibbs: return "QuantumBoxGibbs";
    case StateKind::QuantumInfVol: return "QuantumInfVol";
    case StateKind::QuantumCondensate: return "QuantumCondensate";
    case StateKind::ClassicalBoxGibbs: return "ClassicalBoxGibbs";
    case StateKind::ClassicalInfVol: return "ClassicalInfVol";
    case StateKind::ClassicalCondensate: return "ClassicalCondensate";
  }
  return "Unknown";
}

StateKind state_kind_from_string(const std::string& name) {
  for (StateKind k : {StateKind::QuantumBoxGibbs, StateKind::QuantumInfVol, StateKind::QuantumCondensate,
                      StateKind::ClassicalBoxGibbs, StateKind::ClassicalInfVol,
                      StateKind::ClassicalCondensate}) {
    if (name == to_string(k)) return k;
  }
  fail(ErrorKind::InvalidSpec, "unknown state kind '" + name + "'");
}

bool StateSpec::quantum() const {
  return kind == StateKind::QuantumBoxGibbs || kind == StateKind::QuantumInfVol ||
         kind == StateKind::QuantumCondensate;
}

bool StateSpec::box_kind() const {
  return kind == StateKind::QuantumBoxGibbs || kind == StateKind::ClassicalBoxGibbs;
}

bool StateSpec::condensate() const {
  return kind == StateKind::QuantumCondensate || kind == StateKind::ClassicalCondensate;
}

void validate(const StateSpec& s) {
  if (!(s.beta > 0) || !std::isfinite(s.beta)) fail(ErrorKind::InvalidSpec, "beta must be positive");
  if (s.nu < 1) fail(ErrorKind::InvalidSpec, "nu must be positive");
  if (!(s.tail_tol > 0)) fail(ErrorKind::InvalidSpec, "tail tolerance must be positive");
  if (s.quantum()) {
    if (!(s.h > 0)) fail(ErrorKind::InvalidSpec, "quantum states need h > 0");
  } else if (s.h != 0.0) {
    fail(ErrorKind::InvalidSpec, "classical states need h = 0");
  }
  if (s.box_kind()) {
    if (!s.box) fail(ErrorKind::InvalidSpec, "box states need a box");
    if (s.box->nu != s.nu) fail(ErrorKind::InvalidSpec, "box dimension differs from nu");
    if (!(s.box->L > 0)) fail(ErrorKind::InvalidSpec, "box half-side must be positive");
    if (s.box->cutoff < 0) fail(ErrorKind::InvalidSpec, "cutoff must be nonnegative");
    if (!(s.mu < s.box->ground_energy()))
      fail(ErrorKind::ChemicalPotentialOutOfRange, "box states need mu < E_0(L)");
  }
  switch (s.kind) {
    case StateKind::QuantumInfVol:
    case StateKind::ClassicalInfVol:
      if (s.mu > 0) fail(ErrorKind::ChemicalPotentialOutOfRange, "infinite-volume states need mu <= 0");
      if (s.mu == 0 && s.nu < 3)
        fail(ErrorKind::ChemicalPotentialOutOfRange, "mu = 0 needs nu >= 3");
      break;
    case StateKind::QuantumCondensate:
      if (s.nu < 3) fail(ErrorKind::InvalidSpec, "condensate states need nu >= 3");
      if (!(s.rho_bar >= critical_density(s.beta, s.h, s.nu) * (1.0 - 1e-12)))
        fail(ErrorKind::InvalidSpec, "rho_bar is below the critical density");
      break;
    case StateKind::ClassicalCondensate:
      if (s.nu < 3) fail(ErrorKind::InvalidSpec, "condensate states need nu >= 3");
      if (!(s.alpha >= 0)) fail(ErrorKind::InvalidSpec, "alpha must be nonnegative");
      break;
    default:
      break;
  }
}

StateValue weyl_expectation(const StateSpec& spec, const StateInput& f) {
  validate(spec);
  const FormValue q = form(spec, f, f, true);
  StateValue out;
  out.tail_bound = 0.5 * q.tail;
  if (std::isinf(q.value)) {
    out.value = 0.0;
    out.degenerate = true;
    return out;
  }
  out.value = std::exp(-0.5 * q.value);
  return out;
}

double state_bilinear(const StateSpec& spec, const StateInput& x, const StateInput& y) {
  validate(spec);
  if (std::isinf(spec.alpha) && spec.kind == StateKind::ClassicalCondensate)
    fail(ErrorKind::InvalidSpec, "the alpha = +inf sentinel has no bilinear form");
  return form(spec, x, y, false).value;
}

Complex field_weyl_expectation(const StateSpec& spec, const StateInput& k, const StateInput& g) {
  validate(spec);
  if (spec.quantum()) fail(ErrorKind::InvalidSpec, "field insertion is implemented for classical states");
  const double b = state_bilinear(spec, g, k);
  return Complex(0.0, b) * weyl_expectation(spec, g).value;
}

Complex two_point(const StateSpec& spec, const ModeCoefficients& f, const ModeCoefficients& g) {
  validate(spec);
  if (spec.kind != StateKind::QuantumBoxGibbs)
    fail(ErrorKind::InvalidSpec, "two-point function needs a quantum box state");
  check_modes(f, spec.nu);
  check_modes(g, spec.nu);
  Complex sum = 0.0;
  for (const auto& [n, cf] : f) {
    auto it = g.find(n);
    if (it == g.end()) continue;
    const double e = eigenvalue(n, spec.box->L);
    const Complex p = std::conj(cf) * it->second;
    const double c = 1.0 / std::tanh(0.5 * spec.beta * spec.h * (e - spec.mu));
    sum += Complex(0.5 * spec.h * p.real() * c, 0.5 * spec.h * p.imag());
  }
  return sum;
}

double quantum_density(const StateSpec& spec) {
  if (!(spec.beta > 0) || !(spec.h > 0)) fail(ErrorKind::InvalidSpec, "density needs beta > 0 and h > 0");
  const double bh = spec.beta * spec.h;
  if (spec.box) {
    const BoxSpectrum& box = *spec.box;
    const double e0 = box.ground_energy();
    if (!(spec.mu < e0)) fail(ErrorKind::ChemicalPotentialOutOfRange, "box density needs mu < E_0(L)");
    // relative tolerance against the ground term, which bounds the sum below
    const double ground = 1.0 / std::expm1(bh * (e0 - spec.mu));
    const double tol = std::min(spec.tail_tol, 1e-13) * ground;
    const Majorant maj = bose_majorant(bh, spec.mu, box.L, box.nu);
    BoxSpectrum b = box;
    if (b.cutoff <= 0) b.cutoff = choose_cutoff(maj, tol, 4, 1 << 14);
    const double a = axis_energy_scale(box.L);
    const ModeSum ms = mode_sum(
        [&](const MultiIndex& n) {
          double q = 0.0;
          for (int k : n) q += double(k) * k;
          return 1.0 / std::expm1(bh * (a * q - spec.mu));
        },
        b, tol, maj);
    return ms.value / box.volume();
  }
  if (spec.mu > 0) fail(ErrorKind::ChemicalPotentialOutOfRange, "infinite-volume density needs mu <= 0");
  if (spec.mu == 0 && spec.nu < 3)
    fail(ErrorKind::ChemicalPotentialOutOfRange, "the density diverges at mu = 0 for nu < 3");
  return density_quadrature(bh, spec.mu, spec.nu);
}

double critical_density(double beta, double h, int nu) {
  if (nu < 3) fail(ErrorKind::DimensionTooLow, "critical density needs nu >= 3");
  if (!(beta > 0) || !(h > 0)) fail(ErrorKind::InvalidArgument, "critical density needs beta, h > 0");
  return density_quadrature(beta * h, 0.0, nu);
}

ModeCoefficients project_modes(const TestFunction& f, double L, int cutoff) {
  BoxOverlapTable t(f, L, cutoff);
  ModeCoefficients out;
  for_each_mode(f.nu, t.cutoff(), [&](const MultiIndex& n) {
    const Complex c = t.coefficient(n);
    if (std::abs(c) > 0.0) out.emplace(n, c);
  });
  return out;
}

ModeCoefficients operator+(ModeCoefficients a, const ModeCoefficients& b) {
  for (const auto& [n, c] : b) a[n] += c;
  return a;
}

ModeCoefficients operator*(Complex c, ModeCoefficients a) {
  for (auto& [n, v] : a) v *= c;
  return a;
}

StateInput add_inputs(const StateInput& a, const StateInput& b) {
  if (a.index() != b.index()) fail(ErrorKind::DomainViolation, "cannot add a test function to mode coefficients");
  if (std::holds_alternative<TestFunction>(a))
    return std::get<TestFunction>(a) + std::get<TestFunction>(b);
  return std::get<ModeCoefficients>(a) + std::get<ModeCoefficients>(b);
}

StateInput scale_input(Complex c, const StateInput& a) {
  if (std::holds_alternative<TestFunction>(a)) return c * std::get<TestFunction>(a);
  return c * std::get<ModeCoefficients>(a);
}

Complex input_inner(const StateSpec& spec, const StateInput& f, const StateInput& g) {
  if (std::holds_alternative<TestFunction>(f) && std::holds_alternative<TestFunction>(g))
    return inner_product(std::get<TestFunction>(f), std::get<TestFunction>(g));
  if (!spec.box) fail(ErrorKind::DomainViolation, "mode coefficients need a box state");
  const ModeCoefficients x = as_modes(spec, f), y = as_modes(spec, g);
  Complex s = 0.0;
  for (const auto& [n, c] : x) {
    auto it = y.find(n);
    if (it != y.end()) s += std::conj(c) * it->second;
  }
  return s;
}

double input_norm_sq(const StateSpec& spec, const StateInput& f) {
  if (std::holds_alternative<TestFunction>(f)) {
    const auto& g = std::get<TestFunction>(f);
    if (spec.box && !g.tagged()) return restricted_norm_sq(g, spec.box->L);
    return inner_product(g, g).real();
  }
  double s = 0.0;
  for (const auto& [n, c] : std::get<ModeCoefficients>(f)) s += std::norm(c);
  return s;
}

void validate_realization(const StateSpec& spec, const Realization& r, std::size_t dim) {
  if (const auto* m = std::get_if<ModeRealization>(&r)) {
    if (!spec.box_kind()) fail(ErrorKind::DomainViolation, "mode realizations need a box state");
    if (m->modes.size() != dim) fail(ErrorKind::DimensionMismatch, "realization size differs from label dimension");
    std::map<MultiIndex, int> seen;
    for (const auto& n : m->modes) {
      check_modes(ModeCoefficients{{n, 1.0}}, spec.nu);
      if (seen[n]++) fail(ErrorKind::DomainViolation, "realization repeats a mode");
    }
    return;
  }
  const auto& basis = std::get<FunctionRealization>(r).basis;
  if (basis.size() != dim) fail(ErrorKind::DimensionMismatch, "realization size differs from label dimension");
  for (std::size_t j = 0; j < dim; ++j) {
    if (basis[j].nu != spec.nu) fail(ErrorKind::DimensionMismatch, "basis function dimension differs from the state");
    if (basis[j].tagged()) fail(ErrorKind::DomainViolation, "basis functions must be plain Gaussian mixtures");
    for (std::size_t k = 0; k <= j; ++k) {
      const Complex g = inner_product(basis[j], basis[k]);
      if (std::abs(g - Complex(j == k ? 1.0 : 0.0)) > 1e-10)
        fail(ErrorKind::DomainViolation, "realization basis is not orthonormal");
    }
  }
}

StateInput realize(const Realization& r, const Label& f) {
  if (const auto* m = std::get_if<ModeRealization>(&r)) {
    ModeCoefficients c;
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k] != Complex(0.0)) c[m->modes[k]] += f[k];
    return c;
  }
  const auto& basis = std::get<FunctionRealization>(r).basis;
  TestFunction out(basis.empty() ? 1 : basis.front().nu);
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] != Complex(0.0)) out = out + f[k] * basis[k];
  return out;
}

Complex state_expectation(const StateSpec& spec, const Realization& r, const WeylElement& a) {
  validate(spec);
  if (a.hbar() != spec.h) fail(ErrorKind::MismatchedHbar, "element and state live at different h");
  validate_realization(spec, r, a.dim());
  Complex s = 0.0;
  for (const auto& t : a.terms()) {
    if (is_zero(t.label)) {
      s += t.coeff;
      continue;
    }
    StateInput in = realize(r, t.label);
    if (spec.box_kind() && std::holds_alternative<TestFunction>(in))
      in = project_modes(std::get<TestFunction>(in), spec.box->L, spec.box->cutoff);
    s += t.coeff * weyl_expectation(spec, in).value;
  }
  return s;
}

}  // namespace weylq
