#include "weylq/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "weylq/errors.hpp"

namespace weylq {

double BoxSpectrum::volume() const { return std::pow(2.0 * L, nu); }
double BoxSpectrum::ground_energy() const { return weylq::ground_energy(L, nu); }

double axis_energy_scale(double L) {
  return std::numbers::pi * std::numbers::pi / (8.0 * L * L);
}

double eigenvalue(const MultiIndex& n, double L) {
  if (!(L > 0)) fail(ErrorKind::InvalidArgument, "box half-side must be positive");
  double s = 0.0;
  for (int k : n) {
    if (k < 1) fail(ErrorKind::InvalidIndex, "multi-index components must be >= 1");
    s += double(k) * k;
  }
  if (n.empty()) fail(ErrorKind::InvalidIndex, "empty multi-index");
  return axis_energy_scale(L) * s;
}

double ground_energy(double L, int nu) { return axis_energy_scale(L) * nu; }

void for_each_mode_in_shell(int nu, int m, const std::function<void(const MultiIndex&)>& fn) {
  if (m < 1 || nu < 1) return;
  MultiIndex n(nu);
  std::vector<int> hi(nu);
  // the first axis attaining the max is `first`
  for (int first = 0; first < nu; ++first) {
    if (m == 1 && first > 0) break;
    for (int i = 0; i < nu; ++i) {
      hi[i] = i < first ? m - 1 : m;
      n[i] = 1;
    }
    n[first] = m;
    bool done = false;
    while (!done) {
      fn(n);
      done = true;
      for (int i = nu - 1; i >= 0; --i) {
        if (i == first) continue;
        if (n[i] < hi[i]) {
          ++n[i];
          done = false;
          break;
        }
        n[i] = 1;
      }
    }
  }
}

void for_each_mode(int nu, int cutoff, const std::function<void(const MultiIndex&)>& fn) {
  for (int m = 1; m <= cutoff; ++m) for_each_mode_in_shell(nu, m, fn);
}

ModeSum mode_sum(const std::function<double(const MultiIndex&)>& weight, const BoxSpectrum& spec,
                 double tail_tol, const Majorant& majorant) {
  if (spec.cutoff < 1) fail(ErrorKind::InvalidSpec, "mode_sum needs a positive cutoff");
  ModeSum r;
  r.tail_bound = majorant(spec.cutoff);
  if (!(r.tail_bound <= tail_tol)) {
    std::ostringstream os;
    os << "tail bound " << r.tail_bound << " exceeds " << tail_tol << " at cutoff " << spec.cutoff;
    fail(ErrorKind::TailToleranceExceeded, os.str());
  }
  // Neumaier summation
  double sum = 0.0, comp = 0.0;
  for_each_mode(spec.nu, spec.cutoff, [&](const MultiIndex& n) {
    const double x = weight(n);
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  });
  r.value = sum + comp;
  return r;
}

int choose_cutoff(const Majorant& majorant, double tail_tol, int start, int max_cutoff) {
  int n = std::max(start, 1);
  while (n <= max_cutoff) {
    if (majorant(n) <= tail_tol) {
      // bisect back down between n/2 and n
      int lo = std::max(start, n / 2), hi = n;
      while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (majorant(mid) <= tail_tol)
          hi = mid;
        else
          lo = mid + 1;
      }
      return hi;
    }
    if (n == max_cutoff) break;
    n = std::min(2 * n, max_cutoff);
  }
  std::ostringstream os;
  os << "no cutoff up to " << max_cutoff << " meets tail tolerance " << tail_tol;
  fail(ErrorKind::TailToleranceExceeded, os.str());
}

TraceResult trace_h_power(double s, const BoxSpectrum& spec) {
  if (!(s > 0)) fail(ErrorKind::InvalidArgument, "trace exponent must be positive");
  if (spec.cutoff < 1) fail(ErrorKind::InvalidSpec, "trace needs a positive cutoff");
  const double a = axis_energy_scale(spec.L);
  double sum = 0.0, comp = 0.0;
  for_each_mode(spec.nu, spec.cutoff, [&](const MultiIndex& n) {
    double q = 0.0;
    for (int k : n) q += double(k) * k;
    const double x = std::pow(a * q, -s);
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  });
  return {sum + comp, 2.0 * s > spec.nu};
}

double complement_power(double S, double T, int nu) {
  double total = 0.0;
  double binom = 1.0;
  for (int k = 1; k <= nu; ++k) {
    binom = binom * (nu - k + 1) / k;
    total += binom * std::pow(T, k) * std::pow(S, nu - k);
  }
  return total;
}

namespace {

// Partial and tail of sum_{n>=1} e^{-c n^2}.
void theta_parts(double c, int N, double* partial, double* tail) {
  double s = 0.0;
  for (int n = 1; n <= N; ++n) s += std::exp(-c * double(n) * n);
  *partial = s;
  const double first = std::exp(-c * double(N + 1) * (N + 1));
  const double ratio = std::exp(-c * (2.0 * N + 3.0));
  *tail = first / (1.0 - ratio);
}

}  // namespace

Majorant heat_kernel_majorant(double t, double L, int nu) {
  const double c = t * axis_energy_scale(L);
  return [c, nu](int N) {
    double S = 0.0, T = 0.0;
    theta_parts(c, N, &S, &T);
    return complement_power(S, T, nu) * (1.0 + 1e-13);
  };
}

Majorant bose_majorant(double beta_h, double mu, double L, int nu) {
  const double a = axis_energy_scale(L);
  const double c = beta_h * a;
  return [=](int N) {
    // smallest energy outside the cube
    const double e_min = a * (double(N + 1) * (N + 1) + (nu - 1));
    const double x_min = beta_h * (e_min - mu);
    if (!(x_min > 0)) return std::numeric_limits<double>::infinity();
    double S = 0.0, T = 0.0;
    theta_parts(c, N, &S, &T);
    // 1/(e^x - 1) <= e^{-x}/(1 - e^{-x_min})
    return complement_power(S, T, nu) * std::exp(beta_h * mu) / -std::expm1(-x_min) *
           (1.0 + 1e-13);
  };
}

Majorant resolvent_majorant_1d(double beta, double mu, double L) {
  const double a = axis_energy_scale(L);
  return [=](int N) {
    const double e_next = a * double(N + 1) * (N + 1);
    if (!(e_next > mu)) return std::numeric_limits<double>::infinity();
    const double shrink = mu > 0 ? 1.0 - mu / e_next : 1.0;
    return 1.0 / (beta * a * N * shrink);
  };
}

}  // namespace weylq
