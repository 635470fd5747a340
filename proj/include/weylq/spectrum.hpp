#pragma once

#include <functional>
#include <vector>

namespace weylq {

using MultiIndex = std::vector<int>;

// Dirichlet Laplacian (H = -Delta/2) on the cube [-L, L]^nu.
struct BoxSpectrum {
  double L = 1.0;
  int nu = 3;
  int cutoff = 0;  // max component of the multi-index; 0 = choose automatically

  double volume() const;
  double ground_energy() const;
};

double eigenvalue(const MultiIndex& n, double L);
double ground_energy(double L, int nu);

// Per-axis coefficient a with E_n = a * sum n_i^2.
double axis_energy_scale(double L);

// Visits [1, cutoff]^nu shell by shell in max-norm; order is deterministic.
void for_each_mode(int nu, int cutoff, const std::function<void(const MultiIndex&)>& fn);
void for_each_mode_in_shell(int nu, int m, const std::function<void(const MultiIndex&)>& fn);

// Bound on the sum of the weight over all modes outside [1, cutoff]^nu.
using Majorant = std::function<double(int cutoff)>;

struct ModeSum {
  double value = 0.0;
  double tail_bound = 0.0;
};

ModeSum mode_sum(const std::function<double(const MultiIndex&)>& weight, const BoxSpectrum& spec,
                 double tail_tol, const Majorant& majorant);

// Smallest cutoff >= start with majorant(cutoff) <= tail_tol.
int choose_cutoff(const Majorant& majorant, double tail_tol, int start, int max_cutoff);

struct TraceResult {
  double partial = 0.0;
  bool converged = false;
};

TraceResult trace_h_power(double s, const BoxSpectrum& spec);

// Stock majorants.
Majorant heat_kernel_majorant(double t, double L, int nu);      // e^{-t E_n}
Majorant bose_majorant(double beta_h, double mu, double L, int nu);  // 1/(e^{beta_h(E_n-mu)}-1)
Majorant resolvent_majorant_1d(double beta, double mu, double L);  // 1/(beta(E_n-mu)), nu = 1

// (S + T)^nu - S^nu without cancellation.
double complement_power(double S, double T, int nu);

}  // namespace weylq
