#pragma once

#include <vector>

#include "weylq/states.hpp"
#include "weylq/weyl.hpp"

namespace weylq {

// Q_h(W^0(f)) = e^{-h |f|^2/4} W^h(f)
WeylElement quantize(const WeylElement& a, double h);

struct Preimage {
  WeylElement element;
  double l2_norm;
};
Preimage preimage(const WeylElement& A);

double dirac_residual(const Label& f, const Label& g, double h);
double vonneumann_residual(const Label& f, const Label& g, double h);

struct RieffelPoint {
  double h;
  double lower;
  double upper;
};
std::vector<RieffelPoint> rieffel_profile(const WeylElement& a, const std::vector<double>& h_grid);

struct SurjectivityWitness {
  std::vector<double> target_partial_l2;
  std::vector<double> preimage_partial_l2;      // overflows to inf for large k
  std::vector<double> preimage_partial_log_l2;  // log of the above, always finite
};
SurjectivityWitness nonsurjectivity_witness(const Label& f, int N, double h);

// omega_h(Q_h(a)) for a classical element a.
Complex pullback_expectation(const StateSpec& spec, const Realization& r, const WeylElement& a);

// e^{-h |f|^2/4} omega_h(W^h(f)) for a single one-particle vector.
Complex pullback_generator(const StateSpec& spec, const StateInput& f);

}  // namespace weylq
