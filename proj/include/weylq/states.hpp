#pragma once

#include <complex>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "weylq/spectrum.hpp"
#include "weylq/testfn.hpp"
#include "weylq/weyl.hpp"

namespace weylq {

enum class StateKind {
  QuantumBoxGibbs,
  QuantumInfVol,
  QuantumCondensate,
  ClassicalBoxGibbs,
  ClassicalInfVol,
  ClassicalCondensate,
};

const char* to_string(StateKind kind);
StateKind state_kind_from_string(const std::string& name);

struct StateSpec {
  StateKind kind = StateKind::ClassicalBoxGibbs;
  double beta = 1.0;
  double h = 0.0;
  double mu = 0.0;
  double rho_bar = 0.0;  // QuantumCondensate
  double alpha = 0.0;    // ClassicalCondensate; +inf is the degenerate sentinel
  std::optional<BoxSpectrum> box;
  int nu = 3;
  double tail_tol = 1e-12;

  bool quantum() const;
  bool box_kind() const;
  bool condensate() const;
};

void validate(const StateSpec& spec);

// Coefficients in the box sine basis.
using ModeCoefficients = std::map<MultiIndex, Complex>;
using StateInput = std::variant<TestFunction, ModeCoefficients>;

struct StateValue {
  Complex value = 1.0;
  double tail_bound = 0.0;
  bool degenerate = false;  // alpha = +inf with nonzero space integral
};

StateValue weyl_expectation(const StateSpec& spec, const StateInput& f);

// Real symmetric form B with omega(W(f)) = exp(-B(f,f)/2).
double state_bilinear(const StateSpec& spec, const StateInput& x, const StateInput& y);

// omega(Phi_0(k) W^0(g)) = i B(g, k) omega(W^0(g)), classical kinds only.
Complex field_weyl_expectation(const StateSpec& spec, const StateInput& k, const StateInput& g);

Complex two_point(const StateSpec& spec, const ModeCoefficients& f, const ModeCoefficients& g);

double quantum_density(const StateSpec& spec);
double critical_density(double beta, double h, int nu);

// Projection onto the box sine basis over [1, cutoff]^nu (0 = automatic).
ModeCoefficients project_modes(const TestFunction& f, double L, int cutoff = 0);

ModeCoefficients operator+(ModeCoefficients a, const ModeCoefficients& b);
ModeCoefficients operator*(Complex c, ModeCoefficients a);
StateInput add_inputs(const StateInput& a, const StateInput& b);
StateInput scale_input(Complex c, const StateInput& a);
double input_norm_sq(const StateSpec& spec, const StateInput& f);
// <f, g> in the one-particle space.
Complex input_inner(const StateSpec& spec, const StateInput& f, const StateInput& g);

// How label coordinates map to one-particle vectors.
struct ModeRealization {
  std::vector<MultiIndex> modes;
};
struct FunctionRealization {
  std::vector<TestFunction> basis;  // must be orthonormal
};
using Realization = std::variant<ModeRealization, FunctionRealization>;

void validate_realization(const StateSpec& spec, const Realization& r, std::size_t dim);
StateInput realize(const Realization& r, const Label& f);

// omega(A) for a Weyl element at the state's own h.
Complex state_expectation(const StateSpec& spec, const Realization& r, const WeylElement& a);

}  // namespace weylq
