#pragma once

#include <functional>
#include <vector>

#include "weylq/states.hpp"

namespace weylq {

struct WeakDerivationSpec {
  enum class Generator { H, HMinusMu };
  Generator generator = Generator::H;
  double mu = 0.0;

  double shift() const { return generator == Generator::HMinusMu ? mu : 0.0; }
};

struct KmsMode {
  enum class Kind { Analytic, FiniteDifference };
  Kind kind = Kind::Analytic;
  double dt = 1e-3;
};

double solve_mu_quantum(double rho_target, const BoxSpectrum& box, double beta, double h);

double mu_net_classical(double alpha, double L, double beta, int nu);

struct CondensatePoint {
  double h;
  double renormalized;
};
std::vector<CondensatePoint> condensate_fraction_limit(const std::function<double(double)>& rho_of_h,
                                                       double beta, int nu,
                                                       const std::vector<double>& h_grid);

struct ScanRow {
  double param;  // h or L
  double value;
  double target;
  double error;
  double extra = 0.0;  // mu_L for thermodynamic scans
};

std::vector<ScanRow> semiclassical_scan(const std::function<StateSpec(double)>& family,
                                        const StateSpec& classical_target, const StateInput& f,
                                        const std::vector<double>& h_grid);

std::vector<ScanRow> thermodynamic_scan(double alpha, double beta, const TestFunction& f,
                                        const std::vector<double>& L_grid);

// k = i (H - shift) f in the representation of f.
StateInput generator_image(const StateSpec& spec, const WeakDerivationSpec& d, const StateInput& f);

double kms_residual(const StateSpec& spec, const WeakDerivationSpec& d, const StateInput& f,
                    const StateInput& g, const KmsMode& mode);

}  // namespace weylq
