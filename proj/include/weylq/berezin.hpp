#pragma once

#include <vector>

#include "weylq/testfn.hpp"
#include "weylq/weyl.hpp"

namespace weylq {

// psi^{q,p}_h(x) = (h pi)^{-l/4} e^{-i q.p/(2h)} e^{i p.x/h} e^{-(q-x)^2/(2h)}
TestFunction coherent_state(const std::vector<double>& q, const std::vector<double>& p, double h);

// e^{i(lambda.X + mu.P)} psi with P = -i h d/dx.
TestFunction apply_weyl_operator(const std::vector<double>& lambda, const std::vector<double>& mu,
                                 const TestFunction& psi, double h);

Complex schrodinger_matrix_element(const std::vector<double>& lambda, const std::vector<double>& mu,
                                   const TestFunction& phi, const TestFunction& psi, double h);

// e^{-h(lambda^2 + mu^2)/4} <phi, e^{i(lambda X + mu P)} psi>
Complex berezin_closed_form(const std::vector<double>& lambda, const std::vector<double>& mu,
                            const TestFunction& phi, const TestFunction& psi, double h);

struct PhaseSpaceGrid {
  int nodes = 80;
  double tolerance = 1e-10;
};

// Phase-space quadrature of int dq dp/(2 pi h)^l a(q,p) <phi, psi^{q,p}><psi^{q,p}, psi>
// for a Weyl symbol a = sum c_j W^0(z_j), W^0(z)(q,p) = e^{i(Re z . q + Im z . p)}.
Complex berezin_symbol_quad(const WeylElement& symbol, const TestFunction& phi,
                            const TestFunction& psi, double h, const PhaseSpaceGrid& grid = {});

Complex berezin_matrix_element_quad(const std::vector<double>& lambda, const std::vector<double>& mu,
                                    const TestFunction& phi, const TestFunction& psi, double h,
                                    const PhaseSpaceGrid& grid = {});

double berezin_positivity_probe(const WeylElement& symbol, const std::vector<TestFunction>& vectors,
                                double h, const PhaseSpaceGrid& grid = {});

}  // namespace weylq
