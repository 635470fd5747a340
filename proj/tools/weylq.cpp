#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "weylq/berezin.hpp"
#include "weylq/equilibrium.hpp"
#include "weylq/errors.hpp"
#include "weylq/gibbsmc.hpp"
#include "weylq/quantize.hpp"
#include "weylq/serialization.hpp"
#include "weylq/spectrum.hpp"
#include "weylq/states.hpp"

using namespace weylq;
using io::json;

namespace {

// A path to a JSON file, or the JSON text itself.
json load_json(const std::string& arg) {
  if (std::filesystem::exists(arg)) return io::read_json_file(arg);
  try {
    return json::parse(arg);
  } catch (const json::exception&) {
    fail(ErrorKind::InvalidArgument, "'" + arg + "' is neither a readable file nor JSON");
  }
}

// "a:b:steps[:log]" or "x,y,z"
std::vector<double> parse_grid(const std::string& s) {
  std::vector<std::string> parts;
  const char sep = s.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
  auto num = [&](const std::string& p) {
    try {
      std::size_t used = 0;
      const double v = std::stod(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
      return v;
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "bad grid entry '" + p + "' in '" + s + "'");
    }
  };
  std::vector<double> out;
  if (sep == ',') {
    for (const auto& p : parts) out.push_back(num(p));
  } else {
    if (parts.size() < 3 || parts.size() > 4) fail(ErrorKind::InvalidArgument, "grid must be a:b:steps[:log]");
    const double a = num(parts[0]), b = num(parts[1]);
    const int n = static_cast<int>(num(parts[2]));
    const bool log = parts.size() == 4 && parts[3] == "log";
    if (parts.size() == 4 && !log && parts[3] != "lin") fail(ErrorKind::InvalidArgument, "grid spacing must be log or lin");
    if (n < 1) fail(ErrorKind::InvalidArgument, "grid needs at least one step");
    if (log && !(a > 0 && b > 0)) fail(ErrorKind::InvalidArgument, "log grids need positive ends");
    for (int i = 0; i < n; ++i) {
      const double t = n == 1 ? 0.0 : double(i) / (n - 1);
      out.push_back(log ? std::exp(std::log(a) + t * (std::log(b) - std::log(a))) : a + t * (b - a));
    }
  }
  if (out.empty()) fail(ErrorKind::InvalidArgument, "empty grid");
  return out;
}

// Echo of every option as resolved after parsing.
json resolved_config(const CLI::App* sub) {
  json cfg = json::object();
  for (const CLI::Option* o : sub->get_options()) {
    const std::string name = o->get_name(false, true);
    if (name.empty() || name == "help" || name == "--help") continue;
    std::string key = o->get_lnames().empty() ? name : o->get_lnames().front();
    if (o->count() > 0) {
      const auto& r = o->results();
      cfg[key] = r.size() == 1 ? json(r.front()) : json(r);
    } else if (!o->get_default_str().empty()) {
      cfg[key] = o->get_default_str();
    } else {
      cfg[key] = nullptr;
    }
  }
  return cfg;
}

class Csv {
 public:
  explicit Csv(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    }
    os().precision(17);
    os() << "# schema=1\n";
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const json& j) { std::cout << j.dump() << "\n"; }

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylq: Weyl algebra quantization and free Bose gas equilibrium states"};
  // -h would clash with --h
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string spec_path, testfn_path, out_path, f_arg, g_arg, mode = "analytic", generator = "auto";
  std::string h_grid = "1e-4:1e-1:20:log", L_grid = "5,10,20,40", kind, modes_path, phi_arg, psi_arg;
  double beta = 1.0, h = 1.0, rho = 0.0, L = 1.0, dt = 1e-3, alpha = 0.0, s_exp = 2.0;
  double tail_tol = 1e-12, tol = 1e-10;
  int nu = 3, cutoff = 60, N = 50, l = 1, nodes = 80;
  std::size_t count = 100000;
  std::uint64_t seed = 1;
  std::vector<double> lambda{1.0}, mu{0.0};

  auto* cs = app.add_subcommand("compute-state", "Evaluate omega(W(f)); prints {\"value\",\"tail_bound\"}");
  cs->add_option("--spec", spec_path, "StateSpec JSON")->required();
  cs->add_option("--testfn", testfn_path, "test function or mode coefficients JSON")->required();
  cs->add_option("--tail-tol", tail_tol, "tail tolerance for mode sums")->capture_default_str();

  auto* sm = app.add_subcommand("solve-mu", "Chemical potential for a target box density; prints {\"mu\",\"density\"}");
  sm->add_option("--rho", rho, "target density")->required();
  sm->add_option("--L", L, "box half-side")->capture_default_str();
  sm->add_option("--nu", nu, "dimension")->capture_default_str();
  sm->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  sm->add_option("--h", h, "deformation parameter")->capture_default_str();

  auto* sdq = app.add_subcommand("check-sdq",
                                 "Dirac and von Neumann residuals over an h grid; CSV columns h,dirac,vonneumann");
  sdq->add_option("--f", f_arg, "label JSON, e.g. [[1,0]]")->required();
  sdq->add_option("--g", g_arg, "label JSON")->required();
  sdq->add_option("--h-grid", h_grid, "a:b:steps[:log] or comma list")->capture_default_str();
  sdq->add_option("--out", out_path, "CSV path (default stdout)");

  auto* kms = app.add_subcommand("check-kms", "Weak KMS residual; prints {\"residual\"}");
  kms->add_option("--spec", spec_path, "classical StateSpec JSON")->required();
  kms->add_option("--f", f_arg, "input JSON")->required();
  kms->add_option("--g", g_arg, "input JSON")->required();
  kms->add_option("--mode", mode, "analytic or fd")->check(CLI::IsMember({"analytic", "fd", "finite_difference"}))->capture_default_str();
  kms->add_option("--dt", dt, "finite-difference step")->capture_default_str();
  kms->add_option("--generator", generator, "H, HMinusMu or auto (shift by the spec's mu)")
      ->check(CLI::IsMember({"auto", "H", "HMinusMu"}))
      ->capture_default_str();

  auto* scan = app.add_subcommand(
      "limit-scan",
      "Limit tables. semiclassical: CSV h,value,target,error (family from the classical --spec). "
      "thermodynamic: CSV L,value,target,error,mu_L");
  scan->add_option("--kind", kind, "semiclassical or thermodynamic")
      ->required()
      ->check(CLI::IsMember({"semiclassical", "thermodynamic"}));
  scan->add_option("--spec", spec_path, "classical target StateSpec JSON (semiclassical)");
  scan->add_option("--testfn", testfn_path, "input JSON")->required();
  scan->add_option("--h-grid", h_grid, "h grid")->capture_default_str();
  scan->add_option("--L-grid", L_grid, "L grid")->capture_default_str();
  scan->add_option("--alpha", alpha, "renormalized condensate density (thermodynamic)")->capture_default_str();
  scan->add_option("--beta", beta, "inverse temperature (thermodynamic)")->capture_default_str();
  scan->add_option("--out", out_path, "CSV path (default stdout)");

  auto* gibbs = app.add_subcommand("sample-gibbs",
                                   "Gaussian Gibbs samples as CSV q1..qn,p1..pn, or with --f a summary "
                                   "{\"estimate\",\"stderr\",\"closed_form\"}");
  gibbs->add_option("--modes", modes_path, "eigenvalue list JSON")->required();
  gibbs->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  gibbs->add_option("--count", count, "number of samples")->capture_default_str();
  gibbs->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gibbs->add_option("--f", f_arg, "cylinder vector JSON {\"q\":[..],\"p\":[..]}");
  gibbs->add_option("--out", out_path, "CSV path (default stdout)");

  auto* bz = app.add_subcommand("berezin-verify",
                                "Phase-space quadrature vs closed form; prints {\"quad\",\"closed_form\",\"rel_err\"}");
  bz->add_option("--l", l, "configuration dimension (1 or 2)")->capture_default_str();
  bz->add_option("--lambda", lambda, "position frequencies")->capture_default_str();
  bz->add_option("--mu", mu, "momentum frequencies")->capture_default_str();
  bz->add_option("--h", h, "deformation parameter")->capture_default_str();
  bz->add_option("--phi", phi_arg, "wavefunction JSON (default coherent state at the origin)");
  bz->add_option("--psi", psi_arg, "wavefunction JSON (default coherent state at the origin)");
  bz->add_option("--nodes", nodes, "Gauss-Hermite nodes per axis")->capture_default_str();
  bz->add_option("--tol", tol, "node-doubling tolerance")->capture_default_str();

  auto* cd = app.add_subcommand("critical-density", "Critical density; prints {\"rho_c\"}");
  cd->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  cd->add_option("--h", h, "deformation parameter")->capture_default_str();
  cd->add_option("--nu", nu, "dimension")->capture_default_str();

  auto* tr = app.add_subcommand("trace-check",
                                "Partial sums of E_n^{-s}; prints {\"partial\",\"partial_doubled\",\"relative_change\",\"converged\"}");
  tr->add_option("--s", s_exp, "exponent")->capture_default_str();
  tr->add_option("--nu", nu, "dimension")->capture_default_str();
  tr->add_option("--L", L, "box half-side")->capture_default_str();
  tr->add_option("--cutoff", cutoff, "cutoff")->capture_default_str();

  auto* wit = app.add_subcommand("witness", "Non-surjectivity witness; CSV k,target,preimage,log_preimage");
  wit->add_option("--f", f_arg, "label JSON")->required();
  wit->add_option("--N", N, "number of terms")->capture_default_str();
  wit->add_option("--h", h, "deformation parameter")->capture_default_str();
  wit->add_option("--out", out_path, "CSV path (default stdout)");

  if (argc <= 1) {
    std::cerr << app.help();
    return 2;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    emit({{"command", sub->get_name()}, {"config", resolved_config(sub)}});

    if (sub == cs) {
      StateSpec spec = io::spec_from_json(load_json(spec_path));
      if (cs->count("--tail-tol")) spec.tail_tol = tail_tol;
      const StateInput f = io::input_from_json(load_json(testfn_path));
      const StateValue v = weyl_expectation(spec, f);
      json out{{"value", io::complex_to_json(v.value)}, {"tail_bound", v.tail_bound}};
      if (v.degenerate) out["degenerate"] = true;
      emit(out);
    } else if (sub == sm) {
      const BoxSpectrum box{L, nu, 0};
      const double m = solve_mu_quantum(rho, box, beta, h);
      StateSpec s;
      s.kind = StateKind::QuantumBoxGibbs;
      s.beta = beta;
      s.h = h;
      s.mu = m;
      s.nu = nu;
      s.box = box;
      emit({{"mu", m}, {"density", quantum_density(s)}, {"ground_energy", box.ground_energy()}});
    } else if (sub == sdq) {
      const Label f = io::label_from_json(load_json(f_arg)), g = io::label_from_json(load_json(g_arg));
      const auto grid = parse_grid(h_grid);
      Csv csv(out_path);
      csv.os() << "h,dirac,vonneumann\n";
      for (double hh : grid)
        csv.os() << hh << "," << dirac_residual(f, g, hh) << "," << vonneumann_residual(f, g, hh) << "\n";
    } else if (sub == kms) {
      const StateSpec spec = io::spec_from_json(load_json(spec_path));
      const StateInput f = io::input_from_json(load_json(f_arg)), g = io::input_from_json(load_json(g_arg));
      WeakDerivationSpec d;
      if (generator == "HMinusMu" || (generator == "auto" && !spec.condensate() && spec.mu != 0.0)) {
        d.generator = WeakDerivationSpec::Generator::HMinusMu;
        d.mu = spec.mu;
      }
      KmsMode m;
      if (mode != "analytic") m.kind = KmsMode::Kind::FiniteDifference;
      m.dt = dt;
      emit({{"residual", kms_residual(spec, d, f, g, m)}});
    } else if (sub == scan) {
      const auto fj = load_json(testfn_path);
      if (kind == "thermodynamic") {
        const TestFunction f = io::testfn_from_json(fj);
        const auto rows = thermodynamic_scan(alpha, beta, f, parse_grid(L_grid));
        Csv csv(out_path);
        csv.os() << "L,value,target,error,mu_L\n";
        for (const auto& r : rows)
          csv.os() << r.param << "," << r.value << "," << r.target << "," << r.error << "," << r.extra << "\n";
      } else {
        if (spec_path.empty()) fail(ErrorKind::InvalidArgument, "semiclassical scans need --spec");
        const StateSpec target = io::spec_from_json(load_json(spec_path));
        const StateInput f = io::input_from_json(fj);
        auto family = [target](double hh) {
          StateSpec s = target;
          s.h = hh;
          switch (target.kind) {
            case StateKind::ClassicalBoxGibbs: s.kind = StateKind::QuantumBoxGibbs; break;
            case StateKind::ClassicalInfVol: s.kind = StateKind::QuantumInfVol; break;
            case StateKind::ClassicalCondensate:
              s.kind = StateKind::QuantumCondensate;
              s.rho_bar = critical_density(s.beta, hh, s.nu) + target.alpha / hh;
              break;
            default: fail(ErrorKind::InvalidSpec, "semiclassical target must be a classical state");
          }
          return s;
        };
        const auto rows = semiclassical_scan(family, target, f, parse_grid(h_grid));
        Csv csv(out_path);
        csv.os() << "h,value,target,error\n";
        for (const auto& r : rows) csv.os() << r.param << "," << r.value << "," << r.target << "," << r.error << "\n";
      }
    } else if (sub == gibbs) {
      json mj = load_json(modes_path);
      GaussianMeasureSpec m = io::measure_from_json(mj);
      if (gibbs->count("--beta") || !mj.is_object() || !mj.contains("beta")) m.beta = beta;
      const Eigen::MatrixXd x = sample(m, count, seed);
      if (!f_arg.empty()) {
        const CylinderVector f = io::cylinder_from_json(load_json(f_arg));
        const McEstimate e = characteristic_mc(m, f, x);
        emit({{"estimate", io::complex_to_json(e.estimate)},
              {"stderr", e.std_error},
              {"closed_form", characteristic_closed_form(m, f)}});
      } else {
        Csv csv(out_path);
        const int n = m.n();
        for (int k = 0; k < n; ++k) csv.os() << (k ? "," : "") << "q" << k + 1;
        for (int k = 0; k < n; ++k) csv.os() << ",p" << k + 1;
        csv.os() << "\n";
        for (Eigen::Index s = 0; s < x.rows(); ++s) {
          for (Eigen::Index c = 0; c < x.cols(); ++c) csv.os() << (c ? "," : "") << x(s, c);
          csv.os() << "\n";
        }
      }
    } else if (sub == bz) {
      if (l < 1 || l > 2) fail(ErrorKind::InvalidArgument, "--l must be 1 or 2");
      auto widen = [l](std::vector<double> v, const char* what) {
        if (v.size() == 1) v.assign(l, v.front());
        if (static_cast<int>(v.size()) != l) fail(ErrorKind::DimensionMismatch, std::string(what) + " needs l entries");
        return v;
      };
      const auto lam = widen(lambda, "--lambda"), mm = widen(mu, "--mu");
      const std::vector<double> zero(l, 0.0);
      const TestFunction phi = phi_arg.empty() ? coherent_state(zero, zero, h) : io::testfn_from_json(load_json(phi_arg));
      const TestFunction psi = psi_arg.empty() ? coherent_state(zero, zero, h) : io::testfn_from_json(load_json(psi_arg));
      const Complex q = berezin_matrix_element_quad(lam, mm, phi, psi, h, {nodes, tol});
      const Complex c = berezin_closed_form(lam, mm, phi, psi, h);
      emit({{"quad", io::complex_to_json(q)}, {"closed_form", io::complex_to_json(c)}, {"rel_err", rel_err(q, c)}});
    } else if (sub == cd) {
      emit({{"rho_c", critical_density(beta, h, nu)}});
    } else if (sub == tr) {
      const BoxSpectrum a{L, nu, cutoff}, b{L, nu, 2 * cutoff};
      const TraceResult ra = trace_h_power(s_exp, a), rb = trace_h_power(s_exp, b);
      emit({{"partial", ra.partial},
            {"partial_doubled", rb.partial},
            {"relative_change", std::abs(rb.partial - ra.partial) / ra.partial},
            {"converged", ra.converged}});
    } else if (sub == wit) {
      const Label f = io::label_from_json(load_json(f_arg));
      const SurjectivityWitness w = nonsurjectivity_witness(f, N, h);
      Csv csv(out_path);
      csv.os() << "k,target,preimage,log_preimage\n";
      for (std::size_t k = 0; k < w.target_partial_l2.size(); ++k)
        csv.os() << k + 1 << "," << w.target_partial_l2[k] << "," << w.preimage_partial_l2[k] << ","
                 << w.preimage_partial_log_l2[k] << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.numerical() ? 3 : 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
