#include "weylq/serialization.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "weylq/errors.hpp"

namespace weylq::io {

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    fail(ErrorKind::InvalidArgument, "expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed JSON input: ") + e.what());
  }
}

}  // namespace

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::InvalidArgument, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const Label& f) {
  json a = json::array();
  for (const auto& c : f) a.push_back(complex_to_json(c));
  return a;
}

Label label_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array()) fail(ErrorKind::InvalidArgument, "labels are arrays of [re, im] pairs");
    Label f;
    for (const auto& c : j) f.push_back(complex_from_json(c));
    return f;
  });
}

json to_json(const WeylElement& a) {
  json terms = json::array();
  for (const auto& t : a.terms())
    terms.push_back({{"label", to_json(t.label)}, {"coeff", complex_to_json(t.coeff)}});
  return {{"hbar", a.hbar()}, {"terms", terms}};
}

WeylElement weyl_from_json(const json& j) {
  return guarded([&] {
    const double h = j.at("hbar").get<double>();
    const auto& terms = j.at("terms");
    std::size_t dim = j.contains("dim") ? j["dim"].get<std::size_t>() : 0;
    if (!terms.empty()) dim = terms[0].at("label").size();
    WeylElement a(h, dim);
    for (const auto& t : terms) a.add_term(label_from_json(t.at("label")), complex_from_json(t.at("coeff")));
    return a;
  });
}

json to_json(const TestFunction& f) {
  json terms = json::array();
  for (const auto& t : f.terms) {
    json o = {{"amp", complex_to_json(t.amp)}, {"center", t.center}, {"sigma", t.sigma}, {"wave", t.wave}};
    if (t.power != 0) {
      o["power"] = t.power;
      o["shift"] = t.shift;
    }
    terms.push_back(o);
  }
  return {{"nu", f.nu}, {"terms", terms}};
}

TestFunction testfn_from_json(const json& j) {
  return guarded([&] {
    TestFunction f(j.at("nu").get<int>());
    for (const auto& t : j.at("terms")) {
      GaussianTerm g;
      g.amp = complex_from_json(t.at("amp"));
      g.center = get_or<std::vector<double>>(t, "center", std::vector<double>(f.nu, 0.0));
      g.sigma = t.at("sigma").get<double>();
      g.wave = get_or<std::vector<double>>(t, "wave", std::vector<double>(f.nu, 0.0));
      g.power = get_or<int>(t, "power", 0);
      g.shift = get_or<double>(t, "shift", 0.0);
      f.terms.push_back(std::move(g));
    }
    f.validate();
    return f;
  });
}

json to_json(const ModeCoefficients& c) {
  json modes = json::array();
  for (const auto& [n, v] : c) modes.push_back({{"n", n}, {"coeff", complex_to_json(v)}});
  return {{"modes", modes}};
}

ModeCoefficients modes_from_json(const json& j) {
  return guarded([&] {
    ModeCoefficients c;
    for (const auto& m : j.at("modes")) c[m.at("n").get<MultiIndex>()] += complex_from_json(m.at("coeff"));
    return c;
  });
}

StateInput input_from_json(const json& j) {
  if (j.is_object() && j.contains("modes")) return modes_from_json(j);
  return testfn_from_json(j);
}

json to_json(const StateInput& f) {
  if (std::holds_alternative<TestFunction>(f)) return to_json(std::get<TestFunction>(f));
  return to_json(std::get<ModeCoefficients>(f));
}

json to_json(const StateSpec& s) {
  json j = {{"kind", to_string(s.kind)}, {"beta", s.beta}, {"h", s.h},        {"mu", s.mu},
            {"rho_bar", s.rho_bar},      {"alpha", number(s.alpha)}, {"nu", s.nu}, {"tail_tol", s.tail_tol}};
  if (s.box) j["box"] = {{"L", s.box->L}, {"nu", s.box->nu}, {"cutoff", s.box->cutoff}};
  return j;
}

StateSpec spec_from_json(const json& j) {
  return guarded([&] {
    StateSpec s;
    s.kind = state_kind_from_string(j.at("kind").get<std::string>());
    s.beta = get_or<double>(j, "beta", 1.0);
    s.h = get_or<double>(j, "h", 0.0);
    s.mu = get_or<double>(j, "mu", 0.0);
    s.rho_bar = get_or<double>(j, "rho_bar", 0.0);
    s.alpha = j.contains("alpha") ? number_from(j["alpha"]) : 0.0;
    s.nu = get_or<int>(j, "nu", 3);
    s.tail_tol = get_or<double>(j, "tail_tol", 1e-12);
    if (j.contains("box")) {
      const auto& b = j["box"];
      s.box = BoxSpectrum{b.at("L").get<double>(), get_or<int>(b, "nu", s.nu), get_or<int>(b, "cutoff", 0)};
      if (!j.contains("nu")) s.nu = s.box->nu;
    }
    return s;
  });
}

json to_json(const GaussianMeasureSpec& m) { return {{"eigenvalues", m.eigenvalues}, {"beta", m.beta}}; }

GaussianMeasureSpec measure_from_json(const json& j) {
  return guarded([&] {
    GaussianMeasureSpec m;
    if (j.is_array()) {
      m.eigenvalues = j.get<std::vector<double>>();
    } else {
      m.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
      m.beta = get_or<double>(j, "beta", 1.0);
    }
    return m;
  });
}

json to_json(const CylinderVector& v) { return {{"q", v.q}, {"p", v.p}}; }

CylinderVector cylinder_from_json(const json& j) {
  return guarded([&] {
    return CylinderVector{j.at("q").get<std::vector<double>>(), j.at("p").get<std::vector<double>>()};
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, "malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace weylq::io
